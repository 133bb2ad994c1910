#pragma once

/**
 * @file ast.hpp
 * @brief Syntax tree for the JavaScript subset this analyzer understands.
 *
 * Nodes use one compact struct with a kind tag and positional children;
 * per-kind child slots are documented next to each kind. Every node keeps
 * 1-based line/column of its start plus byte offsets into the source so
 * exact snippets can be recovered.
 */

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace vulnreach::js {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::uint32_t line, std::uint32_t col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          line_(line),
          col_(col) {}

    std::uint32_t line() const { return line_; }
    std::uint32_t column() const { return col_; }

private:
    std::uint32_t line_;
    std::uint32_t col_;
};

enum class K : std::uint8_t {
    Program,      // kids: statements

    // Statements. Slots use `null` (empty unique_ptr) for absent parts.
    VarDecl,      // str: "var"|"let"|"const"; kids: Declarator...
    Declarator,   // kids: [pattern, init|null]
    FuncDecl,     // like Func, declared form
    ClassDecl,    // like Class, declared form
    Block,        // kids: statements
    Empty,        //
    ExprStmt,     // kids: [expr]
    If,           // kids: [test, consequent, alternate|null]
    For,          // kids: [init|null, test|null, update|null, body]
    ForIn,        // kids: [left, right, body]
    ForOf,        // kids: [left, right, body]; flag_a: for-await
    While,        // kids: [test, body]
    DoWhile,      // kids: [body, test]
    Switch,       // kids: [discriminant, Case...]
    Case,         // kids: [test|null, statements...]
    Continue,     // str: label or ""
    Break,        // str: label or ""
    Return,       // kids: [arg|null]
    Throw,        // kids: [arg]
    Try,          // kids: [block, Catch|null, finalizer|null]
    Catch,        // kids: [param|null, body]
    Debugger,     //
    Labeled,      // str: label; kids: [statement]
    With,         // kids: [object, body]
    ImportDecl,   // str: source specifier (cooked); kids: ImportSpec... (none = bare import)
    ImportSpec,   // str: local name; flag_a: namespace; flag_b: default; kids: [imported|null]
    ExportNamed,  // str: source or ""; kids: [decl|null, ExportSpec...]
    ExportSpec,   // str: local name; kids: [exported|null]
    ExportDefault,// kids: [declaration or expression]
    ExportAll,    // str: source; kids: [alias|null]

    // Expressions
    Ident,        // str: name
    PrivateName,  // str: name (without '#')
    Num,          // str: raw text
    Str,          // str: cooked value
    Bool,         // str: "true"|"false"
    Null,         //
    Regex,        // str: raw text
    TemplateChunk,// str: cooked text
    Template,     // kids: [TemplateChunk, expr, TemplateChunk, ..., TemplateChunk]
    TaggedTemplate, // kids: [tag, Template]
    Array,        // kids: elements (Hole for elisions)
    Object,       // kids: Prop | Spread...
    Prop,         // str: "init"|"get"|"set"|"method"; kids: [key, value]; flag_a: computed; flag_b: shorthand
    Spread,       // kids: [arg]
    Func,         // str: name or ""; kids: [ParamList, body Block]; flag_a: async; flag_b: generator
    Arrow,        // kids: [ParamList, body]; flag_a: async; flag_b: expression body
    Class,        // str: name or ""; kids: [superclass|null, ClassBody]
    ClassBody,    // kids: Method | Field | StaticBlock...
    Method,       // str: "method"|"get"|"set"; kids: [key, Func]; flag_a: computed; flag_b: static
    Field,        // kids: [key, init|null]; flag_a: computed; flag_b: static
    StaticBlock,  // kids: statements
    Unary,        // str: op; kids: [arg]
    Update,       // str: "++"|"--"; flag_a: prefix; kids: [arg]
    Binary,       // str: op (includes logical ops); kids: [lhs, rhs]
    Assign,       // str: op ("=", "+=", ...); kids: [target, value]
    Cond,         // kids: [test, consequent, alternate]
    Seq,          // kids: expressions
    Call,         // kids: [callee, args...]; flag_b: optional call
    New,          // kids: [callee, args...]
    Member,       // kids: [object, property]; flag_a: computed; flag_b: optional
    Paren,        // kids: [expr]
    This,         //
    Super,        //
    NewTarget,    //
    ImportMeta,   //
    DynImport,    // kids: [specifier expr, ...]
    Yield,        // kids: [arg|null]; flag_a: delegate
    Await,        // kids: [arg]

    // Patterns
    ObjectPat,    // kids: Prop (value is a pattern) | Rest...
    ArrayPat,     // kids: elements (patterns, Hole, Rest)
    AssignPat,    // kids: [target, default expr]
    Rest,         // kids: [target]
    Hole,         //
    ParamList,    // kids: parameter patterns
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
    K kind;
    std::uint32_t line = 1;
    std::uint32_t col = 1;
    std::uint32_t start = 0;  // byte offset
    std::uint32_t end = 0;    // byte offset one past the node
    std::string str;
    bool flag_a = false;
    bool flag_b = false;
    std::vector<NodePtr> kids;

    explicit Node(K k) : kind(k) {}

    bool is(K k) const { return kind == k; }
    Node* kid(std::size_t i) const { return i < kids.size() ? kids[i].get() : nullptr; }
};

/// Parsed file: owns the source text the node offsets refer to.
struct ParsedFile {
    std::string source;
    NodePtr program;

    std::string_view slice(const Node& n) const {
        return std::string_view(source).substr(n.start, n.end - n.start);
    }
};

/// Parse a complete module/script. Throws ParseError on any syntax the
/// grammar does not cover; never returns a partial tree.
ParsedFile parse(std::string source);

}  // namespace vulnreach::js
