#pragma once

/**
 * @file scope.hpp
 * @brief Lexical scope tree over a parsed file.
 *
 * Function-level scopes hold parameters, `var` declarations and function
 * declarations (the hoisted set); block scopes hold `let`/`const`/`class`.
 * Every write to a name (assignment, update, re-initialization, for-loop
 * binding) is recorded against the declaration it resolves to, along with
 * whether the write happens inside a nested function relative to the
 * declaring scope. The call extractor uses those events to decide where a
 * require/import binding can still be trusted.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "vulnreach/js/ast.hpp"

namespace vulnreach::js {

enum class DeclKind : std::uint8_t {
    Var,
    Let,
    Const,
    Param,
    Function,
    Class,
    Import,
    CatchParam,
};

struct WriteEvent {
    std::uint32_t pos;   // byte offset of the write
    std::uint32_t line;  // 1-based line of the write
    bool deferred;       // written from inside a nested function
};

struct Decl {
    std::string name;
    DeclKind kind;
    std::uint32_t pos = 0;           // offset of the (first) declaring identifier
    std::vector<WriteEvent> writes;  // sorted by pos; includes initializers
};

struct Scope {
    enum class Type : std::uint8_t { Module, Function, Block, With };

    Type type;
    Scope* parent = nullptr;
    std::vector<std::unique_ptr<Scope>> children;
    std::map<std::string, Decl> decls;

    Scope(Type t, Scope* p) : type(t), parent(p) {}

    bool is_function_like() const { return type == Type::Module || type == Type::Function; }

    /// Nearest declaration of `name` in this scope or an ancestor.
    Decl* resolve(const std::string& name, Scope** found_in = nullptr);
};

struct ScopeInfo {
    std::unique_ptr<Scope> module;
    // Resolving scope for every walked node: the scope a name occurring at
    // that node would be looked up from.
    std::unordered_map<const Node*, Scope*> scope_of;

    Scope* scope_for(const Node& n) const {
        auto it = scope_of.find(&n);
        return it == scope_of.end() ? nullptr : it->second;
    }
};

/// True when a Function-type boundary sits strictly between `from` and the
/// scope holding the declaration (so writes/reads there run deferred).
bool crosses_function_boundary(const Scope* from, const Scope* decl_scope);

/// True when a `with` scope sits on the chain between `from` (inclusive)
/// and `decl_scope`; names there cannot be resolved statically.
bool with_poisoned(const Scope* from, const Scope* decl_scope);

ScopeInfo build_scopes(const Node& program);

}  // namespace vulnreach::js
