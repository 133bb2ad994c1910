#include <cstring>
#include <unordered_set>
#include <utility>

#include "vulnreach/js/ast.hpp"
#include "vulnreach/js/lexer.hpp"

namespace vulnreach::js {

namespace {

// Words that can never be binding names. Contextual words (async, of, as,
// from, get, set, static, yield, await, let in expressions) stay usable.
const std::unordered_set<std::string_view> kReserved = {
    "break",   "case",   "catch",    "class",  "const",    "continue", "debugger",
    "default", "delete", "do",       "else",   "export",   "extends",  "finally",
    "for",     "function", "if",     "import", "in",       "instanceof", "new",
    "return",  "super",  "switch",   "this",   "throw",    "try",      "typeof",
    "var",     "void",   "while",    "with",   "null",     "true",     "false",
};

struct BinaryOpInfo {
    int prec;
    bool right_assoc;
};

// Precedence for the binary/logical operator ladder (higher binds tighter).
BinaryOpInfo binary_op(const Token& t, bool no_in) {
    if (t.kind == Tok::Ident) {
        if (t.text == "instanceof") return {8, false};
        if (t.text == "in") return {no_in ? 0 : 8, false};
        return {0, false};
    }
    if (t.kind != Tok::Punct) return {0, false};
    const std::string& p = t.text;
    if (p == "??") return {1, false};
    if (p == "||") return {2, false};
    if (p == "&&") return {3, false};
    if (p == "|") return {4, false};
    if (p == "^") return {5, false};
    if (p == "&") return {6, false};
    if (p == "==" || p == "!=" || p == "===" || p == "!==") return {7, false};
    if (p == "<" || p == ">" || p == "<=" || p == ">=") return {8, false};
    if (p == "<<" || p == ">>" || p == ">>>") return {9, false};
    if (p == "+" || p == "-") return {10, false};
    if (p == "*" || p == "/" || p == "%") return {11, false};
    if (p == "**") return {12, true};
    return {0, false};
}

bool is_assign_op(const Token& t) {
    if (t.kind != Tok::Punct) return false;
    static const std::unordered_set<std::string_view> ops = {
        "=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", ">>>=",
        "&=", "|=", "^=", "**=", "&&=", "||=", "?\?=",
    };
    return ops.count(t.text) > 0;
}

class Parser {
public:
    explicit Parser(std::string source) : src_(std::move(source)), lex_(src_) {}

    ParsedFile run() {
        NodePtr program = node(K::Program, peek());
        while (peek().kind != Tok::Eof) program->kids.push_back(parse_statement());
        finish(*program);
        ParsedFile out;
        out.source = std::move(src_);
        out.program = std::move(program);
        return out;
    }

private:
    std::string src_;
    Lexer lex_;
    Token cur_;
    bool cur_valid_ = false;
    bool cur_regex_mode_ = false;
    std::uint32_t prev_end_ = 0;
    bool no_in_ = false;

    // ---- token plumbing -------------------------------------------------

    Token& peek(bool regex_ok = true) {
        if (!cur_valid_) {
            cur_ = lex_.next(regex_ok);
            cur_regex_mode_ = regex_ok;
            cur_valid_ = true;
        } else if (cur_regex_mode_ != regex_ok && slash_sensitive(cur_)) {
            lex_.rewind(cur_);
            bool newline = cur_.newline_before;
            cur_ = lex_.next(regex_ok);
            cur_.newline_before = newline;
            cur_regex_mode_ = regex_ok;
        }
        return cur_;
    }
    Token& peek_op() { return peek(false); }

    static bool slash_sensitive(const Token& t) {
        return t.kind == Tok::Regex || (t.kind == Tok::Punct && (t.text == "/" || t.text == "/="));
    }

    Token take() {
        if (!cur_valid_) peek();
        // consume the cached token as lexed; re-peeking here could flip the
        // regex/division mode of a '/' that the caller already inspected
        Token t = std::move(cur_);
        cur_valid_ = false;
        prev_end_ = t.end;
        return t;
    }

    bool at_punct(std::string_view p) { return peek(p != "/" && p != "/=").is_punct(p); }
    bool at_op_punct(std::string_view p) { return peek_op().is_punct(p); }
    bool at_ident(std::string_view w) { return peek().is_ident(w); }

    bool eat_punct(std::string_view p) {
        if (at_punct(p)) {
            take();
            return true;
        }
        return false;
    }
    bool eat_ident(std::string_view w) {
        if (at_ident(w)) {
            take();
            return true;
        }
        return false;
    }
    void expect_punct(std::string_view p) {
        if (!eat_punct(p)) fail(std::string("expected '") + std::string(p) + "'");
    }
    [[noreturn]] void fail(const std::string& msg) {
        const Token& t = peek();
        throw ParseError(msg + (t.kind == Tok::Eof ? " at end of input"
                                                   : " before '" + t.text + "'"),
                         t.line, t.col);
    }

    NodePtr node(K kind, const Token& at) {
        auto n = std::make_unique<Node>(kind);
        n->line = at.line;
        n->col = at.col;
        n->start = at.start;
        n->end = at.end;
        return n;
    }
    NodePtr node_from(K kind, const Node& first) {
        auto n = std::make_unique<Node>(kind);
        n->line = first.line;
        n->col = first.col;
        n->start = first.start;
        n->end = first.end;
        return n;
    }
    void finish(Node& n) { n.end = prev_end_; }

    // Lightweight raw-source lookahead past the current token.
    std::uint32_t after_current() { return peek().end; }
    bool next_raw_is(std::string_view text) {
        std::uint32_t p = lex_.skip_trivia(after_current());
        return lex_.source().compare(p, text.size(), text) == 0;
    }
    bool next_raw_is_word(std::string_view word) {
        std::uint32_t p = lex_.skip_trivia(after_current());
        std::string_view s = lex_.source();
        if (s.compare(p, word.size(), word) != 0) return false;
        std::uint32_t after = p + static_cast<std::uint32_t>(word.size());
        return after >= s.size() ||
               !(is_ident_start_char(s[after]) || (s[after] >= '0' && s[after] <= '9'));
    }
    char next_raw_char() {
        std::uint32_t p = lex_.skip_trivia(after_current());
        return p < lex_.source().size() ? lex_.source()[p] : '\0';
    }

    // Scans from the '(' that is the current token to its matching ')',
    // then reports whether "=>" follows. Strings, comments, templates and
    // (heuristically) regexes are skipped.
    bool paren_ahead_is_arrow() {
        std::string_view s = lex_.source();
        std::uint32_t i = peek().start;
        if (i >= s.size() || s[i] != '(') return false;
        int depth = 0;
        char prev_sig = '\0';
        while (i < s.size()) {
            char c = s[i];
            if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
                while (i < s.size() && s[i] != '\n') i++;
                continue;
            }
            if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
                i += 2;
                while (i + 1 < s.size() && !(s[i] == '*' && s[i + 1] == '/')) i++;
                i += 2;
                continue;
            }
            if (c == '"' || c == '\'' || c == '`') {
                char q = c;
                i++;
                while (i < s.size() && s[i] != q) {
                    if (s[i] == '\\') i++;
                    i++;
                }
                i++;
                prev_sig = q;
                continue;
            }
            if (c == '/') {
                bool regex = !(std::isalnum(static_cast<unsigned char>(prev_sig)) ||
                               prev_sig == ')' || prev_sig == ']' || prev_sig == '_' ||
                               prev_sig == '$');
                if (regex) {
                    i++;
                    bool in_class = false;
                    while (i < s.size() && (in_class || s[i] != '/')) {
                        if (s[i] == '\\') i++;
                        else if (s[i] == '[') in_class = true;
                        else if (s[i] == ']') in_class = false;
                        i++;
                    }
                    i++;
                    prev_sig = '/';
                    continue;
                }
            }
            if (c == '(' || c == '[' || c == '{') depth++;
            if (c == ')' || c == ']' || c == '}') {
                depth--;
                if (depth == 0 && c == ')') {
                    std::uint32_t p = lex_.skip_trivia(i + 1);
                    return s.compare(p, 2, "=>") == 0;
                }
            }
            if (!std::isspace(static_cast<unsigned char>(c))) prev_sig = c;
            i++;
        }
        return false;
    }

    // ---- statements ------------------------------------------------------

    NodePtr parse_statement() {
        Token& t = peek();
        if (t.kind == Tok::Punct) {
            if (t.text == "{") return parse_block();
            if (t.text == ";") {
                NodePtr n = node(K::Empty, t);
                take();
                return n;
            }
        }
        if (t.kind == Tok::Ident) {
            const std::string& w = t.text;
            if (w == "var" || w == "const") return parse_var_decl(true);
            if (w == "let") {
                char c = next_raw_char();
                bool decl = is_ident_start_char(c) || c == '[' || c == '{';
                if (decl) return parse_var_decl(true);
            }
            if (w == "function") return parse_function(K::FuncDecl, false, true);
            if (w == "async" && next_raw_is_word("function") && !newline_between()) {
                take();
                return parse_function(K::FuncDecl, true, true);
            }
            if (w == "class") return parse_class(K::ClassDecl);
            if (w == "if") return parse_if();
            if (w == "for") return parse_for();
            if (w == "while") return parse_while();
            if (w == "do") return parse_do_while();
            if (w == "switch") return parse_switch();
            if (w == "return") return parse_return();
            if (w == "throw") return parse_throw();
            if (w == "try") return parse_try();
            if (w == "break" || w == "continue") return parse_break_continue();
            if (w == "debugger") {
                NodePtr n = node(K::Debugger, t);
                take();
                semicolon();
                finish(*n);
                return n;
            }
            if (w == "with") return parse_with();
            if (w == "import" && next_raw_char() != '(' && next_raw_char() != '.')
                return parse_import();
            if (w == "export") return parse_export();
        }
        return parse_expression_statement();
    }

    static bool is_ident_start_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
               static_cast<unsigned char>(c) >= 0x80;
    }
    bool newline_between() {
        // whether trivia between current token and the next contains a newline
        std::string_view s = lex_.source();
        for (std::uint32_t i = after_current(); i < s.size(); ++i) {
            char c = s[i];
            if (c == '\n' || c == '\r') return true;
            if (!std::isspace(static_cast<unsigned char>(c))) return false;
        }
        return false;
    }

    void semicolon() {
        Token& t = peek_op();
        if (t.is_punct(";")) {
            take();
            return;
        }
        if (t.kind == Tok::Eof || t.is_punct("}") || t.newline_before) return;  // ASI
        fail("expected ';'");
    }

    NodePtr parse_block() {
        NodePtr n = node(K::Block, peek());
        expect_punct("{");
        while (!at_punct("}")) {
            if (peek().kind == Tok::Eof) fail("unterminated block");
            n->kids.push_back(parse_statement());
        }
        take();
        finish(*n);
        return n;
    }

    NodePtr parse_var_decl(bool with_semicolon) {
        NodePtr n = node(K::VarDecl, peek());
        n->str = take().text;
        while (true) {
            n->kids.push_back(parse_declarator());
            if (!eat_punct(",")) break;
        }
        if (with_semicolon) semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_declarator() {
        NodePtr d = node(K::Declarator, peek());
        d->kids.push_back(parse_binding_pattern());
        if (at_op_punct("=")) {
            take();
            d->kids.push_back(parse_assign_expr());
        } else {
            d->kids.push_back(nullptr);
        }
        finish(*d);
        return d;
    }

    NodePtr parse_binding_pattern() {
        Token& t = peek();
        if (t.is_punct("{")) return parse_object_pattern();
        if (t.is_punct("[")) return parse_array_pattern();
        return parse_binding_ident();
    }

    NodePtr parse_binding_ident() {
        Token& t = peek();
        if (t.kind != Tok::Ident || kReserved.count(t.text) || t.text[0] == '#')
            fail("expected binding identifier");
        NodePtr n = node(K::Ident, t);
        n->str = take().text;
        return n;
    }

    NodePtr parse_object_pattern() {
        NodePtr n = node(K::ObjectPat, peek());
        expect_punct("{");
        while (!at_punct("}")) {
            if (eat_punct("...")) {
                NodePtr rest = node_from(K::Rest, *n);
                rest->kids.push_back(parse_binding_pattern());
                finish(*rest);
                n->kids.push_back(std::move(rest));
            } else {
                NodePtr prop = node(K::Prop, peek());
                prop->str = "init";
                if (at_punct("[")) {
                    prop->flag_a = true;
                    take();
                    prop->kids.push_back(parse_assign_expr());
                    expect_punct("]");
                } else {
                    Token key = take();
                    if (key.kind != Tok::Ident && key.kind != Tok::Str && key.kind != Tok::Num)
                        throw ParseError("expected property name", key.line, key.col);
                    NodePtr k = node(key.kind == Tok::Str ? K::Str
                                     : key.kind == Tok::Num ? K::Num
                                                            : K::Ident,
                                     key);
                    k->str = key.text;
                    prop->kids.push_back(std::move(k));
                }
                if (eat_punct(":")) {
                    prop->kids.push_back(parse_binding_element());
                } else {
                    // shorthand; key must be a plain identifier
                    Node* key = prop->kid(0);
                    if (prop->flag_a || !key->is(K::Ident)) fail("expected ':' in pattern");
                    prop->flag_b = true;
                    if (at_op_punct("=")) {
                        take();
                        NodePtr ap = node_from(K::AssignPat, *key);
                        NodePtr id = node_from(K::Ident, *key);
                        id->str = key->str;
                        ap->kids.push_back(std::move(id));
                        ap->kids.push_back(parse_assign_expr());
                        finish(*ap);
                        prop->kids.push_back(std::move(ap));
                    } else {
                        NodePtr id = node_from(K::Ident, *key);
                        id->str = key->str;
                        prop->kids.push_back(std::move(id));
                    }
                }
                finish(*prop);
                n->kids.push_back(std::move(prop));
            }
            if (!eat_punct(",")) break;
        }
        expect_punct("}");
        finish(*n);
        return n;
    }

    NodePtr parse_array_pattern() {
        NodePtr n = node(K::ArrayPat, peek());
        expect_punct("[");
        while (!at_punct("]")) {
            if (at_punct(",")) {
                n->kids.push_back(node(K::Hole, peek()));
                take();
                continue;
            }
            if (eat_punct("...")) {
                NodePtr rest = node_from(K::Rest, *n);
                rest->kids.push_back(parse_binding_pattern());
                finish(*rest);
                n->kids.push_back(std::move(rest));
            } else {
                n->kids.push_back(parse_binding_element());
            }
            if (!at_punct("]")) expect_punct(",");
        }
        take();
        finish(*n);
        return n;
    }

    NodePtr parse_binding_element() {
        NodePtr pat = parse_binding_pattern();
        if (at_op_punct("=")) {
            take();
            NodePtr ap = node_from(K::AssignPat, *pat);
            NodePtr def = parse_assign_expr();
            ap->kids.push_back(std::move(pat));
            ap->kids.push_back(std::move(def));
            finish(*ap);
            return ap;
        }
        return pat;
    }

    NodePtr parse_function(K kind, bool is_async, bool require_name = false) {
        NodePtr n = node(kind == K::FuncDecl ? K::FuncDecl : K::Func, peek());
        n->flag_a = is_async;
        take();  // 'function'
        if (at_punct("*")) {
            take();
            n->flag_b = true;
        }
        if (peek().kind == Tok::Ident && !kReserved.count(peek().text)) n->str = take().text;
        if (require_name && n->str.empty()) fail("function declaration needs a name");
        n->kids.push_back(parse_params());
        n->kids.push_back(parse_block());
        finish(*n);
        return n;
    }

    NodePtr parse_params() {
        NodePtr list = node(K::ParamList, peek());
        expect_punct("(");
        while (!at_punct(")")) {
            if (eat_punct("...")) {
                NodePtr rest = node_from(K::Rest, *list);
                rest->kids.push_back(parse_binding_pattern());
                finish(*rest);
                list->kids.push_back(std::move(rest));
            } else {
                list->kids.push_back(parse_binding_element());
            }
            if (!at_punct(")")) expect_punct(",");
        }
        take();
        finish(*list);
        return list;
    }

    NodePtr parse_class(K kind) {
        NodePtr n = node(kind, peek());
        take();  // 'class'
        if (peek().kind == Tok::Ident && !kReserved.count(peek().text) &&
            !at_punct("{")) {
            n->str = take().text;
        }
        if (eat_ident("extends")) {
            n->kids.push_back(parse_unary_and_postfix());
        } else {
            n->kids.push_back(nullptr);
        }
        n->kids.push_back(parse_class_body());
        finish(*n);
        return n;
    }

    NodePtr parse_class_body() {
        NodePtr body = node(K::ClassBody, peek());
        expect_punct("{");
        while (!at_punct("}")) {
            if (peek().kind == Tok::Eof) fail("unterminated class body");
            if (eat_punct(";")) continue;
            bool is_static = false;
            if (at_ident("static") && next_raw_char() != '(' && next_raw_char() != '=' &&
                !next_raw_is(";")) {
                take();
                is_static = true;
                if (at_punct("{")) {  // static initialization block
                    NodePtr blk = parse_block();
                    blk->kind = K::StaticBlock;
                    body->kids.push_back(std::move(blk));
                    continue;
                }
            }
            body->kids.push_back(parse_class_member(is_static));
        }
        take();
        finish(*body);
        return body;
    }

    NodePtr parse_class_member(bool is_static) {
        std::string mkind = "method";
        bool is_async = false, is_gen = false;
        if (at_ident("async") && next_raw_char() != '(' && next_raw_char() != '=' &&
            !newline_between()) {
            take();
            is_async = true;
        }
        if (at_punct("*")) {
            take();
            is_gen = true;
        }
        if ((at_ident("get") || at_ident("set")) && next_raw_char() != '(' &&
            next_raw_char() != '=' && next_raw_char() != ';' && next_raw_char() != '}') {
            mkind = take().text;
        }

        NodePtr key;
        bool computed = false;
        Token key_tok = peek();
        if (at_punct("[")) {
            computed = true;
            take();
            key = parse_assign_expr();
            expect_punct("]");
        } else {
            Token t = take();
            if (t.kind != Tok::Ident && t.kind != Tok::Str && t.kind != Tok::Num)
                throw ParseError("expected class member name", t.line, t.col);
            key = node(t.kind == Tok::Str ? K::Str : t.kind == Tok::Num ? K::Num
                       : t.text[0] == '#'                               ? K::PrivateName
                                                                        : K::Ident,
                       t);
            key->str = t.text[0] == '#' ? t.text.substr(1) : t.text;
        }

        if (at_punct("(")) {
            NodePtr m = node(K::Method, key_tok);
            m->str = mkind;
            m->flag_a = computed;
            m->flag_b = is_static;
            NodePtr f = node_from(K::Func, *key);
            f->flag_a = is_async;
            f->flag_b = is_gen;
            f->kids.push_back(parse_params());
            f->kids.push_back(parse_block());
            finish(*f);
            m->kids.push_back(std::move(key));
            m->kids.push_back(std::move(f));
            finish(*m);
            return m;
        }

        NodePtr field = node(K::Field, key_tok);
        field->flag_a = computed;
        field->flag_b = is_static;
        field->kids.push_back(std::move(key));
        if (at_op_punct("=")) {
            take();
            field->kids.push_back(parse_assign_expr());
        } else {
            field->kids.push_back(nullptr);
        }
        semicolon();
        finish(*field);
        return field;
    }

    NodePtr parse_if() {
        NodePtr n = node(K::If, peek());
        take();
        expect_punct("(");
        n->kids.push_back(parse_expression());
        expect_punct(")");
        n->kids.push_back(parse_statement());
        if (eat_ident("else")) n->kids.push_back(parse_statement());
        else n->kids.push_back(nullptr);
        finish(*n);
        return n;
    }

    NodePtr parse_while() {
        NodePtr n = node(K::While, peek());
        take();
        expect_punct("(");
        n->kids.push_back(parse_expression());
        expect_punct(")");
        n->kids.push_back(parse_statement());
        finish(*n);
        return n;
    }

    NodePtr parse_do_while() {
        NodePtr n = node(K::DoWhile, peek());
        take();
        n->kids.push_back(parse_statement());
        if (!eat_ident("while")) fail("expected 'while'");
        expect_punct("(");
        n->kids.push_back(parse_expression());
        expect_punct(")");
        eat_punct(";");  // always optional after do..while
        finish(*n);
        return n;
    }

    NodePtr parse_for() {
        Token for_tok = peek();
        take();
        bool is_await = eat_ident("await");
        expect_punct("(");

        NodePtr init;
        if (at_punct(";")) {
            init = nullptr;
        } else if (at_ident("var") || at_ident("const") ||
                   (at_ident("let") && (is_ident_start_char(next_raw_char()) ||
                                        next_raw_char() == '[' || next_raw_char() == '{'))) {
            NodePtr decl = node(K::VarDecl, peek());
            decl->str = take().text;
            NodePtr d = node(K::Declarator, peek());
            d->kids.push_back(parse_binding_pattern());
            if (at_ident("in") || at_ident("of")) {
                bool is_of = take().text == "of";
                d->kids.push_back(nullptr);
                finish(*d);
                decl->kids.push_back(std::move(d));
                finish(*decl);
                return finish_for_in_of(for_tok, std::move(decl), is_of, is_await);
            }
            if (at_op_punct("=")) {
                take();
                bool saved = std::exchange(no_in_, true);
                d->kids.push_back(parse_assign_expr());
                no_in_ = saved;
            } else {
                d->kids.push_back(nullptr);
            }
            finish(*d);
            decl->kids.push_back(std::move(d));
            while (eat_punct(",")) decl->kids.push_back(parse_declarator());
            finish(*decl);
            init = std::move(decl);
        } else {
            bool saved = std::exchange(no_in_, true);
            init = parse_expression();
            no_in_ = saved;
            if (at_ident("in") || at_ident("of")) {
                bool is_of = take().text == "of";
                return finish_for_in_of(for_tok, std::move(init), is_of, is_await);
            }
        }

        NodePtr n = node(K::For, for_tok);
        expect_punct(";");
        n->kids.push_back(std::move(init));
        n->kids.push_back(at_punct(";") ? nullptr : parse_expression());
        expect_punct(";");
        n->kids.push_back(at_punct(")") ? nullptr : parse_expression());
        expect_punct(")");
        n->kids.push_back(parse_statement());
        finish(*n);
        return n;
    }

    NodePtr finish_for_in_of(const Token& for_tok, NodePtr left, bool is_of, bool is_await) {
        NodePtr n = node(K::ForIn, for_tok);
        if (is_of) {
            n->kind = K::ForOf;
            n->flag_a = is_await;
        }
        n->kids.push_back(std::move(left));
        n->kids.push_back(is_of ? parse_assign_expr() : parse_expression());
        expect_punct(")");
        n->kids.push_back(parse_statement());
        finish(*n);
        return n;
    }

    NodePtr parse_switch() {
        NodePtr n = node(K::Switch, peek());
        take();
        expect_punct("(");
        n->kids.push_back(parse_expression());
        expect_punct(")");
        expect_punct("{");
        while (!at_punct("}")) {
            NodePtr c = node(K::Case, peek());
            if (eat_ident("case")) {
                c->kids.push_back(parse_expression());
            } else if (eat_ident("default")) {
                c->kids.push_back(nullptr);
            } else {
                fail("expected 'case' or 'default'");
            }
            expect_punct(":");
            while (!at_punct("}") && !at_ident("case") && !at_ident("default"))
                c->kids.push_back(parse_statement());
            finish(*c);
            n->kids.push_back(std::move(c));
        }
        take();
        finish(*n);
        return n;
    }

    NodePtr parse_return() {
        NodePtr n = node(K::Return, peek());
        take();
        Token& t = peek_op();
        if (t.is_punct(";") || t.is_punct("}") || t.kind == Tok::Eof || t.newline_before) {
            n->kids.push_back(nullptr);
        } else {
            n->kids.push_back(parse_expression());
        }
        semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_throw() {
        NodePtr n = node(K::Throw, peek());
        take();
        if (peek().newline_before) fail("newline after 'throw'");
        n->kids.push_back(parse_expression());
        semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_try() {
        NodePtr n = node(K::Try, peek());
        take();
        n->kids.push_back(parse_block());
        if (at_ident("catch")) {
            NodePtr c = node(K::Catch, peek());
            take();
            if (eat_punct("(")) {
                c->kids.push_back(parse_binding_pattern());
                expect_punct(")");
            } else {
                c->kids.push_back(nullptr);
            }
            c->kids.push_back(parse_block());
            finish(*c);
            n->kids.push_back(std::move(c));
        } else {
            n->kids.push_back(nullptr);
        }
        if (eat_ident("finally")) n->kids.push_back(parse_block());
        else n->kids.push_back(nullptr);
        if (!n->kid(1) && !n->kid(2)) fail("expected 'catch' or 'finally'");
        finish(*n);
        return n;
    }

    NodePtr parse_break_continue() {
        NodePtr n = node(peek().text == "break" ? K::Break : K::Continue, peek());
        take();
        Token& t = peek_op();
        if (t.kind == Tok::Ident && !t.newline_before && !kReserved.count(t.text))
            n->str = take().text;
        semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_with() {
        NodePtr n = node(K::With, peek());
        take();
        expect_punct("(");
        n->kids.push_back(parse_expression());
        expect_punct(")");
        n->kids.push_back(parse_statement());
        finish(*n);
        return n;
    }

    NodePtr parse_import() {
        NodePtr n = node(K::ImportDecl, peek());
        take();  // 'import'
        if (peek().kind == Tok::Str) {
            n->str = take().text;  // bare import
            semicolon();
            finish(*n);
            return n;
        }
        bool expect_from = false;
        if (peek().kind == Tok::Ident && !at_punct("{") && !at_punct("*")) {
            NodePtr spec = node(K::ImportSpec, peek());
            spec->flag_b = true;  // default
            spec->str = parse_binding_ident()->str;
            spec->kids.push_back(nullptr);
            finish(*spec);
            n->kids.push_back(std::move(spec));
            expect_from = true;
            if (eat_punct(",")) expect_from = false;
        }
        if (!expect_from && at_punct("*")) {
            NodePtr spec = node(K::ImportSpec, peek());
            spec->flag_a = true;  // namespace
            take();
            if (!eat_ident("as")) fail("expected 'as'");
            spec->str = parse_binding_ident()->str;
            spec->kids.push_back(nullptr);
            finish(*spec);
            n->kids.push_back(std::move(spec));
        } else if (!expect_from && at_punct("{")) {
            take();
            while (!at_punct("}")) {
                NodePtr spec = node(K::ImportSpec, peek());
                Token imported = take();
                if (imported.kind != Tok::Ident && imported.kind != Tok::Str)
                    throw ParseError("expected import name", imported.line, imported.col);
                NodePtr imp = node(imported.kind == Tok::Str ? K::Str : K::Ident, imported);
                imp->str = imported.text;
                if (eat_ident("as")) {
                    spec->str = parse_binding_ident()->str;
                } else {
                    if (imported.kind != Tok::Ident || kReserved.count(imported.text))
                        throw ParseError("import name needs an alias", imported.line,
                                         imported.col);
                    spec->str = imported.text;
                }
                spec->kids.push_back(std::move(imp));
                finish(*spec);
                n->kids.push_back(std::move(spec));
                if (!eat_punct(",")) break;
            }
            expect_punct("}");
        } else if (!expect_from) {
            fail("expected import specifiers");
        }
        if (!eat_ident("from")) fail("expected 'from'");
        if (peek().kind != Tok::Str) fail("expected module specifier string");
        n->str = take().text;
        semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_export() {
        NodePtr n = node(K::ExportNamed, peek());
        take();  // 'export'
        if (at_ident("default")) {
            take();
            n->kind = K::ExportDefault;
            if (at_ident("function")) {
                n->kids.push_back(parse_function(K::FuncDecl, false));
            } else if (at_ident("async") && next_raw_is_word("function")) {
                take();
                n->kids.push_back(parse_function(K::FuncDecl, true));
            } else if (at_ident("class")) {
                n->kids.push_back(parse_class(K::ClassDecl));
            } else {
                n->kids.push_back(parse_assign_expr());
                semicolon();
            }
            finish(*n);
            return n;
        }
        if (at_punct("*")) {
            take();
            n->kind = K::ExportAll;
            if (eat_ident("as")) {
                Token alias = take();
                NodePtr a = node(alias.kind == Tok::Str ? K::Str : K::Ident, alias);
                a->str = alias.text;
                n->kids.push_back(std::move(a));
            } else {
                n->kids.push_back(nullptr);
            }
            if (!eat_ident("from")) fail("expected 'from'");
            if (peek().kind != Tok::Str) fail("expected module specifier string");
            n->str = take().text;
            semicolon();
            finish(*n);
            return n;
        }
        if (at_punct("{")) {
            n->kids.push_back(nullptr);  // no declaration
            take();
            while (!at_punct("}")) {
                NodePtr spec = node(K::ExportSpec, peek());
                Token local = take();
                if (local.kind != Tok::Ident && local.kind != Tok::Str)
                    throw ParseError("expected export name", local.line, local.col);
                spec->str = local.text;
                if (eat_ident("as")) {
                    Token exported = take();
                    NodePtr e = node(exported.kind == Tok::Str ? K::Str : K::Ident, exported);
                    e->str = exported.text;
                    spec->kids.push_back(std::move(e));
                } else {
                    spec->kids.push_back(nullptr);
                }
                finish(*spec);
                n->kids.push_back(std::move(spec));
                if (!eat_punct(",")) break;
            }
            expect_punct("}");
            if (eat_ident("from")) {
                if (peek().kind != Tok::Str) fail("expected module specifier string");
                n->str = take().text;
            }
            semicolon();
            finish(*n);
            return n;
        }
        // export <declaration>
        if (at_ident("var") || at_ident("let") || at_ident("const")) {
            n->kids.push_back(parse_var_decl(true));
        } else if (at_ident("function")) {
            n->kids.push_back(parse_function(K::FuncDecl, false, true));
        } else if (at_ident("async") && next_raw_is_word("function")) {
            take();
            n->kids.push_back(parse_function(K::FuncDecl, true, true));
        } else if (at_ident("class")) {
            n->kids.push_back(parse_class(K::ClassDecl));
        } else {
            fail("expected declaration or '{' after 'export'");
        }
        finish(*n);
        return n;
    }

    NodePtr parse_expression_statement() {
        NodePtr expr = parse_expression();
        if (expr->is(K::Ident) && at_op_punct(":")) {
            take();
            NodePtr lab = node_from(K::Labeled, *expr);
            lab->str = expr->str;
            lab->kids.push_back(parse_statement());
            finish(*lab);
            return lab;
        }
        NodePtr n = node_from(K::ExprStmt, *expr);
        n->kids.push_back(std::move(expr));
        semicolon();
        finish(*n);
        return n;
    }

    // ---- expressions -----------------------------------------------------

    NodePtr parse_expression() {
        NodePtr first = parse_assign_expr();
        if (!at_op_punct(",")) return first;
        NodePtr seq = node_from(K::Seq, *first);
        seq->kids.push_back(std::move(first));
        while (eat_punct(",")) seq->kids.push_back(parse_assign_expr());
        finish(*seq);
        return seq;
    }

    NodePtr parse_assign_expr() {
        Token& t = peek();

        if (t.kind == Tok::Ident) {
            if (t.text == "yield") {
                char c = next_raw_char();
                bool has_arg = !(c == ')' || c == ']' || c == '}' || c == ';' || c == ',' ||
                                 c == ':' || c == '\0') &&
                               !newline_between();
                Token kw = take();
                NodePtr y = node(K::Yield, kw);
                if (has_arg && at_punct("*")) {
                    take();
                    y->flag_a = true;
                    y->kids.push_back(parse_assign_expr());
                } else if (has_arg && can_start_expression()) {
                    y->kids.push_back(parse_assign_expr());
                } else {
                    y->kids.push_back(nullptr);
                }
                finish(*y);
                return y;
            }
            if (t.text == "async" && !newline_between()) {
                if (next_raw_char() == '(') {
                    Token saved = t;
                    take();  // consume 'async'
                    if (paren_ahead_is_arrow()) return parse_arrow(saved, true);
                    // not an arrow: 'async' was a plain identifier expression
                    NodePtr id = node(K::Ident, saved);
                    id->str = "async";
                    NodePtr lhs = parse_postfix_from(parse_member_call_chain(std::move(id), true));
                    return parse_assign_continue(
                        parse_conditional_from(parse_binary_from(std::move(lhs), 1)));
                }
                if (is_ident_start_char(next_raw_char()) && !next_raw_is_word("function")) {
                    // "async x => ..." ?
                    Token saved = t;
                    std::uint32_t p = lex_.skip_trivia(saved.end);
                    std::string_view s = lex_.source();
                    std::uint32_t q = p;
                    while (q < s.size() && (is_ident_start_char(s[q]) || (s[q] >= '0' && s[q] <= '9')))
                        q++;
                    std::uint32_t r = lex_.skip_trivia(q);
                    if (s.compare(r, 2, "=>") == 0) {
                        take();  // 'async'
                        return parse_arrow_single_param(true);
                    }
                }
            }
        }

        if (t.is_punct("(") && paren_ahead_is_arrow()) return parse_arrow(t, false);
        if (t.kind == Tok::Ident && !kReserved.count(t.text) && t.text != "async" &&
            t.text[0] != '#' && !newline_between() && next_raw_is("=>")) {
            return parse_arrow_single_param(false);
        }

        return parse_assign_continue(parse_conditional());
    }

    NodePtr parse_assign_continue(NodePtr lhs) {
        if (is_assign_op(peek_op())) {
            Token op = take();
            NodePtr a = node_from(K::Assign, *lhs);
            a->str = op.text;
            a->kids.push_back(std::move(lhs));
            a->kids.push_back(parse_assign_expr());
            finish(*a);
            return a;
        }
        return lhs;
    }

    bool can_start_expression() {
        Token& t = peek();
        switch (t.kind) {
            case Tok::Eof:
                return false;
            case Tok::Ident:
                return true;
            case Tok::Num:
            case Tok::Str:
            case Tok::Regex:
            case Tok::TemplateWhole:
            case Tok::TemplateHead:
                return true;
            case Tok::Punct:
                return t.text == "(" || t.text == "[" || t.text == "{" || t.text == "!" ||
                       t.text == "~" || t.text == "+" || t.text == "-" || t.text == "++" ||
                       t.text == "--" || t.text == "...";
            default:
                return false;
        }
    }

    NodePtr parse_arrow(const Token& start, bool is_async) {
        NodePtr arrow = node(K::Arrow, start);
        arrow->flag_a = is_async;
        arrow->kids.push_back(parse_params());
        if (!eat_punct("=>")) fail("expected '=>'");
        if (at_punct("{")) {
            arrow->kids.push_back(parse_block());
        } else {
            arrow->flag_b = true;
            arrow->kids.push_back(parse_assign_expr());
        }
        finish(*arrow);
        return arrow;
    }

    NodePtr parse_arrow_single_param(bool is_async) {
        Token start = peek();
        NodePtr arrow = node(K::Arrow, start);
        arrow->flag_a = is_async;
        NodePtr params = node(K::ParamList, start);
        params->kids.push_back(parse_binding_ident());
        finish(*params);
        arrow->kids.push_back(std::move(params));
        if (!eat_punct("=>")) fail("expected '=>'");
        if (at_punct("{")) {
            arrow->kids.push_back(parse_block());
        } else {
            arrow->flag_b = true;
            arrow->kids.push_back(parse_assign_expr());
        }
        finish(*arrow);
        return arrow;
    }

    NodePtr parse_conditional() { return parse_conditional_from(parse_binary(1)); }

    NodePtr parse_conditional_from(NodePtr test) {
        if (!at_op_punct("?")) return test;
        take();
        NodePtr n = node_from(K::Cond, *test);
        n->kids.push_back(std::move(test));
        {
            bool saved = std::exchange(no_in_, false);
            n->kids.push_back(parse_assign_expr());
            no_in_ = saved;
        }
        expect_punct(":");
        n->kids.push_back(parse_assign_expr());
        finish(*n);
        return n;
    }

    NodePtr parse_binary(int min_prec) {
        return parse_binary_from(parse_unary_and_postfix(), min_prec);
    }

    NodePtr parse_binary_from(NodePtr lhs, int min_prec) {
        while (true) {
            Token& t = peek_op();
            BinaryOpInfo info = binary_op(t, no_in_);
            if (info.prec < min_prec || info.prec == 0) break;
            Token op = take();
            NodePtr rhs = parse_binary(info.right_assoc ? info.prec : info.prec + 1);
            NodePtr bin = node_from(K::Binary, *lhs);
            bin->str = op.text;
            bin->kids.push_back(std::move(lhs));
            bin->kids.push_back(std::move(rhs));
            finish(*bin);
            lhs = std::move(bin);
        }
        return lhs;
    }

    NodePtr parse_unary_and_postfix() {
        Token& t = peek();
        if (t.kind == Tok::Punct &&
            (t.text == "!" || t.text == "~" || t.text == "+" || t.text == "-")) {
            Token op = take();
            NodePtr n = node(K::Unary, op);
            n->str = op.text;
            n->kids.push_back(parse_unary_and_postfix());
            finish(*n);
            return n;
        }
        if (t.kind == Tok::Punct && (t.text == "++" || t.text == "--")) {
            Token op = take();
            NodePtr n = node(K::Update, op);
            n->str = op.text;
            n->flag_a = true;
            n->kids.push_back(parse_unary_and_postfix());
            finish(*n);
            return n;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "typeof" || t.text == "void" || t.text == "delete") {
                Token op = take();
                NodePtr n = node(K::Unary, op);
                n->str = op.text;
                n->kids.push_back(parse_unary_and_postfix());
                finish(*n);
                return n;
            }
            if (t.text == "await") {
                Token kw = t;
                take();
                if (can_start_expression()) {
                    NodePtr n = node(K::Await, kw);
                    n->kids.push_back(parse_unary_and_postfix());
                    finish(*n);
                    return n;
                }
                NodePtr id = node(K::Ident, kw);
                id->str = "await";
                return parse_postfix_from(parse_member_call_chain(std::move(id), true));
            }
        }
        return parse_postfix_from(parse_lhs_expr());
    }

    NodePtr parse_postfix_from(NodePtr expr) {
        Token& t = peek_op();
        if (t.kind == Tok::Punct && (t.text == "++" || t.text == "--") && !t.newline_before) {
            Token op = take();
            NodePtr n = node_from(K::Update, *expr);
            n->str = op.text;
            n->flag_a = false;
            n->kids.push_back(std::move(expr));
            finish(*n);
            return n;
        }
        return expr;
    }

    NodePtr parse_lhs_expr() {
        if (at_ident("new")) return parse_member_call_chain(parse_new_expr(), true);
        return parse_member_call_chain(parse_primary(), true);
    }

    NodePtr parse_new_expr() {
        Token new_tok = peek();
        take();  // 'new'
        if (at_op_punct(".")) {
            take();
            if (!eat_ident("target")) fail("expected 'target'");
            NodePtr n = node(K::NewTarget, new_tok);
            finish(*n);
            return n;
        }
        NodePtr callee;
        if (at_ident("new")) {
            callee = parse_new_expr();
        } else {
            callee = parse_member_call_chain(parse_primary(), false);
        }
        NodePtr n = node(K::New, new_tok);
        n->kids.push_back(std::move(callee));
        if (at_op_punct("(")) parse_arguments(*n);
        finish(*n);
        return n;
    }

    void parse_arguments(Node& call) {
        bool saved = std::exchange(no_in_, false);
        expect_punct("(");
        while (!at_punct(")")) {
            if (eat_punct("...")) {
                NodePtr sp = node_from(K::Spread, call);
                sp->kids.push_back(parse_assign_expr());
                finish(*sp);
                call.kids.push_back(std::move(sp));
            } else {
                call.kids.push_back(parse_assign_expr());
            }
            if (!at_punct(")")) expect_punct(",");
        }
        take();
        no_in_ = saved;
    }

    NodePtr parse_member_call_chain(NodePtr base, bool allow_call) {
        while (true) {
            Token& t = peek_op();
            if (t.is_punct(".")) {
                take();
                Token prop = take();
                if (prop.kind != Tok::Ident)
                    throw ParseError("expected property name", prop.line, prop.col);
                NodePtr m = node_from(K::Member, *base);
                NodePtr p = node(prop.text[0] == '#' ? K::PrivateName : K::Ident, prop);
                p->str = prop.text[0] == '#' ? prop.text.substr(1) : prop.text;
                m->kids.push_back(std::move(base));
                m->kids.push_back(std::move(p));
                finish(*m);
                base = std::move(m);
            } else if (t.is_punct("?.")) {
                take();
                if (at_punct("(")) {
                    if (!allow_call) break;
                    NodePtr c = node_from(K::Call, *base);
                    c->flag_b = true;
                    c->kids.push_back(std::move(base));
                    parse_arguments(*c);
                    finish(*c);
                    base = std::move(c);
                } else if (at_punct("[")) {
                    take();
                    NodePtr m = node_from(K::Member, *base);
                    m->flag_a = true;
                    m->flag_b = true;
                    m->kids.push_back(std::move(base));
                    {
                        bool saved = std::exchange(no_in_, false);
                        m->kids.push_back(parse_expression());
                        no_in_ = saved;
                    }
                    expect_punct("]");
                    finish(*m);
                    base = std::move(m);
                } else {
                    Token prop = take();
                    if (prop.kind != Tok::Ident)
                        throw ParseError("expected property name", prop.line, prop.col);
                    NodePtr m = node_from(K::Member, *base);
                    m->flag_b = true;
                    NodePtr p = node(prop.text[0] == '#' ? K::PrivateName : K::Ident, prop);
                    p->str = prop.text[0] == '#' ? prop.text.substr(1) : prop.text;
                    m->kids.push_back(std::move(base));
                    m->kids.push_back(std::move(p));
                    finish(*m);
                    base = std::move(m);
                }
            } else if (t.is_punct("[")) {
                take();
                NodePtr m = node_from(K::Member, *base);
                m->flag_a = true;
                m->kids.push_back(std::move(base));
                {
                    bool saved = std::exchange(no_in_, false);
                    m->kids.push_back(parse_expression());
                    no_in_ = saved;
                }
                expect_punct("]");
                finish(*m);
                base = std::move(m);
            } else if (t.is_punct("(") && allow_call) {
                NodePtr c = node_from(K::Call, *base);
                c->kids.push_back(std::move(base));
                parse_arguments(*c);
                finish(*c);
                base = std::move(c);
            } else if ((t.kind == Tok::TemplateWhole || t.kind == Tok::TemplateHead) &&
                       allow_call) {
                NodePtr tt = node_from(K::TaggedTemplate, *base);
                tt->kids.push_back(std::move(base));
                tt->kids.push_back(parse_template());
                finish(*tt);
                base = std::move(tt);
            } else {
                break;
            }
        }
        return base;
    }

    NodePtr parse_template() {
        Token head = take();
        NodePtr tpl = node(K::Template, head);
        NodePtr chunk = node(K::TemplateChunk, head);
        chunk->str = head.text;
        tpl->kids.push_back(std::move(chunk));
        if (head.kind == Tok::TemplateWhole) {
            finish(*tpl);
            return tpl;
        }
        bool saved = std::exchange(no_in_, false);
        while (true) {
            tpl->kids.push_back(parse_expression());
            if (!peek_op().is_punct("}")) fail("expected '}' in template literal");
            Token part = lex_.template_continue(cur_);
            cur_valid_ = false;
            prev_end_ = part.end;
            NodePtr c = node(K::TemplateChunk, part);
            c->str = part.text;
            tpl->kids.push_back(std::move(c));
            if (part.kind == Tok::TemplateTail) break;
        }
        no_in_ = saved;
        finish(*tpl);
        return tpl;
    }

    NodePtr parse_primary() {
        Token& t = peek();
        switch (t.kind) {
            case Tok::Num: {
                NodePtr n = node(K::Num, t);
                n->str = take().text;
                return n;
            }
            case Tok::Str: {
                NodePtr n = node(K::Str, t);
                n->str = take().text;
                return n;
            }
            case Tok::Regex: {
                NodePtr n = node(K::Regex, t);
                n->str = take().text;
                return n;
            }
            case Tok::TemplateWhole:
            case Tok::TemplateHead:
                return parse_template();
            case Tok::Punct:
                if (t.text == "(") {
                    NodePtr n = node(K::Paren, t);
                    take();
                    bool saved = std::exchange(no_in_, false);
                    n->kids.push_back(parse_expression());
                    no_in_ = saved;
                    expect_punct(")");
                    finish(*n);
                    return n;
                }
                if (t.text == "[") return parse_array_literal();
                if (t.text == "{") return parse_object_literal();
                fail("unexpected token");
            case Tok::Ident:
                return parse_primary_word();
            default:
                fail("unexpected token");
        }
    }

    NodePtr parse_primary_word() {
        Token t = peek();
        const std::string& w = t.text;
        if (w == "this") {
            take();
            return node(K::This, t);
        }
        if (w == "super") {
            take();
            return node(K::Super, t);
        }
        if (w == "true" || w == "false") {
            take();
            NodePtr n = node(K::Bool, t);
            n->str = w;
            return n;
        }
        if (w == "null") {
            take();
            return node(K::Null, t);
        }
        if (w == "function") return parse_function(K::Func, false);
        if (w == "async" && next_raw_is_word("function") && !newline_between()) {
            take();
            return parse_function(K::Func, true);
        }
        if (w == "class") return parse_class(K::Class);
        if (w == "import") {
            take();
            if (at_op_punct(".")) {
                take();
                if (!eat_ident("meta")) fail("expected 'meta'");
                NodePtr n = node(K::ImportMeta, t);
                finish(*n);
                return n;
            }
            NodePtr n = node(K::DynImport, t);
            parse_arguments(*n);
            finish(*n);
            return n;
        }
        if (kReserved.count(w)) fail("unexpected keyword '" + w + "'");
        take();
        NodePtr n = node(K::Ident, t);
        n->str = w;
        return n;
    }

    NodePtr parse_array_literal() {
        NodePtr n = node(K::Array, peek());
        bool saved = std::exchange(no_in_, false);
        expect_punct("[");
        while (!at_punct("]")) {
            if (at_punct(",")) {
                n->kids.push_back(node(K::Hole, peek()));
                take();
                continue;
            }
            if (eat_punct("...")) {
                NodePtr sp = node_from(K::Spread, *n);
                sp->kids.push_back(parse_assign_expr());
                finish(*sp);
                n->kids.push_back(std::move(sp));
            } else {
                n->kids.push_back(parse_assign_expr());
            }
            if (!at_punct("]")) expect_punct(",");
        }
        take();
        no_in_ = saved;
        finish(*n);
        return n;
    }

    NodePtr parse_object_literal() {
        NodePtr n = node(K::Object, peek());
        bool saved = std::exchange(no_in_, false);
        expect_punct("{");
        while (!at_punct("}")) {
            if (eat_punct("...")) {
                NodePtr sp = node_from(K::Spread, *n);
                sp->kids.push_back(parse_assign_expr());
                finish(*sp);
                n->kids.push_back(std::move(sp));
                if (!eat_punct(",")) break;
                continue;
            }
            n->kids.push_back(parse_object_property());
            if (!eat_punct(",")) break;
        }
        expect_punct("}");
        no_in_ = saved;
        finish(*n);
        return n;
    }

    NodePtr parse_object_property() {
        NodePtr prop = node(K::Prop, peek());
        prop->str = "init";
        bool is_async = false, is_gen = false;

        if (at_ident("async") && !next_raw_is(":") && !next_raw_is("(") && !next_raw_is(",") &&
            !next_raw_is("}") && !next_raw_is("=") && !newline_between()) {
            take();
            is_async = true;
        }
        if (at_punct("*")) {
            take();
            is_gen = true;
        }
        if ((at_ident("get") || at_ident("set")) && !next_raw_is(":") && !next_raw_is("(") &&
            !next_raw_is(",") && !next_raw_is("}") && !next_raw_is("=")) {
            prop->str = take().text;
        }

        NodePtr key;
        if (at_punct("[")) {
            prop->flag_a = true;
            take();
            key = parse_assign_expr();
            expect_punct("]");
        } else {
            Token kt = take();
            if (kt.kind != Tok::Ident && kt.kind != Tok::Str && kt.kind != Tok::Num)
                throw ParseError("expected property name", kt.line, kt.col);
            key = node(kt.kind == Tok::Str ? K::Str : kt.kind == Tok::Num ? K::Num : K::Ident,
                       kt);
            key->str = kt.text;
        }

        if (at_punct("(")) {
            if (prop->str == "init") prop->str = "method";
            NodePtr f = node_from(K::Func, *key);
            f->flag_a = is_async;
            f->flag_b = is_gen;
            f->kids.push_back(parse_params());
            f->kids.push_back(parse_block());
            finish(*f);
            prop->kids.push_back(std::move(key));
            prop->kids.push_back(std::move(f));
            finish(*prop);
            return prop;
        }
        if (is_async || is_gen || prop->str == "get" || prop->str == "set")
            fail("expected method body");

        if (eat_punct(":")) {
            prop->kids.push_back(std::move(key));
            prop->kids.push_back(parse_assign_expr());
            finish(*prop);
            return prop;
        }
        // shorthand (with optional default, a cover for destructuring targets)
        if (!key->is(K::Ident) || kReserved.count(key->str)) fail("expected ':'");
        prop->flag_b = true;
        NodePtr value = node_from(K::Ident, *key);
        value->str = key->str;
        if (at_op_punct("=")) {
            take();
            NodePtr ap = node_from(K::AssignPat, *value);
            ap->kids.push_back(std::move(value));
            ap->kids.push_back(parse_assign_expr());
            finish(*ap);
            value = std::move(ap);
        }
        prop->kids.push_back(std::move(key));
        prop->kids.push_back(std::move(value));
        finish(*prop);
        return prop;
    }
};

}  // namespace

ParsedFile parse(std::string source) { return Parser(std::move(source)).run(); }

}  // namespace vulnreach::js
