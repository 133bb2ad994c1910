#include "vulnreach/js/scope.hpp"

#include <algorithm>

namespace vulnreach::js {

Decl* Scope::resolve(const std::string& name, Scope** found_in) {
    for (Scope* s = this; s; s = s->parent) {
        auto it = s->decls.find(name);
        if (it != s->decls.end()) {
            if (found_in) *found_in = s;
            return &it->second;
        }
    }
    return nullptr;
}

bool crosses_function_boundary(const Scope* from, const Scope* decl_scope) {
    for (const Scope* s = from; s && s != decl_scope; s = s->parent) {
        if (s->type == Scope::Type::Function) return true;
    }
    return false;
}

bool with_poisoned(const Scope* from, const Scope* decl_scope) {
    for (const Scope* s = from; s; s = s->parent) {
        if (s->type == Scope::Type::With) return true;
        if (s == decl_scope) break;
    }
    return false;
}

namespace {

struct PendingWrite {
    Scope* at;
    std::string name;
    std::uint32_t pos;
    std::uint32_t line;
};

class Builder {
public:
    explicit Builder(const Node& program) : program_(program) {}

    ScopeInfo build() {
        ScopeInfo info;
        info.module = std::make_unique<Scope>(Scope::Type::Module, nullptr);
        info_ = &info;
        for (const NodePtr& s : program_.kids) walk_stmt(s.get(), *info.module);
        resolve_writes();
        return info;
    }

private:
    const Node& program_;
    ScopeInfo* info_ = nullptr;
    std::vector<PendingWrite> writes_;

    void note(const Node& n, Scope& scope) { info_->scope_of[&n] = &scope; }

    Scope& make_child(Scope& parent, Scope::Type type) {
        parent.children.push_back(std::make_unique<Scope>(type, &parent));
        return *parent.children.back();
    }

    Scope& function_scope_of(Scope& s) {
        Scope* it = &s;
        while (!it->is_function_like()) it = it->parent;
        return *it;
    }

    void declare(Scope& scope, const std::string& name, DeclKind kind, std::uint32_t pos) {
        auto [it, inserted] = scope.decls.try_emplace(name, Decl{name, kind, pos, {}});
        if (!inserted && pos < it->second.pos) it->second.pos = pos;
    }

    void record_write(Scope& at, const std::string& name, std::uint32_t pos,
                      std::uint32_t line) {
        writes_.push_back({&at, name, pos, line});
    }

    void resolve_writes() {
        for (const PendingWrite& w : writes_) {
            Scope* holder = nullptr;
            Decl* d = w.at->resolve(w.name, &holder);
            if (!d) continue;  // write to a global; nothing tracked
            bool deferred = crosses_function_boundary(w.at, holder);
            d->writes.push_back({w.pos, w.line, deferred});
        }
        sort_writes(*info_->module);
    }

    void sort_writes(Scope& s) {
        for (auto& [name, d] : s.decls)
            std::sort(d.writes.begin(), d.writes.end(),
                      [](const WriteEvent& a, const WriteEvent& b) { return a.pos < b.pos; });
        for (auto& c : s.children) sort_writes(*c);
    }

    // ---- pattern helpers ---------------------------------------------------

    // Registers every name bound by a declaration pattern into `target`.
    // Computed keys and default expressions are ordinary expressions and are
    // walked in `expr_scope`.
    void declare_pattern(const Node* pat, Scope& target, DeclKind kind, bool init_is_write,
                         Scope& expr_scope) {
        if (!pat) return;
        note(*pat, expr_scope);
        switch (pat->kind) {
            case K::Ident:
                declare(target, pat->str, kind, pat->start);
                if (init_is_write) record_write(expr_scope, pat->str, pat->start, pat->line);
                break;
            case K::ObjectPat:
                for (const NodePtr& p : pat->kids) {
                    if (!p) continue;
                    if (p->is(K::Rest)) {
                        declare_pattern(p->kid(0), target, kind, init_is_write, expr_scope);
                    } else if (p->is(K::Prop)) {
                        if (p->flag_a && p->kid(0)) walk_expr(*p->kid(0), expr_scope);
                        declare_pattern(p->kid(1), target, kind, init_is_write, expr_scope);
                    }
                }
                break;
            case K::ArrayPat:
                for (const NodePtr& el : pat->kids)
                    if (el && !el->is(K::Hole))
                        declare_pattern(el.get(), target, kind, init_is_write, expr_scope);
                break;
            case K::AssignPat:
                declare_pattern(pat->kid(0), target, kind, init_is_write, expr_scope);
                if (pat->kid(1)) walk_expr(*pat->kid(1), expr_scope);
                break;
            case K::Rest:
                declare_pattern(pat->kid(0), target, kind, init_is_write, expr_scope);
                break;
            default:
                break;
        }
    }

    // Names written by an assignment / loop head whose target is an
    // expression (covers destructuring assignment).
    void record_target_writes(const Node& target, Scope& scope) {
        note(target, scope);
        switch (target.kind) {
            case K::Ident:
                record_write(scope, target.str, target.start, target.line);
                break;
            case K::Paren:
                if (target.kid(0)) record_target_writes(*target.kid(0), scope);
                break;
            case K::Array:
            case K::ArrayPat:
                for (const NodePtr& el : target.kids) {
                    if (!el || el->is(K::Hole)) continue;
                    if (el->is(K::Spread) || el->is(K::Rest)) {
                        if (el->kid(0)) record_target_writes(*el->kid(0), scope);
                    } else if (el->is(K::AssignPat)) {
                        if (el->kid(0)) record_target_writes(*el->kid(0), scope);
                        if (el->kid(1)) walk_expr(*el->kid(1), scope);
                    } else {
                        record_target_writes(*el, scope);
                    }
                }
                break;
            case K::Object:
            case K::ObjectPat:
                for (const NodePtr& p : target.kids) {
                    if (!p) continue;
                    if (p->is(K::Spread) || p->is(K::Rest)) {
                        if (p->kid(0)) record_target_writes(*p->kid(0), scope);
                    } else if (p->is(K::Prop)) {
                        if (p->flag_a && p->kid(0)) walk_expr(*p->kid(0), scope);
                        const Node* v = p->kid(1);
                        if (!v) continue;
                        if (v->is(K::AssignPat)) {
                            if (v->kid(0)) record_target_writes(*v->kid(0), scope);
                            if (v->kid(1)) walk_expr(*v->kid(1), scope);
                        } else {
                            record_target_writes(*v, scope);
                        }
                    }
                }
                break;
            case K::Assign:
            case K::AssignPat:
                if (target.kid(0)) record_target_writes(*target.kid(0), scope);
                if (target.kid(1)) walk_expr(*target.kid(1), scope);
                break;
            default:
                // member targets and such: not variable writes, but their
                // subexpressions are ordinary reads
                for (const NodePtr& k : target.kids)
                    if (k) walk_expr(*k, scope);
                break;
        }
    }

    // ---- tree walk -----------------------------------------------------------

    void walk_function(const Node& fn, Scope& outer) {
        Scope& fscope = make_child(outer, Scope::Type::Function);
        if (fn.is(K::Func) && !fn.str.empty())
            declare(fscope, fn.str, DeclKind::Function, fn.start);  // self-reference
        const Node* params = fn.kid(0);
        if (params) {
            note(*params, fscope);
            for (const NodePtr& p : params->kids)
                declare_pattern(p.get(), fscope, DeclKind::Param, false, fscope);
        }
        const Node* body = fn.kid(1);
        if (!body) return;
        if (body->is(K::Block)) {
            Scope& bscope = make_child(fscope, Scope::Type::Block);
            note(*body, bscope);
            for (const NodePtr& s : body->kids) walk_stmt(s.get(), bscope);
        } else {
            walk_expr(*body, fscope);  // arrow expression body
        }
    }

    void walk_class(const Node& cls, Scope& outer) {
        Scope& cscope = make_child(outer, Scope::Type::Block);
        if (!cls.str.empty()) declare(cscope, cls.str, DeclKind::Class, cls.start);
        if (cls.kid(0)) walk_expr(*cls.kid(0), cscope);
        const Node* body = cls.kid(1);
        if (!body) return;
        // field initializers and static blocks run deferred: model the class
        // body as a function boundary
        Scope& fscope = make_child(cscope, Scope::Type::Function);
        note(*body, fscope);
        for (const NodePtr& m : body->kids) {
            if (!m) continue;
            note(*m, fscope);
            if (m->is(K::Method)) {
                if (m->flag_a && m->kid(0)) walk_expr(*m->kid(0), fscope);
                if (m->kid(1)) walk_function(*m->kid(1), fscope);
            } else if (m->is(K::Field)) {
                if (m->flag_a && m->kid(0)) walk_expr(*m->kid(0), fscope);
                if (m->kid(1)) walk_expr(*m->kid(1), fscope);
            } else if (m->is(K::StaticBlock)) {
                Scope& sscope = make_child(fscope, Scope::Type::Block);
                for (const NodePtr& s : m->kids) walk_stmt(s.get(), sscope);
            }
        }
    }

    void walk_var_decl(const Node& decl, Scope& scope) {
        DeclKind kind = decl.str == "var"   ? DeclKind::Var
                        : decl.str == "let" ? DeclKind::Let
                                            : DeclKind::Const;
        Scope& target = kind == DeclKind::Var ? function_scope_of(scope) : scope;
        note(decl, scope);
        for (const NodePtr& d : decl.kids) {
            if (!d) continue;
            note(*d, scope);
            const Node* pat = d->kid(0);
            const Node* init = d->kid(1);
            declare_pattern(pat, target, kind, init != nullptr, scope);
            if (init) walk_expr(*init, scope);
        }
    }

    void walk_stmt(const Node* n, Scope& scope) {
        if (!n) return;
        note(*n, scope);
        switch (n->kind) {
            case K::VarDecl:
                walk_var_decl(*n, scope);
                break;
            case K::FuncDecl:
                if (!n->str.empty()) {
                    // visible in the declaring block and hoisted to the
                    // enclosing function scope
                    declare(scope, n->str, DeclKind::Function, n->start);
                    declare(function_scope_of(scope), n->str, DeclKind::Function, n->start);
                }
                walk_function(*n, scope);
                break;
            case K::ClassDecl:
                if (!n->str.empty()) declare(scope, n->str, DeclKind::Class, n->start);
                walk_class(*n, scope);
                break;
            case K::Block: {
                Scope& b = make_child(scope, Scope::Type::Block);
                for (const NodePtr& s : n->kids) walk_stmt(s.get(), b);
                break;
            }
            case K::ExprStmt:
                if (n->kid(0)) walk_expr(*n->kid(0), scope);
                break;
            case K::If:
                walk_expr(*n->kid(0), scope);
                walk_stmt(n->kid(1), scope);
                walk_stmt(n->kid(2), scope);
                break;
            case K::For: {
                Scope& head = make_child(scope, Scope::Type::Block);
                if (n->kid(0)) {
                    if (n->kid(0)->is(K::VarDecl)) walk_var_decl(*n->kid(0), head);
                    else walk_expr(*n->kid(0), head);
                }
                if (n->kid(1)) walk_expr(*n->kid(1), head);
                if (n->kid(2)) walk_expr(*n->kid(2), head);
                walk_stmt(n->kid(3), head);
                break;
            }
            case K::ForIn:
            case K::ForOf: {
                Scope& head = make_child(scope, Scope::Type::Block);
                const Node* left = n->kid(0);
                if (left) {
                    if (left->is(K::VarDecl)) {
                        // the loop writes the binding on every iteration
                        DeclKind kind = left->str == "var"   ? DeclKind::Var
                                        : left->str == "let" ? DeclKind::Let
                                                             : DeclKind::Const;
                        Scope& target = kind == DeclKind::Var ? function_scope_of(head) : head;
                        note(*left, head);
                        for (const NodePtr& d : left->kids)
                            if (d) declare_pattern(d->kid(0), target, kind, true, head);
                    } else {
                        record_target_writes(*left, head);
                    }
                }
                walk_expr(*n->kid(1), head);
                walk_stmt(n->kid(2), head);
                break;
            }
            case K::While:
                walk_expr(*n->kid(0), scope);
                walk_stmt(n->kid(1), scope);
                break;
            case K::DoWhile:
                walk_stmt(n->kid(0), scope);
                walk_expr(*n->kid(1), scope);
                break;
            case K::Switch: {
                walk_expr(*n->kid(0), scope);
                Scope& b = make_child(scope, Scope::Type::Block);
                for (std::size_t i = 1; i < n->kids.size(); ++i) {
                    const Node* c = n->kid(i);
                    if (!c) continue;
                    note(*c, b);
                    if (c->kid(0)) walk_expr(*c->kid(0), b);
                    for (std::size_t j = 1; j < c->kids.size(); ++j) walk_stmt(c->kid(j), b);
                }
                break;
            }
            case K::Return:
            case K::Throw:
                if (n->kid(0)) walk_expr(*n->kid(0), scope);
                break;
            case K::Try: {
                walk_stmt(n->kid(0), scope);
                const Node* ctch = n->kid(1);
                if (ctch) {
                    // param and body share one scope; close enough to the
                    // real catch/block split for shadowing purposes
                    Scope& cs = make_child(scope, Scope::Type::Block);
                    note(*ctch, cs);
                    if (ctch->kid(0))
                        declare_pattern(ctch->kid(0), cs, DeclKind::CatchParam, false, cs);
                    const Node* body = ctch->kid(1);
                    if (body) {
                        note(*body, cs);
                        for (const NodePtr& s : body->kids) walk_stmt(s.get(), cs);
                    }
                }
                walk_stmt(n->kid(2), scope);
                break;
            }
            case K::Labeled:
                walk_stmt(n->kid(0), scope);
                break;
            case K::With: {
                walk_expr(*n->kid(0), scope);
                Scope& w = make_child(scope, Scope::Type::With);
                walk_stmt(n->kid(1), w);
                break;
            }
            case K::ImportDecl:
                for (const NodePtr& spec : n->kids) {
                    if (!spec) continue;
                    note(*spec, scope);
                    declare(function_scope_of(scope), spec->str, DeclKind::Import, spec->start);
                }
                break;
            case K::ExportNamed:
                walk_stmt(n->kid(0), scope);
                break;
            case K::ExportDefault:
                if (n->kid(0)) {
                    if (n->kid(0)->is(K::FuncDecl) || n->kid(0)->is(K::ClassDecl))
                        walk_stmt(n->kid(0), scope);
                    else
                        walk_expr(*n->kid(0), scope);
                }
                break;
            case K::ExportAll:
            case K::Empty:
            case K::Debugger:
            case K::Continue:
            case K::Break:
                break;
            default:
                walk_expr(*n, scope);  // expression in statement position
                break;
        }
    }

    void walk_expr(const Node& n, Scope& scope) {
        note(n, scope);
        switch (n.kind) {
            case K::Func:
            case K::Arrow:
                walk_function(n, scope);
                return;
            case K::Class:
                walk_class(n, scope);
                return;
            case K::Assign:
                if (n.kid(0)) record_target_writes(*n.kid(0), scope);
                if (n.kid(1)) walk_expr(*n.kid(1), scope);
                return;
            case K::Update: {
                const Node* t = n.kid(0);
                while (t && t->is(K::Paren)) t = t->kid(0);
                if (t && t->is(K::Ident)) {
                    note(*t, scope);
                    record_write(scope, t->str, t->start, t->line);
                } else if (t) {
                    walk_expr(*t, scope);
                }
                return;
            }
            default:
                break;
        }
        for (const NodePtr& k : n.kids)
            if (k) walk_expr(*k, scope);
    }
};

}  // namespace

ScopeInfo build_scopes(const Node& program) { return Builder(program).build(); }

}  // namespace vulnreach::js
