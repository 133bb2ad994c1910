#include "vulnreach/extract.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "vulnreach/js/lexer.hpp"
#include "vulnreach/js/scope.hpp"

namespace vulnreach {

namespace js = vulnreach::js;

std::string_view binding_kind_name(BindingKind k) {
    switch (k) {
        case BindingKind::CjsRequire: return "cjs-require";
        case BindingKind::EsmDefault: return "esm-default";
        case BindingKind::EsmNamed: return "esm-named";
        case BindingKind::EsmNamespace: return "esm-namespace";
        case BindingKind::Alias: return "alias";
        case BindingKind::EsmSideEffect: return "esm-side-effect";
    }
    return "?";
}

namespace {

constexpr std::uint32_t kNoLimit = 0xFFFFFFFFu;

ExportPath path_concat(const ExportPath& base, const std::vector<std::string>& segs) {
    ExportPath out = base;
    out.segments.insert(out.segments.end(), segs.begin(), segs.end());
    return out;
}

// Splits a module specifier into (package, subpath segments). Scoped
// packages keep their "@scope/name" prefix together.
struct SpecifierSplit {
    std::string package;
    std::vector<std::string> subpath;
};

std::optional<SpecifierSplit> split_specifier(std::string_view spec) {
    if (spec.empty() || spec[0] == '.' || spec[0] == '/') return std::nullopt;  // relative
    std::size_t cut;
    if (spec[0] == '@') {
        std::size_t first = spec.find('/');
        if (first == std::string_view::npos) return std::nullopt;  // bare scope
        cut = spec.find('/', first + 1);
    } else {
        cut = spec.find('/');
    }
    SpecifierSplit out;
    out.package = lowercase_package(spec.substr(0, cut));
    if (cut != std::string_view::npos) {
        std::string_view rest = spec.substr(cut + 1);
        std::size_t start = 0;
        while (start <= rest.size() && !rest.empty()) {
            std::size_t slash = rest.find('/', start);
            std::string_view seg = rest.substr(
                start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
            if (!seg.empty()) out.subpath.emplace_back(seg);
            if (slash == std::string_view::npos) break;
            start = slash + 1;
        }
    }
    return out;
}

// Result of peeling a member chain down to its root expression.
struct Peeled {
    const js::Node* base = nullptr;
    std::vector<std::string> segs;
    bool non_static = false;          // hit a computed key that is not a literal
    std::uint32_t non_static_line = 0;
};

const js::Node* unwrap_paren(const js::Node* e) {
    while (e && e->is(js::K::Paren)) e = e->kid(0);
    return e;
}

bool template_single_chunk(const js::Node& n, std::string& out) {
    if (!n.is(js::K::Template)) return false;
    if (n.kids.size() != 1 || !n.kid(0) || !n.kid(0)->is(js::K::TemplateChunk)) return false;
    out = n.kid(0)->str;
    return true;
}

bool pure_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
}

// Peels member accesses down to the chain's root. When a computed key is
// not a static literal the chain is marked non-static but peeling continues,
// so the caller can still see whether the root is a tracked binding.
Peeled peel_chain(const js::Node* e) {
    Peeled out;
    e = unwrap_paren(e);
    std::vector<std::string> rev;
    while (e && e->is(js::K::Member)) {
        const js::Node* prop = e->kid(1);
        std::string chunk;
        if (!prop) {
            out.non_static = true;
        } else if (!e->flag_a) {  // .name
            if (prop->is(js::K::Ident)) {
                rev.push_back(prop->str);
            } else if (!out.non_static) {  // private names cannot be package exports
                out.non_static = true;
                out.non_static_line = prop->line;
            }
        } else {  // [expr]
            if (prop->is(js::K::Str)) {
                rev.push_back(prop->str);
            } else if (prop->is(js::K::Num) && pure_digits(prop->str)) {
                rev.push_back(prop->str);
            } else if (template_single_chunk(*prop, chunk)) {
                rev.push_back(chunk);
            } else if (!out.non_static) {
                out.non_static = true;
                out.non_static_line = prop->line;
            }
        }
        e = unwrap_paren(e->kid(0));
    }
    out.base = e;
    out.segs.assign(rev.rbegin(), rev.rend());
    return out;
}

class Extractor {
public:
    Extractor(const js::ParsedFile& file, std::string package,
              const std::vector<ExportPath>* symbols)
        : file_(file), package_(std::move(package)), symbols_(symbols) {}

    FileAnalysis run() {
        scopes_ = js::build_scopes(*file_.program);
        collect_bindings(*file_.program);
        walk_expression_imports(*file_.program);
        if (symbols_) collect_calls(*file_.program);
        std::stable_sort(warn_recs_.begin(), warn_recs_.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        FileAnalysis out;
        out.bindings = std::move(bindings_);
        out.calls = std::move(calls_);
        for (auto& [line, text] : warn_recs_) out.warnings.push_back(std::move(text));
        return out;
    }

private:
    struct Entry {
        ExportPath path;
        BindingKind kind;
        std::uint32_t valid_from = 0;
        std::uint32_t valid_until = kNoLimit;
        bool dropped = false;  // unsafe to track at all
        bool stable = false;   // never reassigned: trust from nested functions
    };

    const js::ParsedFile& file_;
    std::string package_;
    const std::vector<ExportPath>* symbols_;
    js::ScopeInfo scopes_;
    std::map<std::pair<const js::Scope*, std::string>, std::vector<Entry>> table_;
    std::vector<ImportBinding> bindings_;
    std::vector<CallSite> calls_;
    std::vector<std::pair<std::uint32_t, std::string>> warn_recs_;
    std::set<std::string> warn_seen_;
    std::set<const js::Node*> handled_requires_;

    void warn(std::uint32_t line, const std::string& text) {
        std::string full = "line " + std::to_string(line) + ": " + text;
        if (warn_seen_.insert(full).second) warn_recs_.emplace_back(line, std::move(full));
    }

    js::Scope* scope_at(const js::Node& n) {
        js::Scope* s = scopes_.scope_for(n);
        return s ? s : scopes_.module.get();
    }

    // ---- specifier / require detection ------------------------------------

    // `require` must resolve to nothing local to be the real CommonJS require.
    bool is_require_callee(const js::Node* callee) {
        callee = unwrap_paren(callee);
        if (!callee || !callee->is(js::K::Ident) || callee->str != "require") return false;
        return scope_at(*callee)->resolve("require") == nullptr;
    }

    enum class RequireKind { No, Static, Dynamic };

    RequireKind classify_require(const js::Node* e, std::string& spec_out) {
        e = unwrap_paren(e);
        if (!e || !e->is(js::K::Call)) return RequireKind::No;
        if (!is_require_callee(e->kid(0))) return RequireKind::No;
        if (e->kids.size() < 2 || !e->kid(1)) return RequireKind::Dynamic;
        const js::Node* arg = unwrap_paren(e->kid(1));
        std::string chunk;
        if (arg->is(js::K::Str)) {
            spec_out = arg->str;
            return RequireKind::Static;
        }
        if (template_single_chunk(*arg, chunk)) {
            spec_out = chunk;
            return RequireKind::Static;
        }
        return RequireKind::Dynamic;
    }

    // subpath segments when the specifier names the advisory package
    std::optional<ExportPath> match_package(const std::string& spec) {
        auto split = split_specifier(spec);
        if (!split || split->package != package_) return std::nullopt;
        ExportPath p;
        p.segments = std::move(split->subpath);
        return p;
    }

    // ---- binding table ------------------------------------------------------

    const js::Decl* resolve_from(const js::Node& at, const std::string& name,
                                 js::Scope** holder) {
        return scope_at(at)->resolve(name, holder);
    }

    Entry* find_valid_entry(const js::Node& ref, const std::string& name) {
        js::Scope* holder = nullptr;
        const js::Decl* d = resolve_from(ref, name, &holder);
        if (!d) return nullptr;
        auto it = table_.find({holder, name});
        if (it == table_.end()) return nullptr;  // shadowed by an ordinary local
        js::Scope* rs = scope_at(ref);
        if (js::with_poisoned(rs, holder)) return nullptr;  // inside `with`
        bool deferred = js::crosses_function_boundary(rs, holder);
        for (Entry& e : it->second) {
            if (e.dropped) continue;
            if (deferred) {
                if (e.stable) return &e;
                continue;
            }
            if (ref.start >= e.valid_from && ref.start < e.valid_until) return &e;
        }
        return nullptr;
    }

    void create_binding(const js::Node& ident, const ExportPath& path, BindingKind kind,
                        std::uint32_t valid_from) {
        js::Scope* holder = nullptr;
        const js::Decl* d = resolve_from(ident, ident.str, &holder);
        Entry e;
        e.path = path;
        e.kind = kind;
        e.valid_from = valid_from;
        if (d) {
            bool deferred_write = false;
            std::uint32_t next_write = kNoLimit, next_write_line = 0;
            std::size_t other_writes = 0;
            for (const js::WriteEvent& w : d->writes) {
                if (w.pos == ident.start) continue;  // the creating initializer
                other_writes++;
                if (w.deferred) deferred_write = true;
                if (!w.deferred && w.pos > valid_from && w.pos < next_write) {
                    next_write = w.pos;
                    next_write_line = w.line;
                }
            }
            if (deferred_write) {
                e.dropped = true;
                warn(ident.line, "'" + ident.str +
                                     "' is reassigned inside a nested function; "
                                     "calls through it are not tracked");
            } else if (other_writes > 0) {
                e.valid_until = next_write;
                if (next_write != kNoLimit)
                    warn(next_write_line,
                         "'" + ident.str +
                             "' is reassigned; calls through it after this point are "
                             "not tracked");
            }
            e.stable = other_writes == 0;
        } else {
            e.stable = true;
        }

        ImportBinding b;
        b.local_name = ident.str;
        b.package = package_;
        b.path = e.path;
        b.kind = kind;
        b.line = ident.line;
        bindings_.push_back(std::move(b));
        table_[{holder, ident.str}].push_back(std::move(e));
    }

    void touch_marker(BindingKind kind, const ExportPath& path, std::uint32_t line) {
        ImportBinding b;
        b.local_name = "";
        b.package = package_;
        b.path = path;
        b.kind = kind;
        b.line = line;
        bindings_.push_back(std::move(b));
    }

    // ---- pass A: declarators and import statements -------------------------

    void bind_pattern(const js::Node* pat, const ExportPath& base, BindingKind kind,
                      std::uint32_t valid_from) {
        if (!pat) return;
        switch (pat->kind) {
            case js::K::Ident:
                create_binding(*pat, base, kind, valid_from);
                break;
            case js::K::ObjectPat:
                for (const js::NodePtr& p : pat->kids) {
                    if (!p) continue;
                    if (p->is(js::K::Rest)) {
                        warn(p->line, "object rest element over a module binding is not tracked");
                        continue;
                    }
                    if (!p->is(js::K::Prop)) continue;
                    const js::Node* key = p->kid(0);
                    std::string seg;
                    if (p->flag_a) {
                        std::string chunk;
                        if (key && key->is(js::K::Str)) {
                            seg = key->str;
                        } else if (key && template_single_chunk(*key, chunk)) {
                            seg = chunk;
                        } else {
                            warn(p->line,
                                 "computed key in destructuring of a module binding is not "
                                 "tracked");
                            continue;
                        }
                    } else if (key) {
                        seg = key->str;
                    }
                    const js::Node* value = p->kid(1);
                    if (value && value->is(js::K::AssignPat)) value = value->kid(0);
                    ExportPath sub = base;
                    sub.segments.push_back(seg);
                    bind_pattern(value, sub, kind, valid_from);
                }
                break;
            case js::K::ArrayPat:
                warn(pat->line, "array destructuring of a module binding is not tracked");
                break;
            case js::K::AssignPat:
                bind_pattern(pat->kid(0), base, kind, valid_from);
                break;
            default:
                break;
        }
    }

    void handle_declarator(const js::Node& d) {
        const js::Node* pat = d.kid(0);
        const js::Node* init = d.kid(1);
        if (!pat || !init) return;

        Peeled p = peel_chain(init);
        if (!p.base) return;

        std::string spec;
        RequireKind rk = classify_require(p.base, spec);
        if (rk == RequireKind::Dynamic) {
            warn(p.base->line, "dynamic require specifier is not analyzed");
            return;
        }
        if (rk == RequireKind::Static) {
            handled_requires_.insert(p.base);
            auto sub = match_package(spec);
            if (!sub) return;
            if (p.non_static) {
                warn(p.non_static_line,
                     "computed property access with a non-literal key stops tracking");
                return;
            }
            bind_pattern(pat, path_concat(*sub, p.segs), BindingKind::CjsRequire, d.end);
            return;
        }

        // alias of an existing binding plus static property segments
        if (p.base->is(js::K::Ident)) {
            Entry* base_entry = find_valid_entry(*p.base, p.base->str);
            if (!base_entry) return;
            if (base_entry->kind == BindingKind::Alias) {
                warn(p.base->line, "alias of an alias is not tracked");
                return;
            }
            if (p.non_static) {
                warn(p.non_static_line,
                     "computed property access with a non-literal key stops tracking");
                return;
            }
            bind_pattern(pat, path_concat(base_entry->path, p.segs), BindingKind::Alias, d.end);
        }
    }

    void handle_import_decl(const js::Node& n) {
        auto sub = match_package(n.str);
        if (!sub) return;
        if (n.kids.empty()) {
            touch_marker(BindingKind::EsmSideEffect, *sub, n.line);
            return;
        }
        for (const js::NodePtr& spec : n.kids) {
            if (!spec) continue;
            if (spec->flag_a) {  // namespace
                create_binding(*spec, *sub, BindingKind::EsmNamespace, 0);
            } else if (spec->flag_b) {  // default
                create_binding(*spec, *sub, BindingKind::EsmDefault, 0);
            } else {
                const js::Node* imported = spec->kid(0);
                ExportPath path = *sub;
                if (imported && imported->str != "default")
                    path.segments.push_back(imported->str);
                create_binding(*spec, path, BindingKind::EsmNamed, 0);
            }
        }
    }

    // import statements carry their local name in spec->str; create_binding
    // expects an identifier-shaped node, which ImportSpec provides (str, line,
    // start all refer to the local binding).

    void collect_bindings(const js::Node& n) {
        switch (n.kind) {
            case js::K::VarDecl:
                for (const js::NodePtr& d : n.kids)
                    if (d) handle_declarator(*d);
                break;
            case js::K::ImportDecl:
                handle_import_decl(n);
                break;
            case js::K::ExportAll:
            case js::K::ExportNamed:
                if (!n.str.empty()) {
                    if (auto sub = match_package(n.str)) {
                        touch_marker(BindingKind::EsmSideEffect, *sub, n.line);
                        warn(n.line, "re-export of '" + n.str +
                                         "' is not followed (cross-file flows are out of "
                                         "scope)");
                    }
                }
                break;
            default:
                break;
        }
        for (const js::NodePtr& k : n.kids)
            if (k) collect_bindings(*k);
    }

    // Inline requires and dynamic imports outside declarator positions still
    // count as package touches (and get their warnings).
    void walk_expression_imports(const js::Node& n) {
        std::string spec;
        if (n.is(js::K::Call)) {
            RequireKind rk = classify_require(&n, spec);
            if (rk == RequireKind::Static && !handled_requires_.count(&n)) {
                if (auto sub = match_package(spec)) touch_marker(BindingKind::CjsRequire, *sub, n.line);
            } else if (rk == RequireKind::Dynamic) {
                warn(n.line, "dynamic require specifier is not analyzed");
            }
        } else if (n.is(js::K::DynImport)) {
            const js::Node* arg = n.kids.empty() ? nullptr : unwrap_paren(n.kid(0));
            std::string chunk;
            if (arg && arg->is(js::K::Str)) {
                if (auto sub = match_package(arg->str)) {
                    touch_marker(BindingKind::EsmSideEffect, *sub, n.line);
                    warn(n.line, "dynamic import() result is not followed");
                }
            } else if (arg && template_single_chunk(*arg, chunk)) {
                if (auto sub = match_package(chunk)) {
                    touch_marker(BindingKind::EsmSideEffect, *sub, n.line);
                    warn(n.line, "dynamic import() result is not followed");
                }
            } else {
                warn(n.line, "dynamic import with a non-literal specifier is not analyzed");
            }
        }
        for (const js::NodePtr& k : n.kids)
            if (k) walk_expression_imports(*k);
    }

    // ---- pass B: calls -------------------------------------------------------

    std::optional<ExportPath> resolve_chain(const Peeled& p, bool warn_non_static) {
        if (!p.base) return std::nullopt;

        std::optional<ExportPath> root;
        if (p.base->is(js::K::Ident)) {
            Entry* e = find_valid_entry(*p.base, p.base->str);
            if (!e) return std::nullopt;
            root = e->path;
        } else {
            std::string spec;
            RequireKind rk = classify_require(p.base, spec);
            if (rk == RequireKind::Static) root = match_package(spec);
            if (!root) return std::nullopt;
        }
        if (p.non_static) {
            if (warn_non_static)
                warn(p.non_static_line,
                     "computed property access with a non-literal key stops resolution");
            return std::nullopt;
        }
        return path_concat(*root, p.segs);
    }

    void handle_call_like(const js::Node& call, const js::Node* callee) {
        if (!callee) return;
        Peeled p = peel_chain(callee);
        auto resolved = resolve_chain(p, /*warn_non_static=*/true);
        if (resolved) {
            for (const ExportPath& sym : *symbols_) {
                if (sym == *resolved) {
                    CallSite site;
                    site.line = callee->line;
                    site.column = callee->col;
                    site.resolved_path = *resolved;
                    site.matched_symbol = sym;
                    site.snippet = std::string(file_.slice(*callee));
                    calls_.push_back(std::move(site));
                    break;
                }
            }
        }

        // direct eval is outside the analysis
        const js::Node* base = unwrap_paren(callee);
        if (base && base->is(js::K::Ident) && base->str == "eval" &&
            scope_at(*base)->resolve("eval") == nullptr) {
            warn(base->line, "direct eval is not analyzed");
        }
    }

    void warn_argument_escapes(const js::Node& call, std::size_t first_arg) {
        for (std::size_t i = first_arg; i < call.kids.size(); ++i) {
            const js::Node* arg = call.kid(i);
            if (!arg) continue;
            if (arg->is(js::K::Spread)) arg = arg->kid(0);
            if (!arg) continue;
            Peeled p = peel_chain(arg);
            if (!p.base || !p.base->is(js::K::Ident) || p.non_static) continue;
            Entry* e = find_valid_entry(*p.base, p.base->str);
            if (!e) continue;
            if (p.segs.empty()) {
                warn(arg->line, "import binding '" + p.base->str +
                                    "' passed as an argument; dataflow is not followed");
            } else {
                warn(arg->line, "function reference '" +
                                    std::string(file_.slice(*unwrap_paren(arg))) +
                                    "' passed as an argument; dataflow is not followed");
            }
        }
    }

    void collect_calls(const js::Node& n) {
        switch (n.kind) {
            case js::K::Call:
                handle_call_like(n, n.kid(0));
                warn_argument_escapes(n, 1);
                break;
            case js::K::New:
                handle_call_like(n, n.kid(0));
                warn_argument_escapes(n, 1);
                break;
            case js::K::TaggedTemplate:
                handle_call_like(n, n.kid(0));
                break;
            case js::K::With:
                warn(n.line, "with statement: resolution suppressed inside its body");
                break;
            case js::K::Assign: {
                // storing a binding or a member path of it somewhere we do
                // not follow
                const js::Node* target = unwrap_paren(n.kid(0));
                const js::Node* value = n.kid(1);
                if (target && value && target->is(js::K::Member)) {
                    Peeled p = peel_chain(value);
                    if (p.base && p.base->is(js::K::Ident) && !p.non_static &&
                        find_valid_entry(*p.base, p.base->str)) {
                        warn(value->line, "import-derived value stored on an object; "
                                          "subsequent flows are not tracked");
                    }
                }
                break;
            }
            default:
                break;
        }
        for (const js::NodePtr& k : n.kids)
            if (k) collect_calls(*k);
    }
};

}  // namespace

std::vector<ImportBinding> extract_bindings(const js::ParsedFile& file,
                                            const std::string& package) {
    Extractor ex(file, lowercase_package(package), nullptr);
    return ex.run().bindings;
}

std::vector<CallSite> extract_calls(const js::ParsedFile& file, const Advisory& advisory) {
    Extractor ex(file, advisory.package, &advisory.symbols);
    return ex.run().calls;
}

FileAnalysis analyze_file(const js::ParsedFile& file, const std::string& package,
                          const std::vector<ExportPath>& symbols) {
    Extractor ex(file, lowercase_package(package), &symbols);
    return ex.run();
}

namespace {

FileScan scan_one_file(const std::filesystem::path& root, const std::string& rel,
                       const Advisory& advisory) {
    FileScan scan;
    scan.path = rel;
    std::ifstream in(root / rel, std::ios::binary);
    if (!in) {
        scan.parse_failed = true;
        scan.parse_error = "unreadable file";
        return scan;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        js::ParsedFile parsed = js::parse(buf.str());
        FileAnalysis fa = analyze_file(parsed, advisory.package, advisory.symbols);
        scan.bindings = std::move(fa.bindings);
        scan.calls = std::move(fa.calls);
        scan.warnings = std::move(fa.warnings);
        for (ImportBinding& b : scan.bindings) b.file = rel;
        for (CallSite& c : scan.calls) c.file = rel;
    } catch (const js::ParseError& e) {
        scan.parse_failed = true;
        scan.parse_error = e.what();
    }
    return scan;
}

}  // namespace

ProjectScan scan_project(const std::filesystem::path& root, const SourceSet& sources,
                         const Advisory& advisory, unsigned jobs) {
    ProjectScan out;
    out.attempted = sources.files.size() + sources.skipped.size();
    out.files.resize(sources.files.size());

    auto work = [&](std::size_t i) { out.files[i] = scan_one_file(root, sources.files[i], advisory); };

    if (jobs <= 1 || sources.files.size() <= 1) {
        for (std::size_t i = 0; i < sources.files.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        unsigned n_threads = std::min<std::size_t>(jobs, sources.files.size());
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= sources.files.size()) break;
                    work(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (const auto& [path, reason] : sources.skipped)
        out.warnings.push_back(path + ": skipped (" + reason + ")");

    for (const FileScan& f : out.files) {
        if (f.parse_failed) {
            out.parse_failures.push_back(f.path);
            out.warnings.push_back(f.path + ": parse failure: " + f.parse_error);
            continue;
        }
        out.parsed_ok++;
        for (const CallSite& c : f.calls) out.calls.push_back(c);
        for (const ImportBinding& b : f.bindings)
            if (b.kind != BindingKind::Alias) out.imports_found++;
        for (const std::string& w : f.warnings) out.warnings.push_back(f.path + ": " + w);
    }
    std::sort(out.calls.begin(), out.calls.end(), [](const CallSite& a, const CallSite& b) {
        return std::tie(a.file, a.line, a.column) < std::tie(b.file, b.line, b.column);
    });
    return out;
}

}  // namespace vulnreach
