#include "vulnreach/semver.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>

namespace vulnreach {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ident_char(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-';
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

// Numeric identifiers (and core components) must not carry leading zeros.
bool has_leading_zero(std::string_view s) { return s.size() > 1 && s[0] == '0'; }

// Cursor over version/range text; `base` keeps error positions relative to
// the original input even when parsing a substring.
struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t base = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    char take() { return text[pos++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw SemverError(msg, base + pos); }
};

std::uint64_t parse_numeric(Cursor& c, const char* what) {
    std::size_t start = c.pos;
    while (!c.done() && is_digit(c.peek())) c.pos++;
    if (c.pos == start) c.fail(std::string("expected ") + what);
    std::string_view digits = c.text.substr(start, c.pos - start);
    if (has_leading_zero(digits)) {
        c.pos = start;
        c.fail(std::string("leading zero in ") + what);
    }
    std::uint64_t value = 0;
    for (char d : digits) {
        if (value > (std::numeric_limits<std::uint64_t>::max() - (d - '0')) / 10) {
            c.pos = start;
            c.fail(std::string(what) + " out of range");
        }
        value = value * 10 + static_cast<std::uint64_t>(d - '0');
    }
    return value;
}

std::string parse_identifier(Cursor& c, bool numeric_rule, const char* what) {
    std::size_t start = c.pos;
    while (!c.done() && is_ident_char(c.peek())) c.pos++;
    if (c.pos == start) c.fail(std::string("expected ") + what);
    std::string id(c.text.substr(start, c.pos - start));
    if (numeric_rule && all_digits(id) && has_leading_zero(id)) {
        c.pos = start;
        c.fail(std::string("leading zero in numeric ") + what);
    }
    return id;
}

// Parses "M.m.p[-pre][+build]" starting at the cursor. Stops at the first
// character that cannot continue the version.
Version parse_version_at(Cursor& c) {
    Version v;
    v.major = parse_numeric(c, "major version");
    if (c.peek() != '.') c.fail("expected '.' after major version");
    c.take();
    v.minor = parse_numeric(c, "minor version");
    if (c.peek() != '.') c.fail("expected '.' after minor version");
    c.take();
    v.patch = parse_numeric(c, "patch version");
    if (c.peek() == '-') {
        c.take();
        v.prerelease.push_back(parse_identifier(c, true, "prerelease identifier"));
        while (c.peek() == '.') {
            c.take();
            v.prerelease.push_back(parse_identifier(c, true, "prerelease identifier"));
        }
    }
    if (c.peek() == '+') {
        c.take();
        v.build.push_back(parse_identifier(c, false, "build identifier"));
        while (c.peek() == '.') {
            c.take();
            v.build.push_back(parse_identifier(c, false, "build identifier"));
        }
    }
    return v;
}

int compare_prerelease_ids(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        bool na = all_digits(a[i]);
        bool nb = all_digits(b[i]);
        if (na && nb) {
            // Equal-value numeric ids have equal text (no leading zeros),
            // so length-then-lexicographic compares numerically.
            if (a[i].size() != b[i].size())
                return a[i].size() < b[i].size() ? -1 : 1;
            int c = a[i].compare(b[i]);
            if (c != 0) return c < 0 ? -1 : 1;
        } else if (na != nb) {
            return na ? -1 : 1;  // numeric sorts below alphanumeric
        } else {
            int c = a[i].compare(b[i]);
            if (c != 0) return c < 0 ? -1 : 1;
        }
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

const char* op_text(Op op) {
    switch (op) {
        case Op::Lt: return "<";
        case Op::Le: return "<=";
        case Op::Gt: return ">";
        case Op::Ge: return ">=";
        case Op::Eq: return "=";
    }
    return "=";
}

bool op_holds(int cmp, Op op) {
    switch (op) {
        case Op::Lt: return cmp < 0;
        case Op::Le: return cmp <= 0;
        case Op::Gt: return cmp > 0;
        case Op::Ge: return cmp >= 0;
        case Op::Eq: return cmp == 0;
    }
    return false;
}

Version make_version(std::uint64_t major, std::uint64_t minor, std::uint64_t patch) {
    Version v;
    v.major = major;
    v.minor = minor;
    v.patch = patch;
    return v;
}

// ---------------------------------------------------------------------------
// Range parsing
// ---------------------------------------------------------------------------

// One component of an x-range partial: a number, a wildcard, or absent.
struct PartialComponent {
    std::optional<std::uint64_t> value;  // nullopt = wildcard or absent
    bool present = false;
};

struct Partial {
    PartialComponent major, minor, patch;
    std::vector<std::string> prerelease;

    bool concrete() const {
        return major.value && minor.value && patch.value;
    }
    Version version() const {
        Version v = make_version(*major.value, *minor.value, *patch.value);
        v.prerelease = prerelease;
        return v;
    }
};

PartialComponent parse_partial_component(Cursor& c) {
    PartialComponent out;
    out.present = true;
    char ch = c.peek();
    if (ch == 'x' || ch == 'X' || ch == '*') {
        c.take();
        return out;
    }
    out.value = parse_numeric(c, "version component");
    return out;
}

// Parses an x-range partial such as "1", "1.2", "1.x", "1.2.3-beta".
// A wildcard component truncates everything after it.
Partial parse_partial(Cursor& c) {
    if (c.peek() == 'v') c.take();
    Partial p;
    p.major = parse_partial_component(c);
    if (c.peek() == '.') {
        c.take();
        p.minor = parse_partial_component(c);
        if (c.peek() == '.') {
            c.take();
            p.patch = parse_partial_component(c);
        }
    }
    if (!p.major.value) p.minor = p.patch = PartialComponent{};
    else if (p.minor.present && !p.minor.value) p.patch = PartialComponent{};

    if (c.peek() == '-') {
        if (!p.concrete()) c.fail("prerelease requires a full major.minor.patch version");
        c.take();
        p.prerelease.push_back(parse_identifier(c, true, "prerelease identifier"));
        while (c.peek() == '.') {
            c.take();
            p.prerelease.push_back(parse_identifier(c, true, "prerelease identifier"));
        }
    }
    if (c.peek() == '+') {  // build metadata is legal in ranges and ignored
        c.take();
        parse_identifier(c, false, "build identifier");
        while (c.peek() == '.') {
            c.take();
            parse_identifier(c, false, "build identifier");
        }
    }
    if (!c.done()) c.fail("unexpected character in version range");
    return p;
}

void push(std::vector<Comparator>& out, Op op, Version v) {
    out.push_back(Comparator{op, std::move(v)});
}

// Comparator that no version can satisfy; used for degenerate forms like ">*".
void push_impossible(std::vector<Comparator>& out) {
    push(out, Op::Lt, make_version(0, 0, 0));
}

// Desugars one comparator token into primitive comparators, per npm rules.
void desugar_comparator(std::string_view token, std::size_t base, std::vector<Comparator>& out) {
    Cursor c{token, 0, base};
    char first = c.peek();

    if (first == '^') {
        c.take();
        Partial p = parse_partial(c);
        if (!p.major.value) return;  // ^* matches everything
        std::uint64_t M = *p.major.value;
        if (!p.minor.value) {
            push(out, Op::Ge, make_version(M, 0, 0));
            push(out, Op::Lt, make_version(M + 1, 0, 0));
        } else if (!p.patch.value) {
            std::uint64_t m = *p.minor.value;
            push(out, Op::Ge, make_version(M, m, 0));
            if (M > 0) push(out, Op::Lt, make_version(M + 1, 0, 0));
            else push(out, Op::Lt, make_version(0, m + 1, 0));
        } else {
            Version lo = p.version();
            push(out, Op::Ge, lo);
            if (M > 0) push(out, Op::Lt, make_version(M + 1, 0, 0));
            else if (*p.minor.value > 0) push(out, Op::Lt, make_version(0, *p.minor.value + 1, 0));
            else push(out, Op::Lt, make_version(0, 0, *p.patch.value + 1));
        }
        return;
    }

    if (first == '~') {
        c.take();
        Partial p = parse_partial(c);
        if (!p.major.value) return;  // ~* matches everything
        std::uint64_t M = *p.major.value;
        if (!p.minor.value) {
            push(out, Op::Ge, make_version(M, 0, 0));
            push(out, Op::Lt, make_version(M + 1, 0, 0));
        } else if (!p.patch.value) {
            push(out, Op::Ge, make_version(M, *p.minor.value, 0));
            push(out, Op::Lt, make_version(M, *p.minor.value + 1, 0));
        } else {
            push(out, Op::Ge, p.version());
            push(out, Op::Lt, make_version(M, *p.minor.value + 1, 0));
        }
        return;
    }

    Op op = Op::Eq;
    bool has_op = true;
    if (first == '>') {
        c.take();
        if (c.peek() == '=') { c.take(); op = Op::Ge; } else op = Op::Gt;
    } else if (first == '<') {
        c.take();
        if (c.peek() == '=') { c.take(); op = Op::Le; } else op = Op::Lt;
    } else if (first == '=') {
        c.take();
    } else {
        has_op = false;
    }

    Partial p = parse_partial(c);

    if (!p.major.value) {
        // Bare wildcard matches everything; ">x" / "<x" match nothing.
        if (has_op && (op == Op::Gt || op == Op::Lt)) push_impossible(out);
        return;
    }
    std::uint64_t M = *p.major.value;

    if (p.concrete()) {
        push(out, op, p.version());
        return;
    }

    // Wildcard tail: desugar against the implied [M.m.0, next) interval.
    std::uint64_t m = p.minor.value ? *p.minor.value : 0;
    Version floor = make_version(M, m, 0);
    Version next = p.minor.value ? make_version(M, m + 1, 0) : make_version(M + 1, 0, 0);

    switch (op) {
        case Op::Eq:
            push(out, Op::Ge, floor);
            push(out, Op::Lt, next);
            break;
        case Op::Gt: push(out, Op::Ge, next); break;
        case Op::Ge: push(out, Op::Ge, floor); break;
        case Op::Lt: push(out, Op::Lt, floor); break;
        case Op::Le: push(out, Op::Lt, next); break;
    }
}

bool is_op_only_token(std::string_view t) {
    return t == ">" || t == "<" || t == ">=" || t == "<=" || t == "=" || t == "^" || t == "~";
}

// Splits one `||` alternative into comparator tokens, merging an operator
// that was separated from its operand by whitespace (npm tolerates "> 1.2.3").
std::vector<std::pair<std::string, std::size_t>> tokenize_set(std::string_view text, std::size_t base) {
    std::vector<std::pair<std::string, std::size_t>> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
        if (i >= text.size()) break;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) i++;
        std::string tok(text.substr(start, i - start));
        if (!tokens.empty() && is_op_only_token(tokens.back().first)) {
            tokens.back().first += tok;
        } else {
            tokens.emplace_back(std::move(tok), base + start);
        }
    }
    return tokens;
}

ComparatorSet parse_comparator_set(std::string_view text, std::size_t base) {
    ComparatorSet set;
    auto tokens = tokenize_set(text, base);

    // Hyphen range: exactly "<partial> - <partial>".
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].first != "-") continue;
        if (tokens.size() != 3 || i != 1)
            throw SemverError("malformed hyphen range", tokens[i].second);
        Cursor lo{tokens[0].first, 0, tokens[0].second};
        Partial pl = parse_partial(lo);
        Cursor hi{tokens[2].first, 0, tokens[2].second};
        Partial ph = parse_partial(hi);

        if (pl.major.value) {
            Version v = make_version(*pl.major.value,
                                     pl.minor.value ? *pl.minor.value : 0,
                                     pl.patch.value ? *pl.patch.value : 0);
            v.prerelease = pl.prerelease;
            push(set.comparators, Op::Ge, v);
        }
        if (ph.major.value) {
            if (ph.concrete()) push(set.comparators, Op::Le, ph.version());
            else if (ph.minor.value)
                push(set.comparators, Op::Lt, make_version(*ph.major.value, *ph.minor.value + 1, 0));
            else
                push(set.comparators, Op::Lt, make_version(*ph.major.value + 1, 0, 0));
        }
        return set;
    }

    for (auto& [tok, pos] : tokens) desugar_comparator(tok, pos, set.comparators);
    return set;
}

// ---------------------------------------------------------------------------
// Interval algebra for ranges_intersect
// ---------------------------------------------------------------------------

struct Bound {
    Version version;
    bool open = false;   // strict inequality
    bool present = false;
};

struct Interval {
    Bound lower, upper;
};

Interval set_bounds(const ComparatorSet& a, const ComparatorSet& b) {
    Interval iv;
    auto tighten_lower = [&](const Version& v, bool open) {
        if (!iv.lower.present || compare(v, iv.lower.version) > 0 ||
            (compare(v, iv.lower.version) == 0 && open && !iv.lower.open)) {
            iv.lower = Bound{v, open, true};
        }
    };
    auto tighten_upper = [&](const Version& v, bool open) {
        if (!iv.upper.present || compare(v, iv.upper.version) < 0 ||
            (compare(v, iv.upper.version) == 0 && open && !iv.upper.open)) {
            iv.upper = Bound{v, open, true};
        }
    };
    auto feed = [&](const ComparatorSet& s) {
        for (const Comparator& c : s.comparators) {
            switch (c.op) {
                case Op::Gt: tighten_lower(c.version, true); break;
                case Op::Ge: tighten_lower(c.version, false); break;
                case Op::Lt: tighten_upper(c.version, true); break;
                case Op::Le: tighten_upper(c.version, false); break;
                case Op::Eq:
                    tighten_lower(c.version, false);
                    tighten_upper(c.version, false);
                    break;
            }
        }
    };
    feed(a);
    feed(b);
    return iv;
}

bool below_upper(const Version& v, const Bound& upper) {
    if (!upper.present) return true;
    int c = compare(v, upper.version);
    return upper.open ? c < 0 : c <= 0;
}

// Is there a non-prerelease version inside the interval?
bool interval_has_release(const Interval& iv) {
    Version candidate = make_version(0, 0, 0);
    if (iv.lower.present) {
        const Version& lo = iv.lower.version;
        if (lo.is_prerelease()) {
            candidate = make_version(lo.major, lo.minor, lo.patch);
        } else if (iv.lower.open) {
            candidate = make_version(lo.major, lo.minor, lo.patch + 1);
        } else {
            candidate = make_version(lo.major, lo.minor, lo.patch);
        }
    }
    return below_upper(candidate, iv.upper);
}

int compare_core(const Version& a, const Version& b) {
    if (a.major != b.major) return a.major < b.major ? -1 : 1;
    if (a.minor != b.minor) return a.minor < b.minor ? -1 : 1;
    if (a.patch != b.patch) return a.patch < b.patch ? -1 : 1;
    return 0;
}

// The immediate successor of a prerelease identifier list appends "0";
// nothing sorts strictly between the two.
bool is_immediate_successor(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (b.size() != a.size() + 1) return false;
    if (!std::equal(a.begin(), a.end(), b.begin())) return false;
    return b.back() == "0";
}

// Is there a prerelease version with the given core inside the interval?
bool interval_has_prerelease_at(const Interval& iv, const Version& core) {
    Bound lo, hi;  // bounds restricted to the prerelease space of `core`
    if (iv.lower.present) {
        int c = compare_core(iv.lower.version, core);
        if (c > 0) return false;
        if (c == 0) {
            if (!iv.lower.version.is_prerelease()) return false;  // all core-pres sort below
            lo = iv.lower;
        }
    }
    if (iv.upper.present) {
        int c = compare_core(iv.upper.version, core);
        if (c < 0) return false;
        if (c == 0 && iv.upper.version.is_prerelease()) hi = iv.upper;
        // upper at the release itself admits every prerelease of the core
    }
    if (!lo.present && !hi.present) return true;  // witness: core-0
    if (!lo.present) {
        // minimal prerelease is ["0"]; admissible unless hi is exactly that, open
        if (hi.open && hi.version.prerelease == std::vector<std::string>{"0"}) return false;
        return compare_prerelease_ids({"0"}, hi.version.prerelease) < 0 || !hi.open;
    }
    if (!hi.present) return true;  // successor above lo always exists
    int c = compare_prerelease_ids(lo.version.prerelease, hi.version.prerelease);
    if (c > 0) return false;
    if (c == 0) return !lo.open && !hi.open;
    if (!lo.open || !hi.open) return true;
    return !is_immediate_successor(lo.version.prerelease, hi.version.prerelease);
}

bool sets_intersect(const ComparatorSet& a, const ComparatorSet& b) {
    Interval iv = set_bounds(a, b);
    if (interval_has_release(iv)) return true;

    // Prerelease witness: both sets must mention a prerelease at the same
    // core tuple for any prerelease version there to satisfy them.
    for (const Comparator& ca : a.comparators) {
        if (!ca.version.is_prerelease()) continue;
        for (const Comparator& cb : b.comparators) {
            if (!cb.version.is_prerelease()) continue;
            if (compare_core(ca.version, cb.version) != 0) continue;
            if (interval_has_prerelease_at(iv, ca.version)) return true;
        }
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

std::string Version::str() const {
    std::string out = std::to_string(major) + "." + std::to_string(minor) + "." + std::to_string(patch);
    for (std::size_t i = 0; i < prerelease.size(); ++i)
        out += (i == 0 ? "-" : ".") + prerelease[i];
    for (std::size_t i = 0; i < build.size(); ++i)
        out += (i == 0 ? "+" : ".") + build[i];
    return out;
}

int compare(const Version& a, const Version& b) {
    int core = compare_core(a, b);
    if (core != 0) return core;
    if (a.prerelease.empty() != b.prerelease.empty())
        return a.prerelease.empty() ? 1 : -1;  // release outranks prerelease
    return compare_prerelease_ids(a.prerelease, b.prerelease);
}

bool same_core(const Version& a, const Version& b) { return compare_core(a, b) == 0; }

std::string Comparator::str() const { return std::string(op_text(op)) + version.str(); }

std::string ComparatorSet::str() const {
    if (comparators.empty()) return "*";
    std::string out;
    for (std::size_t i = 0; i < comparators.size(); ++i) {
        if (i) out += " ";
        out += comparators[i].str();
    }
    return out;
}

std::string VersionRange::str() const {
    std::string out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i) out += " || ";
        out += sets[i].str();
    }
    return out;
}

Version parse_version(std::string_view text) {
    std::size_t offset = 0;
    if (!text.empty() && (text[0] == 'v' || text[0] == '=')) {
        text.remove_prefix(1);
        offset = 1;
    }
    Cursor c{text, 0, offset};
    if (c.done()) c.fail("empty version");
    Version v = parse_version_at(c);
    if (!c.done()) c.fail("trailing characters after version");
    return v;
}

VersionRange parse_range(std::string_view text) {
    VersionRange range;
    std::size_t start = 0;
    while (true) {
        std::size_t sep = text.find("||", start);
        std::string_view chunk = text.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start);
        range.sets.push_back(parse_comparator_set(chunk, start));
        if (sep == std::string_view::npos) break;
        start = sep + 2;
    }
    return range;
}

bool satisfies(const Version& v, const ComparatorSet& set) {
    for (const Comparator& c : set.comparators)
        if (!op_holds(compare(v, c.version), c.op)) return false;
    if (!v.is_prerelease()) return true;
    for (const Comparator& c : set.comparators)
        if (c.version.is_prerelease() && same_core(v, c.version)) return true;
    return false;
}

bool satisfies(const Version& v, const VersionRange& range) {
    for (const ComparatorSet& set : range.sets)
        if (satisfies(v, set)) return true;
    return false;
}

bool ranges_intersect(const VersionRange& a, const VersionRange& b) {
    for (const ComparatorSet& sa : a.sets)
        for (const ComparatorSet& sb : b.sets)
            if (sets_intersect(sa, sb)) return true;
    return false;
}

}  // namespace vulnreach
