#pragma once

/**
 * @file semver.hpp
 * @brief Semantic versions and npm-style version ranges.
 *
 * Versions follow SemVer 2.0.0 precedence. Ranges follow npm semantics:
 * caret/tilde/x-range/hyphen sugar, whitespace conjunction, `||` disjunction,
 * and the npm prerelease rule (a prerelease version satisfies a comparator
 * set only if the set mentions a prerelease with the same major.minor.patch
 * tuple).
 *
 * All types are immutable after construction and all operations are pure.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vulnreach {

/// Thrown for malformed version or range text. `position()` is the
/// zero-based offset of the offending character in the input.
class SemverError : public std::runtime_error {
public:
    SemverError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          pos_(pos) {}

    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// A parsed SemVer 2.0.0 version. Build metadata is carried but never
/// affects precedence.
struct Version {
    std::uint64_t major = 0;
    std::uint64_t minor = 0;
    std::uint64_t patch = 0;
    std::vector<std::string> prerelease;
    std::vector<std::string> build;

    bool is_prerelease() const { return !prerelease.empty(); }

    /// Canonical text, e.g. "1.2.3-beta.2+build7".
    std::string str() const;
};

/// Precedence comparison per SemVer 2.0.0 (build metadata ignored).
/// Returns <0, 0, >0 like strcmp.
int compare(const Version& a, const Version& b);

/// True when major/minor/patch are all equal.
bool same_core(const Version& a, const Version& b);

inline bool operator==(const Version& a, const Version& b) { return compare(a, b) == 0; }
inline bool operator!=(const Version& a, const Version& b) { return compare(a, b) != 0; }
inline bool operator<(const Version& a, const Version& b) { return compare(a, b) < 0; }
inline bool operator<=(const Version& a, const Version& b) { return compare(a, b) <= 0; }
inline bool operator>(const Version& a, const Version& b) { return compare(a, b) > 0; }
inline bool operator>=(const Version& a, const Version& b) { return compare(a, b) >= 0; }

enum class Op : std::uint8_t { Lt, Le, Gt, Ge, Eq };

/// One primitive constraint, e.g. ">=1.2.3".
struct Comparator {
    Op op;
    Version version;

    std::string str() const;
};

/// Conjunction of comparators. An empty set (bare `*` or empty range text)
/// matches every non-prerelease version.
struct ComparatorSet {
    std::vector<Comparator> comparators;

    std::string str() const;
};

/// Disjunction of comparator sets; the normalized form every surface range
/// (caret, tilde, x-ranges, hyphen ranges, `||`) desugars to.
struct VersionRange {
    std::vector<ComparatorSet> sets;

    std::string str() const;
};

/// Parse a concrete version. Tolerates a single leading `v` or `=`;
/// anything else malformed raises SemverError.
Version parse_version(std::string_view text);

/// Parse an npm-style range expression into normalized disjunctive form.
VersionRange parse_range(std::string_view text);

/// npm satisfaction check, including the prerelease exclusion rule.
bool satisfies(const Version& v, const ComparatorSet& set);
bool satisfies(const Version& v, const VersionRange& range);

/// True iff some version satisfies both ranges. Decided by interval
/// algebra over comparator-set pairs, not by sampling.
bool ranges_intersect(const VersionRange& a, const VersionRange& b);

}  // namespace vulnreach
