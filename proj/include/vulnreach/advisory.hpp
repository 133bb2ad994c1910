#pragma once

/**
 * @file advisory.hpp
 * @brief Machine-readable vulnerability advisories.
 *
 * An advisory names one vulnerable package, the affected version range,
 * the exported functions that are vulnerable, and optionally the version
 * that fixes it. Advisories are file-based input; see the JSON schema in
 * the README.
 */

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vulnreach/semver.hpp"

namespace vulnreach {

/// Property path from a package's root export to a function. The empty
/// path denotes the root export itself being callable. Surface syntax is
/// dot-separated segments, with "." standing for the root.
struct ExportPath {
    std::vector<std::string> segments;

    bool root() const { return segments.empty(); }
    std::string str() const;

    static ExportPath parse(std::string_view surface);

    friend bool operator==(const ExportPath&, const ExportPath&) = default;
    friend auto operator<=>(const ExportPath&, const ExportPath&) = default;
};

class AdvisoryError : public std::runtime_error {
public:
    explicit AdvisoryError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Advisory {
    std::string id;
    std::string package;        // lowercase npm name, possibly @scope/name
    VersionRange affected;
    std::string affected_text;  // range exactly as loaded
    std::vector<ExportPath> symbols;
    std::optional<Version> fixed;
};

struct AdvisoryLoad {
    std::vector<Advisory> advisories;
    std::vector<std::string> warnings;
};

/// Load advisories from a JSON document (one object or an array of them).
/// Strict mode rejects unknown fields. Throws AdvisoryError naming the
/// advisory id and field on any schema violation.
AdvisoryLoad load_advisories(std::string_view json_text, bool lenient = false);
AdvisoryLoad load_advisories_file(const std::string& path, bool lenient = false);

/// Canonical JSON serialization; loading it again reproduces the store.
std::string serialize_advisories(const std::vector<Advisory>& advisories);

/// All advisories for a package, compared case-insensitively, ordered by id.
std::vector<const Advisory*> find_advisories_for(std::string_view package,
                                                 const std::vector<Advisory>& store);

/// npm names are case-insensitive for matching purposes.
std::string lowercase_package(std::string_view name);

}  // namespace vulnreach
