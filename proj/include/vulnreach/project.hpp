#pragma once

/**
 * @file project.hpp
 * @brief Client-project inspection: manifest, dependency resolution,
 *        source discovery.
 */

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vulnreach/semver.hpp"

namespace vulnreach {

class ProjectError : public std::runtime_error {
public:
    explicit ProjectError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ProjectManifest {
    std::string name;
    // union of dependencies and devDependencies, dependencies winning on
    // conflict; keys lowercased
    std::map<std::string, std::string> declared;
    std::filesystem::path root;

    std::optional<std::string> specifier_for(const std::string& package) const {
        auto it = declared.find(package);
        if (it == declared.end()) return std::nullopt;
        return it->second;
    }
};

/// Absent manifest is a distinct state from an empty dependency map; the
/// diagnostic explains why (missing file, JSON error, bad field types).
struct ManifestResult {
    std::optional<ProjectManifest> manifest;
    std::string diagnostic;

    bool present() const { return manifest.has_value(); }
};

ManifestResult read_manifest(const std::filesystem::path& root);

struct DependencyResolution {
    std::string package;
    std::optional<VersionRange> declared_range;
    std::string declared_text;
    std::optional<Version> installed_version;
    bool resolvable = false;
    std::string unresolvable_reason;
};

/// Resolves the declared specifier and, when a vendored copy exists under
/// node_modules, the installed version from that copy's own manifest.
DependencyResolution resolve_dependency(const ProjectManifest& manifest,
                                        const std::string& package);

struct SourceSet {
    std::vector<std::string> files;  // relative to root, lexicographic
    std::vector<std::pair<std::string, std::string>> skipped;  // (path, reason)
};

/// Recursively collects .js/.mjs/.cjs files. node_modules and .git are
/// pruned everywhere; dist/build only directly under the root. Files over
/// 2 MiB, non-UTF-8 files and symlinks are skipped with a reason; symlinked
/// directories are never followed. Throws ProjectError when the root
/// cannot be read at all.
SourceSet discover_sources(const std::filesystem::path& root);

/// Strict UTF-8 check (overlongs, surrogates and out-of-range rejected).
bool valid_utf8(std::string_view bytes);

}  // namespace vulnreach
