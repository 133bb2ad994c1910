#include "vulnreach/project.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "vulnreach/advisory.hpp"

namespace vulnreach {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uintmax_t kMaxSourceBytes = 2 * 1024 * 1024;

std::optional<std::string> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return buf.str();
}

bool merge_dependency_map(const json& doc, const char* field,
                          std::map<std::string, std::string>& into, bool overwrite) {
    if (!doc.contains(field)) return true;
    const json& deps = doc[field];
    if (deps.is_null()) return true;
    if (!deps.is_object()) return false;
    for (auto it = deps.begin(); it != deps.end(); ++it) {
        if (!it.value().is_string()) return false;
        std::string key = lowercase_package(it.key());
        if (overwrite) into[key] = it.value().get<std::string>();
        else into.emplace(key, it.value().get<std::string>());
    }
    return true;
}

}  // namespace

bool valid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        unsigned char c = bytes[i];
        if (c < 0x80) {
            i++;
            continue;
        }
        int len;
        std::uint32_t cp;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (int k = 1; k < len; ++k) {
            unsigned char cc = bytes[i + k];
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && cp < 0x800) return false;
        if (len == 4 && cp < 0x10000) return false;
        if (cp > 0x10FFFF) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;
        i += len;
    }
    return true;
}

ManifestResult read_manifest(const fs::path& root) {
    fs::path manifest_path = root / "package.json";
    std::error_code ec;
    if (!fs::exists(manifest_path, ec) || ec)
        return {std::nullopt, "no package.json in " + root.string()};

    std::optional<std::string> text = read_file(manifest_path);
    if (!text) return {std::nullopt, "package.json is unreadable"};

    json doc;
    try {
        doc = json::parse(*text);
    } catch (const json::exception& e) {
        return {std::nullopt, std::string("package.json is not valid JSON: ") + e.what()};
    }
    if (!doc.is_object()) return {std::nullopt, "package.json is not a JSON object"};

    ProjectManifest m;
    m.root = root;
    if (doc.contains("name") && doc["name"].is_string()) m.name = doc["name"].get<std::string>();
    else m.name = root.filename().string();

    if (!merge_dependency_map(doc, "devDependencies", m.declared, true) ||
        !merge_dependency_map(doc, "dependencies", m.declared, true)) {
        return {std::nullopt, "package.json has malformed dependency maps"};
    }
    return {std::move(m), ""};
}

DependencyResolution resolve_dependency(const ProjectManifest& manifest,
                                        const std::string& package) {
    DependencyResolution r;
    r.package = lowercase_package(package);

    if (auto spec = manifest.specifier_for(r.package)) {
        r.declared_text = *spec;
        try {
            r.declared_range = parse_range(*spec);
            r.resolvable = true;
        } catch (const SemverError&) {
            r.resolvable = false;
            r.unresolvable_reason = "non-semver specifier '" + *spec + "'";
        }
    } else {
        r.resolvable = false;
        r.unresolvable_reason = "not declared in manifest";
    }

    // installed copy: never fabricated, only read from the vendored manifest
    fs::path installed = manifest.root / "node_modules";
    for (const fs::path& part : fs::path(r.package)) installed /= part;
    installed /= "package.json";
    std::error_code ec;
    if (fs::exists(installed, ec) && !ec) {
        if (auto text = read_file(installed)) {
            try {
                json doc = json::parse(*text);
                if (doc.is_object() && doc.contains("version") && doc["version"].is_string())
                    r.installed_version = parse_version(doc["version"].get<std::string>());
            } catch (...) {
                // unreadable or malformed vendored manifest: no version
            }
        }
    }
    return r;
}

SourceSet discover_sources(const fs::path& root) {
    std::error_code ec;
    if (!fs::exists(root, ec) || ec)
        throw ProjectError("project root does not exist: " + root.string());
    if (!fs::is_directory(root, ec) || ec)
        throw ProjectError("project root is not a directory: " + root.string());

    SourceSet out;

    // manual recursion: gives exact control over pruning and symlinks
    auto walk = [&](auto&& self, const fs::path& dir, int depth) -> void {
        std::error_code iter_ec;
        fs::directory_iterator it(dir, iter_ec);
        if (iter_ec) {
            if (depth == 0) throw ProjectError("cannot read project root: " + root.string());
            out.skipped.emplace_back(dir.lexically_relative(root).generic_string(),
                                     "unreadable directory");
            return;
        }
        for (const fs::directory_entry& entry : it) {
            const fs::path& p = entry.path();
            std::string name = p.filename().string();
            std::string rel = p.lexically_relative(root).generic_string();

            std::error_code sec;
            bool is_symlink = entry.is_symlink(sec);
            bool is_dir = !is_symlink && entry.is_directory(sec);

            if (is_dir) {
                if (name == "node_modules" || name == ".git") continue;
                if (depth == 0 && (name == "dist" || name == "build")) continue;
                self(self, p, depth + 1);
                continue;
            }

            std::string ext = p.extension().string();
            if (ext != ".js" && ext != ".mjs" && ext != ".cjs") continue;

            if (is_symlink) {
                out.skipped.emplace_back(rel, "symlink");
                continue;
            }
            if (!entry.is_regular_file(sec) || sec) {
                out.skipped.emplace_back(rel, "not a regular file");
                continue;
            }
            std::uintmax_t size = entry.file_size(sec);
            if (sec) {
                out.skipped.emplace_back(rel, "unreadable");
                continue;
            }
            if (size > kMaxSourceBytes) {
                out.skipped.emplace_back(rel, "size limit (2 MiB)");
                continue;
            }
            std::optional<std::string> text = read_file(p);
            if (!text) {
                out.skipped.emplace_back(rel, "unreadable");
                continue;
            }
            if (!valid_utf8(*text)) {
                out.skipped.emplace_back(rel, "invalid UTF-8");
                continue;
            }
            out.files.push_back(rel);
        }
    };
    walk(walk, root, 0);

    std::sort(out.files.begin(), out.files.end());
    std::sort(out.skipped.begin(), out.skipped.end());
    return out;
}

}  // namespace vulnreach
