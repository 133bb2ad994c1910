#pragma once

/**
 * @file extract.hpp
 * @brief Import-binding and call-site extraction for one advisory package.
 *
 * Supported syntax:
 *   - CommonJS: `const/let/var x = require('pkg')`, destructuring with
 *     renaming, inline `require('pkg')(...)` and `require('pkg').m(...)`,
 *     subpath requires (`require('pkg/sub')`).
 *   - ES modules: default, named (with renaming), namespace and bare
 *     side-effect imports, subpath specifiers.
 *   - Static member chains of any depth through `.name` or `["name"]`.
 *   - Single-level `const` aliasing of import-derived expressions;
 *     `let`/`var` aliases are honored until their first reassignment in
 *     the same scope and dropped (with a warning) after it.
 *
 * Resolution respects lexical scoping: any local declaration shadowing a
 * binding name suppresses matches in that scope. Dynamic constructs
 * (non-literal require specifiers, computed keys, `eval`, `with`) never
 * resolve; they produce warnings so that clean verdicts can be qualified.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vulnreach/advisory.hpp"
#include "vulnreach/js/ast.hpp"
#include "vulnreach/project.hpp"

namespace vulnreach {

enum class BindingKind : std::uint8_t {
    CjsRequire,
    EsmDefault,
    EsmNamed,
    EsmNamespace,
    Alias,
    EsmSideEffect,  // bare `import 'pkg'`: a package touch without a name
};

std::string_view binding_kind_name(BindingKind k);

struct ImportBinding {
    std::string local_name;  // empty for side-effect markers
    std::string package;
    ExportPath path;
    BindingKind kind;
    std::string file;
    std::uint32_t line = 0;
};

struct CallSite {
    std::string file;
    std::uint32_t line = 0;
    std::uint32_t column = 0;
    ExportPath resolved_path;
    ExportPath matched_symbol;
    std::string snippet;  // callee expression text
};

struct FileAnalysis {
    std::vector<ImportBinding> bindings;
    std::vector<CallSite> calls;
    std::vector<std::string> warnings;
};

/// Bindings of `package` in one parsed file (alias bindings included).
std::vector<ImportBinding> extract_bindings(const js::ParsedFile& file,
                                            const std::string& package);

/// Call sites whose callee resolves to one of the advisory's symbols.
std::vector<CallSite> extract_calls(const js::ParsedFile& file, const Advisory& advisory);

/// Bindings, calls and warnings in one pass.
FileAnalysis analyze_file(const js::ParsedFile& file, const std::string& package,
                          const std::vector<ExportPath>& symbols);

struct FileScan {
    std::string path;
    bool parse_failed = false;
    std::string parse_error;
    std::vector<ImportBinding> bindings;
    std::vector<CallSite> calls;
    std::vector<std::string> warnings;
};

struct ProjectScan {
    std::vector<FileScan> files;        // in SourceSet order
    std::vector<CallSite> calls;        // merged, (file, line, column) order
    std::vector<std::string> warnings;  // merged, prefixed with file path
    std::vector<std::string> parse_failures;  // file paths, with messages in warnings
    int imports_found = 0;              // non-alias bindings plus touch markers
    std::size_t attempted = 0;          // discovered candidates incl. skipped
    std::size_t parsed_ok = 0;
};

/// Scans every file of the source set against one advisory. Parse failures
/// never abort the scan. `jobs` bounds per-file parallelism; output is
/// independent of it.
ProjectScan scan_project(const std::filesystem::path& root, const SourceSet& sources,
                         const Advisory& advisory, unsigned jobs = 1);

}  // namespace vulnreach
