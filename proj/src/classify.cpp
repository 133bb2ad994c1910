#include "vulnreach/classify.hpp"

namespace vulnreach {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Reached: return "Reached";
        case Verdict::Clean: return "Clean";
        case Verdict::ListedOnly: return "ListedOnly";
        case Verdict::NoData: return "NoData";
        case Verdict::NotListed: return "NotListed";
    }
    return "?";
}

std::optional<Verdict> verdict_from_name(std::string_view name) {
    for (Verdict v : {Verdict::Reached, Verdict::Clean, Verdict::ListedOnly, Verdict::NoData,
                      Verdict::NotListed})
        if (verdict_name(v) == name) return v;
    return std::nullopt;
}

Verdict decide_verdict(bool manifest_present, bool declared, bool imports_positive,
                       bool calls_positive, bool all_sources_failed) {
    if (!manifest_present) return Verdict::NoData;
    if (declared && all_sources_failed) return Verdict::NoData;
    if (!declared && !imports_positive) return Verdict::NotListed;
    if (calls_positive) return Verdict::Reached;
    if (imports_positive) return Verdict::Clean;
    return Verdict::ListedOnly;
}

std::optional<bool> exposure(const DependencyResolution& resolution, const Advisory& advisory) {
    if (resolution.installed_version)
        return satisfies(*resolution.installed_version, advisory.affected);
    if (resolution.declared_range)
        return ranges_intersect(*resolution.declared_range, advisory.affected);
    return std::nullopt;
}

ClassificationReport classify(const std::string& client, const Advisory& advisory,
                              const ManifestResult& manifest,
                              const std::optional<DependencyResolution>& resolution,
                              const ProjectScan& scan) {
    ClassificationReport report;
    report.client = client;
    report.advisory_id = advisory.id;
    report.call_sites = scan.calls;
    report.imports_found = scan.imports_found;
    report.warnings = scan.warnings;
    report.parse_failures = scan.parse_failures;

    bool declared = manifest.present() &&
                    manifest.manifest->specifier_for(advisory.package).has_value();
    bool all_failed = scan.attempted > 0 && scan.parsed_ok == 0;

    report.verdict = decide_verdict(manifest.present(), declared, scan.imports_found > 0,
                                    !scan.calls.empty(), all_failed);

    if (resolution) report.version_affected = exposure(*resolution, advisory);

    if (report.verdict == Verdict::NoData) {
        if (!manifest.present())
            report.warnings.insert(report.warnings.begin(),
                                   "no data: " + (manifest.diagnostic.empty()
                                                      ? "manifest missing or unreadable"
                                                      : manifest.diagnostic));
        else
            report.warnings.insert(report.warnings.begin(),
                                   "no data: every discovered source file failed to parse or "
                                   "decode");
    }
    return report;
}

}  // namespace vulnreach
