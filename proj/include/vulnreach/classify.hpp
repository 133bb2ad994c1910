#pragma once

/**
 * @file classify.hpp
 * @brief Four-way client classification plus the NotListed extension.
 *
 * Decision order: NoData conditions first (missing/unreadable manifest, or
 * a declared package whose discovered sources all failed to parse or
 * decode); then NotListed (package neither declared nor imported); then
 * Reached (any call site); then Clean (imports but no calls); else
 * ListedOnly. Version exposure is an independent axis and never changes
 * the verdict.
 */

#include <optional>
#include <string>
#include <vector>

#include "vulnreach/advisory.hpp"
#include "vulnreach/extract.hpp"
#include "vulnreach/project.hpp"

namespace vulnreach {

enum class Verdict : std::uint8_t { Reached, Clean, ListedOnly, NoData, NotListed };

constexpr int kVerdictCount = 5;

std::string_view verdict_name(Verdict v);
std::optional<Verdict> verdict_from_name(std::string_view name);

struct ClassificationReport {
    std::string client;
    std::string advisory_id;
    Verdict verdict = Verdict::NoData;
    std::optional<bool> version_affected;
    std::vector<CallSite> call_sites;
    int imports_found = 0;
    std::vector<std::string> warnings;
    std::vector<std::string> parse_failures;
    double elapsed_seconds = 0.0;
};

/// The pure decision core: five observations in, one verdict out.
Verdict decide_verdict(bool manifest_present, bool declared, bool imports_positive,
                       bool calls_positive, bool all_sources_failed);

/// installed version ⟹ membership in the affected range; otherwise a
/// declared semver range ⟹ range intersection; otherwise absent.
std::optional<bool> exposure(const DependencyResolution& resolution, const Advisory& advisory);

/// Assembles the full report for one (client, advisory) run.
ClassificationReport classify(const std::string& client, const Advisory& advisory,
                              const ManifestResult& manifest,
                              const std::optional<DependencyResolution>& resolution,
                              const ProjectScan& scan);

}  // namespace vulnreach
