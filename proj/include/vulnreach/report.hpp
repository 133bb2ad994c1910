#pragma once

/**
 * @file report.hpp
 * @brief Rendering of classification reports and corpus summaries.
 *
 * Output is a pure function of its inputs: identical reports render to
 * identical bytes.
 */

#include <optional>
#include <string>
#include <vector>

#include "vulnreach/classify.hpp"
#include "vulnreach/corpus.hpp"

namespace vulnreach {

std::string render_text(const std::vector<ClassificationReport>& reports);

/// JSON array of report objects with keys: client, advisory, verdict,
/// version_affected, imports_found, call_sites (file, line, column, path,
/// snippet), warnings, parse_failures, elapsed_seconds.
std::string render_json(const std::vector<ClassificationReport>& reports);

/// Inverse of render_json; throws std::runtime_error on malformed input.
std::vector<ClassificationReport> reports_from_json(std::string_view text);

std::string render_summary_text(const CorpusSummary& summary,
                                const std::optional<ConfusionMatrix>& confusion,
                                const std::optional<RateSet>& rates);

/// Keys: totals, per_advisory (advisory, counts, clean_percent),
/// median_clean_percent, confusion|null, rates|null.
std::string render_summary_json(const CorpusSummary& summary,
                                const std::optional<ConfusionMatrix>& confusion,
                                const std::optional<RateSet>& rates);

/// {"reports": [...], "summary": {...}} for batch output.
std::string render_batch_json(const std::vector<ClassificationReport>& reports,
                              const CorpusSummary& summary,
                              const std::optional<ConfusionMatrix>& confusion,
                              const std::optional<RateSet>& rates);

}  // namespace vulnreach
