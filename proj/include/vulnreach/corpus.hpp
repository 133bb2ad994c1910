#pragma once

/**
 * @file corpus.hpp
 * @brief Batch runs over a corpus manifest plus aggregate statistics:
 *        verdict totals, per-advisory clean/reached percentages, and
 *        confusion-matrix metrics against ground-truth labels.
 */

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vulnreach/advisory.hpp"
#include "vulnreach/classify.hpp"

namespace vulnreach {

class CorpusError : public std::runtime_error {
public:
    explicit CorpusError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CorpusEntry {
    std::string client_path;
    std::string advisory_id;
    std::optional<bool> label_reached;  // ground truth, when present
};

/// CSV with header "client_path,advisory_id,label";
/// label ∈ {reached, not-reached, <empty>}.
std::vector<CorpusEntry> parse_corpus_manifest(std::istream& in);
std::vector<CorpusEntry> load_corpus_manifest(const std::string& path);

/// One report per entry, in manifest order; failures become NoData reports
/// and never abort the batch. Throws CorpusError before running anything
/// when an entry names an unknown advisory id.
std::vector<ClassificationReport> run_corpus(const std::vector<CorpusEntry>& entries,
                                             const std::vector<Advisory>& store,
                                             unsigned jobs = 1);

struct VulnerabilitySummary {
    std::string advisory_id;
    std::array<int, kVerdictCount> counts{};  // indexed by Verdict
    std::optional<double> reached_percent;    // of Reached+Clean clients
    std::optional<double> clean_percent;      // complement
};

struct CorpusSummary {
    std::array<int, kVerdictCount> totals{};
    int total = 0;
    std::vector<VulnerabilitySummary> per_advisory;  // ordered by advisory id
    std::optional<double> median_clean_percent;      // mean of middle two when even
};

CorpusSummary summarize(const std::vector<ClassificationReport>& reports);

struct ConfusionMatrix {
    std::size_t n = 0;
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

/// Positive class is Reached. Unlabeled entries are excluded from n.
/// `labels` must align with `reports` index-wise.
ConfusionMatrix confusion(const std::vector<ClassificationReport>& reports,
                          const std::vector<std::optional<bool>>& labels);

struct RateSet {
    double accuracy = 0.0;
    double miss_rate = 0.0;
    std::optional<double> tpr, fpr, tnr, fnr;  // absent on zero denominators
};

/// Derived rates; full precision retained, display rounding is separate.
/// Throws CorpusError when n == 0.
RateSet metrics(const ConfusionMatrix& m);

/// Display form used in reports: rounded to 3 decimals, trailing zeros
/// trimmed ("0.833", "1", "0").
std::string format_rate(double value);

}  // namespace vulnreach
