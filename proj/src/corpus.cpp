#include "vulnreach/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "vulnreach/extract.hpp"
#include "vulnreach/project.hpp"

namespace vulnreach {

namespace {

// Minimal CSV field splitting with double-quote support.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    i++;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\r') {
            // tolerate CRLF
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus_manifest(std::istream& in) {
    std::vector<CorpusEntry> entries;
    std::string line;
    bool first = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (first) {
            first = false;
            if (fields.size() < 2 || fields[0] != "client_path" || fields[1] != "advisory_id")
                throw CorpusError(
                    "corpus manifest must start with header 'client_path,advisory_id,label'");
            continue;
        }
        if (fields.size() < 2)
            throw CorpusError("corpus manifest line " + std::to_string(line_no) +
                              ": expected at least client_path and advisory_id");
        CorpusEntry e;
        e.client_path = fields[0];
        e.advisory_id = fields[1];
        std::string label = fields.size() > 2 ? fields[2] : "";
        if (label == "reached") e.label_reached = true;
        else if (label == "not-reached") e.label_reached = false;
        else if (!label.empty())
            throw CorpusError("corpus manifest line " + std::to_string(line_no) +
                              ": label must be 'reached', 'not-reached' or empty, got '" +
                              label + "'");
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<CorpusEntry> load_corpus_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot open corpus manifest '" + path + "'");
    return parse_corpus_manifest(in);
}

namespace {

ClassificationReport analyze_entry(const CorpusEntry& entry, const Advisory& advisory) {
    auto started = std::chrono::steady_clock::now();
    std::filesystem::path root(entry.client_path);

    ManifestResult manifest = read_manifest(root);
    std::optional<DependencyResolution> resolution;
    if (manifest.present()) resolution = resolve_dependency(*manifest.manifest, advisory.package);

    ProjectScan scan;
    std::error_code ec;
    if (std::filesystem::is_directory(root, ec) && !ec) {
        try {
            SourceSet sources = discover_sources(root);
            scan = scan_project(root, sources, advisory, 1);
        } catch (const ProjectError& e) {
            scan.attempted = 1;  // discovery failure: nothing analyzable
            scan.warnings.push_back(e.what());
        }
    } else {
        scan.warnings.push_back("client path does not exist: " + entry.client_path);
    }

    ClassificationReport report = classify(entry.client_path, advisory, manifest, resolution, scan);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace

std::vector<ClassificationReport> run_corpus(const std::vector<CorpusEntry>& entries,
                                             const std::vector<Advisory>& store,
                                             unsigned jobs) {
    std::map<std::string, const Advisory*> by_id;
    for (const Advisory& a : store) by_id[a.id] = &a;
    for (const CorpusEntry& e : entries) {
        if (!by_id.count(e.advisory_id))
            throw CorpusError("corpus manifest references unknown advisory id '" +
                              e.advisory_id + "'");
    }

    std::vector<ClassificationReport> reports(entries.size());
    auto work = [&](std::size_t i) {
        reports[i] = analyze_entry(entries[i], *by_id[entries[i].advisory_id]);
    };

    if (jobs <= 1 || entries.size() <= 1) {
        for (std::size_t i = 0; i < entries.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        unsigned n_threads = std::min<std::size_t>(jobs, entries.size());
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= entries.size()) break;
                    work(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return reports;
}

CorpusSummary summarize(const std::vector<ClassificationReport>& reports) {
    CorpusSummary out;
    std::map<std::string, VulnerabilitySummary> per;
    for (const ClassificationReport& r : reports) {
        out.totals[static_cast<int>(r.verdict)]++;
        out.total++;
        VulnerabilitySummary& s = per[r.advisory_id];
        s.advisory_id = r.advisory_id;
        s.counts[static_cast<int>(r.verdict)]++;
    }
    std::vector<double> clean_values;
    for (auto& [id, s] : per) {
        int reached = s.counts[static_cast<int>(Verdict::Reached)];
        int clean = s.counts[static_cast<int>(Verdict::Clean)];
        int denom = reached + clean;
        if (denom > 0) {
            s.reached_percent = 100.0 * reached / denom;
            s.clean_percent = 100.0 * clean / denom;
            clean_values.push_back(*s.clean_percent);
        }
        out.per_advisory.push_back(s);
    }
    if (!clean_values.empty()) {
        std::sort(clean_values.begin(), clean_values.end());
        std::size_t n = clean_values.size();
        out.median_clean_percent = n % 2 == 1
                                       ? clean_values[n / 2]
                                       : (clean_values[n / 2 - 1] + clean_values[n / 2]) / 2.0;
    }
    return out;
}

ConfusionMatrix confusion(const std::vector<ClassificationReport>& reports,
                          const std::vector<std::optional<bool>>& labels) {
    if (labels.size() != reports.size())
        throw CorpusError("labels and reports are misaligned: " + std::to_string(labels.size()) +
                          " labels for " + std::to_string(reports.size()) + " reports");
    ConfusionMatrix m;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!labels[i]) continue;
        bool predicted = reports[i].verdict == Verdict::Reached;
        bool actual = *labels[i];
        m.n++;
        if (predicted && actual) m.tp++;
        else if (predicted && !actual) m.fp++;
        else if (!predicted && actual) m.fn++;
        else m.tn++;
    }
    return m;
}

RateSet metrics(const ConfusionMatrix& m) {
    if (m.n == 0) throw CorpusError("metrics need at least one labeled entry (n = 0)");
    RateSet r;
    r.accuracy = static_cast<double>(m.tn + m.tp) / static_cast<double>(m.n);
    r.miss_rate = static_cast<double>(m.fp + m.fn) / static_cast<double>(m.n);
    if (m.fn + m.tp > 0) {
        r.tpr = static_cast<double>(m.tp) / static_cast<double>(m.fn + m.tp);
        r.fnr = static_cast<double>(m.fn) / static_cast<double>(m.fn + m.tp);
    }
    if (m.tn + m.fp > 0) {
        r.fpr = static_cast<double>(m.fp) / static_cast<double>(m.tn + m.fp);
        r.tnr = static_cast<double>(m.tn) / static_cast<double>(m.tn + m.fp);
    }
    return r;
}

std::string format_rate(double value) {
    double rounded = std::round(value * 1000.0) / 1000.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", rounded);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s.empty() ? "0" : s;
}

}  // namespace vulnreach
