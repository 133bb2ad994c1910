#include "vulnreach/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace vulnreach {

using ordered_json = nlohmann::ordered_json;
using nlohmann::json;

namespace {

std::string format_elapsed(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", seconds);
    return buf;
}

ordered_json report_to_json(const ClassificationReport& r) {
    ordered_json obj;
    obj["client"] = r.client;
    obj["advisory"] = r.advisory_id;
    obj["verdict"] = std::string(verdict_name(r.verdict));
    if (r.version_affected) obj["version_affected"] = *r.version_affected;
    else obj["version_affected"] = nullptr;
    obj["imports_found"] = r.imports_found;
    ordered_json sites = ordered_json::array();
    for (const CallSite& c : r.call_sites) {
        ordered_json site;
        site["file"] = c.file;
        site["line"] = c.line;
        site["column"] = c.column;
        site["path"] = c.resolved_path.str();
        site["snippet"] = c.snippet;
        sites.push_back(std::move(site));
    }
    obj["call_sites"] = std::move(sites);
    obj["warnings"] = r.warnings;
    obj["parse_failures"] = r.parse_failures;
    obj["elapsed_seconds"] = r.elapsed_seconds;
    return obj;
}

}  // namespace

std::string render_text(const std::vector<ClassificationReport>& reports) {
    std::ostringstream out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const ClassificationReport& r = reports[i];
        if (i) out << "\n";
        out << "client: " << r.client << "\n";
        out << "advisory: " << r.advisory_id << "\n";
        out << "verdict: " << verdict_name(r.verdict);
        if (r.verdict == Verdict::NotListed)
            out << "  (outside the four-way taxonomy: package neither declared nor imported)";
        out << "\n";
        out << "version affected: "
            << (r.version_affected ? (*r.version_affected ? "yes" : "no") : "unknown") << "\n";
        out << "imports found: " << r.imports_found << "\n";
        if (r.call_sites.empty()) {
            out << "call sites: none\n";
        } else {
            out << "call sites (" << r.call_sites.size() << "):\n";
            for (const CallSite& c : r.call_sites)
                out << "  " << c.file << ":" << c.line << ":" << c.column << "  " << c.snippet
                    << "\n";
        }
        if (!r.warnings.empty()) {
            out << "warnings (" << r.warnings.size() << "):\n";
            for (const std::string& w : r.warnings) out << "  - " << w << "\n";
        }
        if (!r.parse_failures.empty()) {
            out << "parse failures (" << r.parse_failures.size() << "):\n";
            for (const std::string& p : r.parse_failures) out << "  - " << p << "\n";
        }
        out << "elapsed: " << format_elapsed(r.elapsed_seconds) << "s\n";
    }
    return out.str();
}

std::string render_json(const std::vector<ClassificationReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const ClassificationReport& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
}

std::vector<ClassificationReport> reports_from_json(std::string_view text) {
    json doc = json::parse(text);
    if (!doc.is_array()) throw std::runtime_error("report JSON must be an array");
    std::vector<ClassificationReport> out;
    for (const json& obj : doc) {
        ClassificationReport r;
        r.client = obj.at("client").get<std::string>();
        r.advisory_id = obj.at("advisory").get<std::string>();
        auto verdict = verdict_from_name(obj.at("verdict").get<std::string>());
        if (!verdict) throw std::runtime_error("unknown verdict in report JSON");
        r.verdict = *verdict;
        if (!obj.at("version_affected").is_null())
            r.version_affected = obj.at("version_affected").get<bool>();
        r.imports_found = obj.at("imports_found").get<int>();
        for (const json& site : obj.at("call_sites")) {
            CallSite c;
            c.file = site.at("file").get<std::string>();
            c.line = site.at("line").get<std::uint32_t>();
            c.column = site.at("column").get<std::uint32_t>();
            c.resolved_path = ExportPath::parse(site.at("path").get<std::string>());
            c.matched_symbol = c.resolved_path;
            c.snippet = site.at("snippet").get<std::string>();
            r.call_sites.push_back(std::move(c));
        }
        r.warnings = obj.at("warnings").get<std::vector<std::string>>();
        r.parse_failures = obj.at("parse_failures").get<std::vector<std::string>>();
        r.elapsed_seconds = obj.at("elapsed_seconds").get<double>();
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

ordered_json counts_to_json(const std::array<int, kVerdictCount>& counts) {
    ordered_json obj;
    for (int v = 0; v < kVerdictCount; ++v)
        obj[std::string(verdict_name(static_cast<Verdict>(v)))] = counts[v];
    return obj;
}

ordered_json confusion_to_json(const ConfusionMatrix& m) {
    ordered_json obj;
    obj["n"] = m.n;
    obj["tp"] = m.tp;
    obj["fp"] = m.fp;
    obj["tn"] = m.tn;
    obj["fn"] = m.fn;
    return obj;
}

ordered_json rates_to_json(const RateSet& r) {
    ordered_json obj;
    obj["accuracy"] = r.accuracy;
    obj["miss_rate"] = r.miss_rate;
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) obj[key] = *v;
        else obj[key] = nullptr;
    };
    put("tpr", r.tpr);
    put("fpr", r.fpr);
    put("tnr", r.tnr);
    put("fnr", r.fnr);
    return obj;
}

ordered_json summary_to_json(const CorpusSummary& summary,
                             const std::optional<ConfusionMatrix>& confusion,
                             const std::optional<RateSet>& rates) {
    ordered_json obj;
    obj["totals"] = counts_to_json(summary.totals);
    ordered_json per = ordered_json::array();
    for (const VulnerabilitySummary& s : summary.per_advisory) {
        ordered_json entry;
        entry["advisory"] = s.advisory_id;
        entry["counts"] = counts_to_json(s.counts);
        if (s.clean_percent) entry["clean_percent"] = *s.clean_percent;
        else entry["clean_percent"] = nullptr;
        per.push_back(std::move(entry));
    }
    obj["per_advisory"] = std::move(per);
    if (summary.median_clean_percent) obj["median_clean_percent"] = *summary.median_clean_percent;
    else obj["median_clean_percent"] = nullptr;
    if (confusion) obj["confusion"] = confusion_to_json(*confusion);
    else obj["confusion"] = nullptr;
    if (rates) obj["rates"] = rates_to_json(*rates);
    else obj["rates"] = nullptr;
    return obj;
}

std::string format_percent(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

}  // namespace

std::string render_summary_text(const CorpusSummary& summary,
                                const std::optional<ConfusionMatrix>& confusion,
                                const std::optional<RateSet>& rates) {
    std::ostringstream out;
    out << "== classification totals ==\n";
    for (int v = 0; v < kVerdictCount; ++v)
        out << "  " << verdict_name(static_cast<Verdict>(v)) << ": "
            << summary.totals[v] << "\n";
    out << "  Total: " << summary.total << "\n";

    if (!summary.per_advisory.empty()) {
        out << "\n== per-advisory breakdown ==\n";
        for (const VulnerabilitySummary& s : summary.per_advisory) {
            out << "  " << s.advisory_id << ":";
            for (int v = 0; v < kVerdictCount; ++v) {
                if (s.counts[v])
                    out << " " << verdict_name(static_cast<Verdict>(v)) << "=" << s.counts[v];
            }
            if (s.clean_percent)
                out << "  clean " << format_percent(*s.clean_percent) << "%";
            out << "\n";
        }
        out << "  median clean percent: "
            << (summary.median_clean_percent
                    ? format_percent(*summary.median_clean_percent) + "%"
                    : std::string("n/a"))
            << "\n";
    }

    if (confusion) {
        out << "\n== performance vs ground truth ==\n";
        out << "  n  " << confusion->n << "\n";
        out << "  TN " << confusion->tn << "\n";
        out << "  FN " << confusion->fn << "\n";
        out << "  FP " << confusion->fp << "\n";
        out << "  TP " << confusion->tp << "\n";
        if (rates) {
            out << "  Accuracy                 " << format_rate(rates->accuracy)
                << "  (TN+TP)/N\n";
            out << "  Miss-classification rate " << format_rate(rates->miss_rate)
                << "  (FP+FN)/N\n";
            auto line = [&](const char* name, const std::optional<double>& v,
                            const char* formula) {
                out << "  " << name << (v ? format_rate(*v) : std::string("n/a")) << "  "
                    << formula << "\n";
            };
            line("TP rate                  ", rates->tpr, "TP/(FN+TP)");
            line("FP rate                  ", rates->fpr, "FP/(TN+FP)");
            line("TN rate                  ", rates->tnr, "TN/(TN+FP)");
            line("FN rate                  ", rates->fnr, "FN/(FN+TP)");
        }
    }
    return out.str();
}

std::string render_summary_json(const CorpusSummary& summary,
                                const std::optional<ConfusionMatrix>& confusion,
                                const std::optional<RateSet>& rates) {
    return summary_to_json(summary, confusion, rates).dump(2) + "\n";
}

std::string render_batch_json(const std::vector<ClassificationReport>& reports,
                              const CorpusSummary& summary,
                              const std::optional<ConfusionMatrix>& confusion,
                              const std::optional<RateSet>& rates) {
    ordered_json obj;
    ordered_json arr = ordered_json::array();
    for (const ClassificationReport& r : reports) arr.push_back(report_to_json(r));
    obj["reports"] = std::move(arr);
    obj["summary"] = summary_to_json(summary, confusion, rates);
    return obj.dump(2) + "\n";
}

}  // namespace vulnreach
