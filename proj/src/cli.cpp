#include "vulnreach/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "vulnreach/advisory.hpp"
#include "vulnreach/classify.hpp"
#include "vulnreach/corpus.hpp"
#include "vulnreach/extract.hpp"
#include "vulnreach/project.hpp"
#include "vulnreach/report.hpp"

namespace vulnreach {

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string advisory_file;
    std::string format = "text";
    std::string output;
    unsigned jobs = 1;
    bool lenient_advisories = false;
    bool stable_output = false;
};

int emit(const std::string& payload, const CommonOpts& opts, std::ostream& out,
         std::ostream& err) {
    if (opts.output.empty()) {
        out << payload;
        return 0;
    }
    std::ofstream f(opts.output, std::ios::binary);
    if (!f) {
        err << "error: cannot write output file '" << opts.output << "'\n";
        return 1;
    }
    f << payload;
    return 0;
}

int exit_code_for(const std::vector<ClassificationReport>& reports) {
    if (reports.empty()) return 0;
    bool any_reached = false;
    bool all_nodata = true;
    for (const ClassificationReport& r : reports) {
        if (r.verdict == Verdict::Reached) any_reached = true;
        if (r.verdict != Verdict::NoData) all_nodata = false;
    }
    if (any_reached) return 2;
    if (all_nodata) return 3;
    return 0;
}

void apply_stable_output(std::vector<ClassificationReport>& reports, bool stable) {
    if (!stable) return;
    for (ClassificationReport& r : reports) r.elapsed_seconds = 0.0;
}

int cmd_analyze(const CommonOpts& opts, const std::string& project_root, std::ostream& out,
                std::ostream& err) {
    AdvisoryLoad store;
    try {
        store = load_advisories_file(opts.advisory_file, opts.lenient_advisories);
    } catch (const AdvisoryError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    for (const std::string& w : store.warnings) err << "warning: " << w << "\n";

    fs::path root(project_root);
    std::error_code ec;
    if (!fs::exists(root, ec) || ec || !fs::is_directory(root, ec) || ec) {
        err << "error: project root '" << project_root << "' is not a readable directory\n";
        return 1;
    }

    ManifestResult manifest = read_manifest(root);

    bool discovery_failed = false;
    std::string discovery_error;
    SourceSet sources;
    try {
        sources = discover_sources(root);
    } catch (const ProjectError& e) {
        discovery_failed = true;
        discovery_error = e.what();
    }

    std::vector<ClassificationReport> reports;
    for (const Advisory& advisory : store.advisories) {
        auto started = std::chrono::steady_clock::now();

        ProjectScan scan;
        if (discovery_failed) {
            scan.attempted = 1;  // nothing analyzable
            scan.warnings.push_back(discovery_error);
        } else {
            scan = scan_project(root, sources, advisory, opts.jobs);
        }

        bool declared = manifest.present() &&
                        manifest.manifest->specifier_for(advisory.package).has_value();
        if (!declared && scan.imports_found == 0 && scan.calls.empty())
            continue;  // advisory does not match this project

        std::optional<DependencyResolution> resolution;
        if (manifest.present())
            resolution = resolve_dependency(*manifest.manifest, advisory.package);

        ClassificationReport report =
            classify(project_root, advisory, manifest, resolution, scan);
        report.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        reports.push_back(std::move(report));
    }

    apply_stable_output(reports, opts.stable_output);

    std::string payload =
        opts.format == "json" ? render_json(reports) : render_text(reports);
    if (int rc = emit(payload, opts, out, err)) return rc;
    if (reports.empty())
        err << "note: no advisory matches a declared or imported package of this project\n";
    return exit_code_for(reports);
}

struct BatchData {
    std::vector<CorpusEntry> entries;
    std::vector<ClassificationReport> reports;
};

std::optional<BatchData> run_batch(const CommonOpts& opts, const std::string& manifest_path,
                                   std::ostream& err) {
    AdvisoryLoad store;
    std::vector<CorpusEntry> entries;
    try {
        store = load_advisories_file(opts.advisory_file, opts.lenient_advisories);
        entries = load_corpus_manifest(manifest_path);
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return std::nullopt;
    }
    for (const std::string& w : store.warnings) err << "warning: " << w << "\n";

    // client paths are relative to the manifest's directory
    fs::path base = fs::path(manifest_path).parent_path();
    for (CorpusEntry& e : entries) {
        fs::path p(e.client_path);
        if (p.is_relative()) e.client_path = (base / p).lexically_normal().generic_string();
    }

    BatchData data;
    try {
        data.reports = run_corpus(entries, store.advisories, opts.jobs);
    } catch (const CorpusError& e) {
        err << "error: " << e.what() << "\n";
        return std::nullopt;
    }
    data.entries = std::move(entries);
    return data;
}

int cmd_batch(const CommonOpts& opts, const std::string& manifest_path, std::ostream& out,
              std::ostream& err) {
    auto data = run_batch(opts, manifest_path, err);
    if (!data) return 1;
    apply_stable_output(data->reports, opts.stable_output);

    CorpusSummary summary = summarize(data->reports);

    std::vector<std::optional<bool>> labels;
    labels.reserve(data->entries.size());
    bool any_label = false;
    for (const CorpusEntry& e : data->entries) {
        labels.push_back(e.label_reached);
        any_label |= e.label_reached.has_value();
    }
    std::optional<ConfusionMatrix> cm;
    std::optional<RateSet> rates;
    if (any_label) {
        cm = confusion(data->reports, labels);
        if (cm->n > 0) rates = metrics(*cm);
    }

    std::string payload;
    if (opts.format == "json") {
        payload = render_batch_json(data->reports, summary, cm, rates);
    } else {
        payload = render_text(data->reports) + "\n" + render_summary_text(summary, cm, rates);
    }
    if (int rc = emit(payload, opts, out, err)) return rc;
    return exit_code_for(data->reports);
}

int cmd_metrics(const CommonOpts& opts, const std::string& manifest_path, std::ostream& out,
                std::ostream& err) {
    auto data = run_batch(opts, manifest_path, err);
    if (!data) return 1;
    apply_stable_output(data->reports, opts.stable_output);

    std::vector<std::optional<bool>> labels;
    labels.reserve(data->entries.size());
    std::size_t labeled = 0;
    for (const CorpusEntry& e : data->entries) {
        labels.push_back(e.label_reached);
        if (e.label_reached) labeled++;
    }
    if (labeled == 0) {
        err << "error: metrics requires ground-truth labels in the corpus manifest\n";
        return 1;
    }

    ConfusionMatrix cm = confusion(data->reports, labels);
    RateSet rates = metrics(cm);
    CorpusSummary summary = summarize(data->reports);

    std::string payload = opts.format == "json"
                              ? render_summary_json(summary, cm, rates)
                              : render_summary_text(summary, cm, rates);
    return emit(payload, opts, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"static reachability analysis of vulnerable npm dependency functions"};
    app.name("vulnreach");
    app.require_subcommand(1);

    CommonOpts opts;
    std::string project_root;
    std::string manifest_path;

    auto add_common = [&](CLI::App* cmd, bool project) {
        cmd->add_option("--advisories", opts.advisory_file, "advisory JSON file")->required();
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--output", opts.output, "write the report to a file");
        cmd->add_option("--jobs", opts.jobs, "parallelism (default 1)")
            ->check(CLI::Range(1u, 1024u));
        cmd->add_flag("--lenient-advisories", opts.lenient_advisories,
                      "ignore unknown advisory fields");
        cmd->add_flag("--stable-output", opts.stable_output,
                      "zero timing fields for byte-reproducible output");
        if (project)
            cmd->add_option("--project", project_root, "client project directory")->required();
        else
            cmd->add_option("--manifest", manifest_path, "corpus manifest CSV")->required();
    };

    CLI::App* analyze = app.add_subcommand("analyze", "analyze one project against advisories");
    add_common(analyze, true);
    CLI::App* batch = app.add_subcommand("batch", "run a corpus manifest and aggregate");
    add_common(batch, false);
    CLI::App* metrics_cmd =
        app.add_subcommand("metrics", "confusion matrix and rates against labels");
    add_common(metrics_cmd, false);

    std::vector<const char*> argv;
    argv.push_back("vulnreach");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream buffer;
        int rc = app.exit(e, buffer, buffer);
        (rc == 0 ? out : err) << buffer.str();
        return rc == 0 ? 0 : 1;
    }

    if (analyze->parsed()) return cmd_analyze(opts, project_root, out, err);
    if (batch->parsed()) return cmd_batch(opts, manifest_path, out, err);
    if (metrics_cmd->parsed()) return cmd_metrics(opts, manifest_path, out, err);
    err << "error: no command given\n";
    return 1;
}

}  // namespace vulnreach
