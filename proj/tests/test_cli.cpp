#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support/temp_dir.h"
#include "vulnreach/cli.hpp"
#include "vulnreach/report.hpp"

using namespace vulnreach;
using testutil::TempDir;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kAdvisory =
    R"([{"id": "A1", "package": "lodash", "affected": "<4.17.5",
        "symbols": ["merge"], "fixed": "4.17.5"}])";

void write_reached(const TempDir& dir) {
    dir.write("package.json", R"({"dependencies": {"lodash": "^4.0.0"}})");
    dir.write("node_modules/lodash/package.json", R"({"version": "4.10.0"})");
    dir.write("index.js", "const _ = require('lodash');\n_.merge(a, b);\n");
}

void write_clean(const TempDir& dir) {
    dir.write("package.json", R"({"dependencies": {"lodash": "^4.0.0"}})");
    dir.write("index.js", "const _ = require('lodash');\n_.head(x);\n");
}

}  // namespace

TEST_CASE("analyze: clean project exits 0 with a Clean verdict") {
    TempDir dir, store;
    write_clean(dir);
    auto advisories = store.write("advisories.json", kAdvisory);

    CliResult r = run({"analyze", "--project", dir.path().string(), "--advisories",
                       advisories.string(), "--format", "json", "--stable-output"});
    CHECK(r.code == 0);
    auto reports = reports_from_json(r.out);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].verdict == Verdict::Clean);
}

TEST_CASE("analyze: reached project exits 2 and prints evidence lines") {
    TempDir dir, store;
    write_reached(dir);
    auto advisories = store.write("advisories.json", kAdvisory);

    CliResult r = run({"analyze", "--project", dir.path().string(), "--advisories",
                       advisories.string()});
    CHECK(r.code == 2);
    CHECK(r.out.find("verdict: Reached") != std::string::npos);
    CHECK(r.out.find("index.js:2:1  _.merge") != std::string::npos);
    CHECK(r.out.find("version affected: yes") != std::string::npos);
}

TEST_CASE("analyze: missing advisory file exits 1") {
    TempDir dir;
    write_clean(dir);
    CliResult r = run({"analyze", "--project", dir.path().string(), "--advisories",
                       "/no/such/file.json"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("analyze: missing project root exits 1") {
    TempDir store;
    auto advisories = store.write("advisories.json", kAdvisory);
    CliResult r = run({"analyze", "--project", "/no/such/project", "--advisories",
                       advisories.string()});
    CHECK(r.code == 1);
}

TEST_CASE("analyze: project without a manifest but with imports exits 3 (all NoData)") {
    TempDir dir, store;
    dir.write("index.js", "const _ = require('lodash');\n_.merge(a, b);\n");
    auto advisories = store.write("advisories.json", kAdvisory);

    CliResult r = run({"analyze", "--project", dir.path().string(), "--advisories",
                       advisories.string(), "--format", "json", "--stable-output"});
    CHECK(r.code == 3);
    auto reports = reports_from_json(r.out);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].verdict == Verdict::NoData);
}

TEST_CASE("analyze: no matching advisory yields an empty report list and exit 0") {
    TempDir dir, store;
    dir.write("package.json", R"({"dependencies": {"express": "*"}})");
    dir.write("index.js", "const e = require('express');\ne();\n");
    auto advisories = store.write("advisories.json", kAdvisory);

    CliResult r = run({"analyze", "--project", dir.path().string(), "--advisories",
                       advisories.string(), "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out == "[]\n");
    CHECK(r.err.find("no advisory matches") != std::string::npos);
}

TEST_CASE("analyze: strict advisory schema honors --lenient-advisories") {
    TempDir dir, store;
    write_clean(dir);
    auto advisories = store.write(
        "advisories.json",
        R"([{"id": "A1", "package": "lodash", "affected": "*", "symbols": ["merge"], "cvss": 9.8}])");

    CliResult strict = run({"analyze", "--project", dir.path().string(), "--advisories",
                            advisories.string()});
    CHECK(strict.code == 1);
    CHECK(strict.err.find("cvss") != std::string::npos);

    CliResult lenient = run({"analyze", "--project", dir.path().string(), "--advisories",
                             advisories.string(), "--lenient-advisories"});
    CHECK(lenient.code == 0);
}

TEST_CASE("analyze JSON round-trips through reports_from_json") {
    TempDir dir, store;
    write_reached(dir);
    dir.write("broken.js", "not valid js %%%");
    auto advisories = store.write("advisories.json", kAdvisory);

    CliResult r = run({"analyze", "--project", dir.path().string(), "--advisories",
                       advisories.string(), "--format", "json"});
    auto reports = reports_from_json(r.out);
    REQUIRE(reports.size() == 1);
    const ClassificationReport& rep = reports[0];
    CHECK(rep.client == dir.path().string());
    CHECK(rep.advisory_id == "A1");
    CHECK(rep.verdict == Verdict::Reached);
    CHECK(rep.version_affected == true);
    CHECK(rep.imports_found == 1);
    REQUIRE(rep.call_sites.size() == 1);
    CHECK(rep.call_sites[0].file == "index.js");
    CHECK(rep.call_sites[0].line == 2);
    CHECK(rep.call_sites[0].column == 1);
    CHECK(rep.call_sites[0].snippet == "_.merge");
    REQUIRE(rep.parse_failures.size() == 1);
    CHECK(rep.parse_failures[0] == "broken.js");
    CHECK(rep.elapsed_seconds >= 0.0);

    // rendering the parsed reports again reproduces the bytes
    CHECK(render_json(reports) == r.out);
}

TEST_CASE("render_text snapshots") {
    ClassificationReport rep;
    rep.client = "demo";
    rep.advisory_id = "A1";
    rep.verdict = Verdict::Reached;
    rep.version_affected = true;
    rep.imports_found = 2;
    CallSite site;
    site.file = "src/a.js";
    site.line = 10;
    site.column = 5;
    site.resolved_path = ExportPath::parse("merge");
    site.matched_symbol = site.resolved_path;
    site.snippet = "_.merge";
    rep.call_sites.push_back(site);
    rep.elapsed_seconds = 0.25;

    std::string text = render_text({rep});
    CHECK(text ==
          "client: demo\n"
          "advisory: A1\n"
          "verdict: Reached\n"
          "version affected: yes\n"
          "imports found: 2\n"
          "call sites (1):\n"
          "  src/a.js:10:5  _.merge\n"
          "elapsed: 0.250s\n");

    ClassificationReport nodata;
    nodata.client = "x";
    nodata.advisory_id = "A1";
    nodata.verdict = Verdict::NoData;
    nodata.warnings = {"no data: no package.json in x"};
    std::string nd = render_text({nodata});
    CHECK(nd.find("no data: no package.json") != std::string::npos);
    CHECK(nd.find("version affected: unknown") != std::string::npos);

    CHECK(render_json({}) == "[]\n");
}

TEST_CASE("batch: runs a corpus manifest and aggregates") {
    TempDir store;
    TempDir reached_dir, clean_dir;
    write_reached(reached_dir);
    write_clean(clean_dir);

    auto advisories = store.write("advisories.json", kAdvisory);
    auto manifest = store.write("corpus.csv",
                                "client_path,advisory_id,label\n" + reached_dir.path().string() +
                                    ",A1,reached\n" + clean_dir.path().string() +
                                    ",A1,not-reached\n");

    CliResult r = run({"batch", "--manifest", manifest.string(), "--advisories",
                       advisories.string(), "--format", "json", "--stable-output"});
    CHECK(r.code == 2);  // one Reached verdict
    CHECK(r.out.find("\"reports\"") != std::string::npos);
    CHECK(r.out.find("\"summary\"") != std::string::npos);
    CHECK(r.out.find("\"confusion\"") != std::string::npos);
    CHECK(r.out.find("\"median_clean_percent\": 50.0") != std::string::npos);

    CliResult text = run({"batch", "--manifest", manifest.string(), "--advisories",
                          advisories.string(), "--stable-output"});
    CHECK(text.out.find("classification totals") != std::string::npos);
    CHECK(text.out.find("Reached: 1") != std::string::npos);
    CHECK(text.out.find("Clean: 1") != std::string::npos);
}

TEST_CASE("batch: unknown advisory id in the manifest is an operational error") {
    TempDir store;
    auto advisories = store.write("advisories.json", kAdvisory);
    auto manifest = store.write("corpus.csv",
                                "client_path,advisory_id,label\nsomewhere,GHOST,\n");
    CliResult r = run({"batch", "--manifest", manifest.string(), "--advisories",
                       advisories.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("GHOST") != std::string::npos);
}

TEST_CASE("batch: relative client paths resolve against the manifest directory") {
    TempDir base, store;
    base.write("client/package.json", R"({"dependencies": {"lodash": "*"}})");
    base.write("client/i.js", "const _ = require('lodash');\n_.merge(1, 2);\n");
    auto manifest = base.write("corpus.csv", "client_path,advisory_id,label\nclient,A1,\n");
    auto advisories = store.write("advisories.json", kAdvisory);

    CliResult r = run({"batch", "--manifest", manifest.string(), "--advisories",
                       advisories.string(), "--format", "json", "--stable-output"});
    CHECK(r.code == 2);
    CHECK(r.out.find("\"verdict\": \"Reached\"") != std::string::npos);
}

TEST_CASE("metrics: requires labels and reports the confusion table") {
    TempDir reached_dir, clean_dir, store;
    write_reached(reached_dir);
    write_clean(clean_dir);
    auto advisories = store.write("advisories.json", kAdvisory);

    auto labeled = store.write("labeled.csv",
                               "client_path,advisory_id,label\n" + reached_dir.path().string() +
                                   ",A1,reached\n" + clean_dir.path().string() +
                                   ",A1,not-reached\n");
    CliResult r = run({"metrics", "--manifest", labeled.string(), "--advisories",
                       advisories.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("TP 1") != std::string::npos);
    CHECK(r.out.find("TN 1") != std::string::npos);
    CHECK(r.out.find("Accuracy                 1") != std::string::npos);

    auto unlabeled = store.write("unlabeled.csv",
                                 "client_path,advisory_id,label\n" +
                                     reached_dir.path().string() + ",A1,\n");
    CliResult bad = run({"metrics", "--manifest", unlabeled.string(), "--advisories",
                         advisories.string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("labels") != std::string::npos);
}

TEST_CASE("--output writes the payload to a file") {
    TempDir dir, store;
    write_clean(dir);
    auto advisories = store.write("advisories.json", kAdvisory);
    auto out_path = store.path() / "report.json";

    CliResult r = run({"analyze", "--project", dir.path().string(), "--advisories",
                       advisories.string(), "--format", "json", "--stable-output", "--output",
                       out_path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto reports = reports_from_json(buf.str());
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].verdict == Verdict::Clean);
}

TEST_CASE("bad CLI usage exits 1 with a diagnostic") {
    CliResult missing = run({"analyze"});
    CHECK(missing.code == 1);
    CliResult unknown = run({"frobnicate"});
    CHECK(unknown.code == 1);
    CliResult badfmt = run({"analyze", "--project", "x", "--advisories", "y", "--format", "xml"});
    CHECK(badfmt.code == 1);
}
