#include "vulnreach/advisory.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vulnreach {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string ExportPath::str() const {
    if (segments.empty()) return ".";
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += ".";
        out += segments[i];
    }
    return out;
}

ExportPath ExportPath::parse(std::string_view surface) {
    ExportPath path;
    if (surface == ".") return path;  // root export
    if (surface.empty()) throw AdvisoryError("symbol must not be empty");
    std::size_t start = 0;
    while (true) {
        std::size_t dot = surface.find('.', start);
        std::string_view seg = surface.substr(start, dot == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : dot - start);
        if (seg.empty())
            throw AdvisoryError("symbol '" + std::string(surface) + "' has an empty segment");
        path.segments.emplace_back(seg);
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return path;
}

std::string lowercase_package(std::string_view name) {
    std::string out(name);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

namespace {

const std::set<std::string> kKnownFields = {"id", "package", "affected", "symbols", "fixed"};

Advisory parse_advisory(const json& doc, bool lenient, std::vector<std::string>& warnings) {
    if (!doc.is_object()) throw AdvisoryError("advisory entry must be a JSON object");

    auto require_string = [&](const char* field) -> std::string {
        if (!doc.contains(field))
            throw AdvisoryError("advisory " +
                                (doc.contains("id") && doc["id"].is_string()
                                     ? std::string(doc["id"])
                                     : std::string("<unknown>")) +
                                ": missing field '" + field + "'");
        if (!doc[field].is_string())
            throw AdvisoryError("advisory field '" + std::string(field) + "' must be a string");
        return doc[field].get<std::string>();
    };

    Advisory adv;
    adv.id = require_string("id");
    if (adv.id.empty()) throw AdvisoryError("advisory id must not be empty");

    if (!lenient) {
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            if (!kKnownFields.count(it.key()))
                throw AdvisoryError("advisory " + adv.id + ": unknown field '" + it.key() +
                                    "' (use --lenient-advisories to ignore)");
        }
    }

    std::string raw_package = require_string("package");
    if (raw_package.empty())
        throw AdvisoryError("advisory " + adv.id + ": field 'package' must not be empty");
    adv.package = lowercase_package(raw_package);
    if (adv.package != raw_package)
        warnings.push_back("advisory " + adv.id + ": package name '" + raw_package +
                           "' lowercased to '" + adv.package + "'");

    adv.affected_text = require_string("affected");
    try {
        adv.affected = parse_range(adv.affected_text);
    } catch (const SemverError& e) {
        throw AdvisoryError("advisory " + adv.id + ": field 'affected': " + e.what());
    }

    if (!doc.contains("symbols") || !doc["symbols"].is_array())
        throw AdvisoryError("advisory " + adv.id + ": field 'symbols' must be an array");
    for (const json& s : doc["symbols"]) {
        if (!s.is_string())
            throw AdvisoryError("advisory " + adv.id + ": symbols must be strings");
        ExportPath path;
        try {
            path = ExportPath::parse(s.get<std::string>());
        } catch (const AdvisoryError& e) {
            throw AdvisoryError("advisory " + adv.id + ": field 'symbols': " + e.what());
        }
        if (std::find(adv.symbols.begin(), adv.symbols.end(), path) == adv.symbols.end())
            adv.symbols.push_back(std::move(path));
    }
    if (adv.symbols.empty())
        throw AdvisoryError("advisory " + adv.id + ": field 'symbols' must not be empty");

    if (doc.contains("fixed") && !doc["fixed"].is_null()) {
        if (!doc["fixed"].is_string())
            throw AdvisoryError("advisory " + adv.id + ": field 'fixed' must be a string");
        try {
            adv.fixed = parse_version(doc["fixed"].get<std::string>());
        } catch (const SemverError& e) {
            throw AdvisoryError("advisory " + adv.id + ": field 'fixed': " + e.what());
        }
        if (satisfies(*adv.fixed, adv.affected))
            throw AdvisoryError("advisory " + adv.id + ": field 'fixed': version " +
                                adv.fixed->str() + " still satisfies the affected range '" +
                                adv.affected_text + "'");
    }
    return adv;
}

}  // namespace

AdvisoryLoad load_advisories(std::string_view json_text, bool lenient) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw AdvisoryError(std::string("advisory file is not valid JSON: ") + e.what());
    }

    AdvisoryLoad out;
    auto consume = [&](const json& entry) {
        Advisory adv = parse_advisory(entry, lenient, out.warnings);
        for (const Advisory& existing : out.advisories)
            if (existing.id == adv.id)
                throw AdvisoryError("duplicate advisory id '" + adv.id + "'");
        out.advisories.push_back(std::move(adv));
    };

    if (doc.is_array()) {
        for (const json& entry : doc) consume(entry);
    } else {
        consume(doc);
    }
    return out;
}

AdvisoryLoad load_advisories_file(const std::string& path, bool lenient) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AdvisoryError("cannot open advisory file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_advisories(buf.str(), lenient);
}

std::string serialize_advisories(const std::vector<Advisory>& advisories) {
    ordered_json arr = ordered_json::array();
    for (const Advisory& a : advisories) {
        ordered_json obj;
        obj["id"] = a.id;
        obj["package"] = a.package;
        obj["affected"] = a.affected_text;
        ordered_json symbols = ordered_json::array();
        for (const ExportPath& p : a.symbols) symbols.push_back(p.str());
        obj["symbols"] = std::move(symbols);
        if (a.fixed) obj["fixed"] = a.fixed->str();
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::vector<const Advisory*> find_advisories_for(std::string_view package,
                                                 const std::vector<Advisory>& store) {
    std::string query = lowercase_package(package);
    std::vector<const Advisory*> out;
    for (const Advisory& a : store)
        if (a.package == query) out.push_back(&a);
    std::sort(out.begin(), out.end(),
              [](const Advisory* a, const Advisory* b) { return a->id < b->id; });
    return out;
}

}  // namespace vulnreach
