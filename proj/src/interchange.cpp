#include "couplaw/error.hpp"
#include "couplaw/ingest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace couplaw {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j) {
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

ordered_json class_record(const ClassSummary& c) {
    ordered_json j;
    j["qualified_name"] = c.qualified_name;
    j["kind"] = c.kind == TypeKind::Interface ? "interface" : "class";
    j["superclass"] = c.superclass ? ordered_json(*c.superclass) : ordered_json(nullptr);
    j["interfaces"] = c.interfaces;
    j["fields"] = ordered_json::array();
    for (const auto& f : c.fields) j["fields"].push_back(ordered_json{{"name", f.name}, {"type", f.type}});
    j["constructors"] = ordered_json::array();
    for (const auto& k : c.constructors) j["constructors"].push_back(ordered_json{{"param_types", k.param_types}});
    j["methods"] = ordered_json::array();
    for (const auto& m : c.methods) {
        j["methods"].push_back(
            ordered_json{{"name", m.name}, {"return_type", m.return_type}, {"param_types", m.param_types}});
    }
    return j;
}

// Strict field access for one record; every complaint carries the line.
class Record {
public:
    Record(const json& j, std::size_t line, std::string what) : j_(j), line_(line), what_(std::move(what)) {
        if (!j_.is_object()) fail(what_ + " must be an object");
    }

    void allow_only(std::initializer_list<std::string_view> keys) const {
        for (const auto& [k, v] : j_.items()) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail("unknown field '" + k + "' in " + what_);
        }
        for (auto k : keys) {
            if (!j_.contains(std::string(k))) fail("missing field '" + std::string(k) + "' in " + what_);
        }
    }

    const json& at(std::string_view key) const { return j_.at(std::string(key)); }

    std::string name(std::string_view key) const {
        const json& v = at(key);
        if (!v.is_string() || v.get_ref<const std::string&>().empty())
            fail("field '" + std::string(key) + "' in " + what_ + " must be a non-empty string");
        return v.get<std::string>();
    }

    std::vector<std::string> names(std::string_view key) const { return names_of(at(key), key); }

    std::vector<std::string> names_of(const json& v, std::string_view key) const {
        if (!v.is_array()) fail("field '" + std::string(key) + "' in " + what_ + " must be an array");
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string() || e.get_ref<const std::string&>().empty())
                fail("field '" + std::string(key) + "' in " + what_ + " must hold non-empty strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    std::vector<Record> records(std::string_view key, const std::string& what) const {
        const json& v = at(key);
        if (!v.is_array()) fail("field '" + std::string(key) + "' in " + what_ + " must be an array");
        std::vector<Record> out;
        for (const auto& e : v) out.emplace_back(e, line_, what);
        return out;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw FormatError(line_, msg); }

private:
    const json& j_;
    std::size_t line_;
    std::string what_;
};

ClassSummary parse_class(const Record& r) {
    r.allow_only({"qualified_name", "kind", "superclass", "interfaces", "fields", "constructors", "methods"});
    ClassSummary c;
    c.qualified_name = r.name("qualified_name");
    const json& kind = r.at("kind");
    if (kind == "class") c.kind = TypeKind::Class;
    else if (kind == "interface") c.kind = TypeKind::Interface;
    else r.fail("field 'kind' must be \"class\" or \"interface\"");
    if (!r.at("superclass").is_null()) c.superclass = r.name("superclass");
    c.interfaces = r.names("interfaces");
    for (const auto& f : r.records("fields", "field")) {
        f.allow_only({"name", "type"});
        c.fields.push_back({f.name("name"), f.name("type")});
    }
    for (const auto& k : r.records("constructors", "constructor")) {
        k.allow_only({"param_types"});
        c.constructors.push_back({k.names("param_types")});
    }
    for (const auto& m : r.records("methods", "method")) {
        m.allow_only({"name", "return_type", "param_types"});
        c.methods.push_back({m.name("name"), m.name("return_type"), m.names("param_types")});
    }
    if (c.kind == TypeKind::Interface && (c.superclass || !c.constructors.empty()))
        r.fail("interface " + c.qualified_name + " declares a superclass or constructors");
    if (!std::is_sorted(c.interfaces.begin(), c.interfaces.end()))
        r.fail("interfaces of " + c.qualified_name + " are not sorted");
    return c;
}

}  // namespace

void write_summaries(const Corpus& corpus, std::ostream& out) {
    out << dump(ordered_json{{"format", kSummaryFormat}}) << '\n';
    for (const auto& [name, cls] : corpus.classes()) out << dump(class_record(cls)) << '\n';
    for (const auto& [key, target] : corpus.resolution()) {
        out << dump(ordered_json{{"from", key.first}, {"name", key.second}, {"to", target}}) << '\n';
    }
}

Corpus read_summaries(std::istream& in) {
    std::map<std::string, ClassSummary> classes;
    ResolutionTable resolution;
    std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> resolution_lines;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw FormatError(lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!header) {
            Record r(j, lineno, "header");
            r.allow_only({"format"});
            if (r.at("format") != kSummaryFormat)
                r.fail("unsupported format " + r.at("format").dump() + ", expected " + std::string(kSummaryFormat));
            header = true;
            continue;
        }
        Record r(j, lineno, "record");
        if (j.contains("qualified_name")) {
            ClassSummary c = parse_class(r);
            std::string name = c.qualified_name;
            if (!classes.emplace(name, std::move(c)).second) r.fail("duplicate class " + name);
        } else if (j.contains("from")) {
            r.allow_only({"from", "name", "to"});
            std::pair key{r.name("from"), r.name("name")};
            if (!resolution.emplace(key, r.name("to")).second)
                r.fail("duplicate resolution entry for " + key.first + " / " + key.second);
            resolution_lines.push_back({lineno, key});
        } else {
            r.fail("record is neither a class nor a resolution entry");
        }
    }
    if (!header) throw FormatError(lineno, "missing couplaw-summary header");

    for (const auto& [at, key] : resolution_lines) {
        const auto& target = resolution.at(key);
        if (!classes.contains(key.first)) throw FormatError(at, "resolution entry from unknown class " + key.first);
        if (!classes.contains(target)) throw FormatError(at, "resolution target " + target + " is not in the corpus");
    }
    return Corpus(std::move(classes), std::move(resolution));
}

void save_summaries(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    write_summaries(corpus, out);
    if (!out) throw Error("write failed: " + path.string());
}

Corpus load_summaries(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    return read_summaries(in);
}

}  // namespace couplaw
