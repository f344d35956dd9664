#include "couplaw/error.hpp"
#include "couplaw/ingest.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace couplaw {

std::string ClassSummary::simple_name() const {
    auto dot = qualified_name.rfind('.');
    return dot == std::string::npos ? qualified_name : qualified_name.substr(dot + 1);
}

std::string ClassSummary::package_name() const {
    auto dot = qualified_name.rfind('.');
    return dot == std::string::npos ? std::string{} : qualified_name.substr(0, dot);
}

bool is_primitive(std::string_view t) {
    return t == "int" || t == "boolean" || t == "char" || t == "byte" || t == "short" ||
           t == "long" || t == "float" || t == "double" || t == "void";
}

std::vector<std::string> referenced_types(const ClassSummary& c) {
    std::vector<std::string> out;
    std::set<std::string_view> seen;
    auto add = [&](const std::string& t) {
        if (!is_primitive(t) && seen.insert(t).second) out.push_back(t);
    };
    if (c.superclass) add(*c.superclass);
    for (const auto& i : c.interfaces) add(i);
    for (const auto& f : c.fields) add(f.type);
    for (const auto& k : c.constructors)
        for (const auto& p : k.param_types) add(p);
    for (const auto& m : c.methods) {
        add(m.return_type);
        for (const auto& p : m.param_types) add(p);
    }
    return out;
}

Corpus::Corpus(std::map<std::string, ClassSummary> classes, ResolutionTable resolution)
    : classes_(std::move(classes)), resolution_(std::move(resolution)) {
    for (const auto& [name, cls] : classes_) {
        if (name != cls.qualified_name) throw InvalidParams("class keyed under wrong name: " + name);
    }
    for (const auto& [key, target] : resolution_) {
        if (!classes_.contains(key.first))
            throw InvalidParams("resolution entry from unknown class " + key.first);
        if (!classes_.contains(target))
            throw InvalidParams("resolution target " + target + " is not in the corpus");
    }
}

namespace {

std::string head_segment(const std::string& name) {
    auto dot = name.find('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

std::string last_segment(const std::string& name) {
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
}

std::optional<std::string> resolve_name(const std::string& name, const SourceUnit& unit,
                                        const std::map<std::string, ClassSummary>& classes) {
    auto hit = [&](const std::string& candidate) -> std::optional<std::string> {
        if (classes.contains(candidate)) return candidate;
        return std::nullopt;
    };
    const std::string head = head_segment(name);
    const std::string rest = name.substr(head.size());

    for (const auto& imp : unit.imports) {
        if (!imp.ends_with(".*") && last_segment(imp) == head)
            if (auto r = hit(imp + rest)) return r;
    }
    if (auto r = hit(unit.package.empty() ? name : unit.package + "." + name)) return r;
    for (const auto& imp : unit.imports) {
        if (imp.ends_with(".*"))
            if (auto r = hit(imp.substr(0, imp.size() - 1) + name)) return r;
    }
    if (auto r = hit("java.lang." + name)) return r;
    return hit(name);
}

}  // namespace

Corpus Corpus::from_units(std::vector<SourceUnit> units) {
    std::map<std::string, ClassSummary> classes;
    std::map<std::string, const SourceUnit*> owner;

    std::sort(units.begin(), units.end(),
              [](const SourceUnit& a, const SourceUnit& b) { return a.file < b.file; });
    std::set<std::string> duplicates;
    for (const auto& unit : units) {
        for (const auto& cls : unit.classes) {
            if (!classes.emplace(cls.qualified_name, cls).second) duplicates.insert(cls.qualified_name);
            owner.emplace(cls.qualified_name, &unit);
        }
    }
    if (!duplicates.empty()) throw DuplicateClass(*duplicates.begin());

    ResolutionTable resolution;
    for (const auto& [name, cls] : classes) {
        const SourceUnit& unit = *owner.at(name);
        for (const auto& ref : referenced_types(cls)) {
            if (auto target = resolve_name(ref, unit, classes)) resolution.emplace(std::pair{name, ref}, *target);
        }
    }
    return Corpus(std::move(classes), std::move(resolution));
}

const ClassSummary* Corpus::find(const std::string& qualified_name) const {
    auto it = classes_.find(qualified_name);
    return it == classes_.end() ? nullptr : &it->second;
}

std::optional<std::string> Corpus::resolve(const std::string& from, const std::string& name) const {
    auto it = resolution_.find({from, name});
    if (it == resolution_.end()) return std::nullopt;
    return it->second;
}

std::vector<UnresolvedReference> Corpus::unresolved() const {
    std::vector<UnresolvedReference> out;
    for (const auto& [name, cls] : classes_) {
        for (const auto& ref : referenced_types(cls)) {
            if (!resolution_.contains({name, ref})) out.push_back({name, ref});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("COUPLAW_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct FileOutcome {
    std::optional<SourceUnit> unit;
    std::optional<Diagnostic> error;
};

FileOutcome parse_file(const std::filesystem::path& path, const std::string& display) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {std::nullopt, Diagnostic{display, 0, "cannot open file"}};
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return {parse_unit(buf.str(), display), std::nullopt};
    } catch (const MalformedSource& e) {
        return {std::nullopt, Diagnostic{display, e.line(), e.what()}};
    }
}

}  // namespace

ScanResult scan_tree(const std::filesystem::path& root, const ScanOptions& options) {
    namespace fs = std::filesystem;
    if (!fs::exists(root)) throw fs::filesystem_error("no such directory", root, std::make_error_code(std::errc::no_such_file_or_directory));

    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".java") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) {
        return a.lexically_relative(root).generic_string() < b.lexically_relative(root).generic_string();
    });

    std::vector<FileOutcome> outcomes(files.size());
    unsigned threads = options.threads ? options.threads : default_thread_count();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(files.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++)
            outcomes[i] = parse_file(files[i], files[i].lexically_relative(root).generic_string());
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    ScanResult result;
    result.files_scanned = files.size();
    std::vector<SourceUnit> units;
    for (auto& o : outcomes) {
        if (o.unit) units.push_back(std::move(*o.unit));
        if (o.error) result.diagnostics.push_back(std::move(*o.error));
    }
    result.corpus = Corpus::from_units(std::move(units));
    if (result.corpus.empty()) throw EmptyCorpus();
    for (const auto& u : result.corpus.unresolved())
        result.diagnostics.push_back({u.from, 0, "unresolved type " + u.name});
    return result;
}

}  // namespace couplaw
