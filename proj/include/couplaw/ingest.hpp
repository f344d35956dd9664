#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace couplaw {

enum class TypeKind { Class, Interface };

struct Field {
    std::string name;
    std::string type;

    auto operator<=>(const Field&) const = default;
};

struct Constructor {
    std::vector<std::string> param_types;

    auto operator<=>(const Constructor&) const = default;
};

struct Method {
    std::string name;
    std::string return_type;
    std::vector<std::string> param_types;

    auto operator<=>(const Method&) const = default;
};

// Declaration-level digest of one top-level class or interface. Type strings
// are raw element types: generic arguments and array suffixes are stripped,
// qualification is kept as written.
struct ClassSummary {
    std::string qualified_name;
    TypeKind kind = TypeKind::Class;
    std::optional<std::string> superclass;
    std::vector<std::string> interfaces;
    std::vector<Field> fields;
    std::vector<Constructor> constructors;
    std::vector<Method> methods;

    std::string simple_name() const;
    std::string package_name() const;

    bool operator==(const ClassSummary&) const = default;
};

bool is_primitive(std::string_view type_name);

// Every non-primitive type name the class mentions in its declarations, in
// first-mention order without repeats.
std::vector<std::string> referenced_types(const ClassSummary& summary);

struct Diagnostic {
    std::string file;
    std::size_t line = 0;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

// One parsed source file: its package, its import declarations ("a.b.C" or
// "a.b.*", static imports dropped) and its top-level types.
struct SourceUnit {
    std::string file;
    std::string package;
    std::vector<std::string> imports;
    std::vector<ClassSummary> classes;
};

// (referencing class, name as written) -> qualified corpus class name
using ResolutionTable = std::map<std::pair<std::string, std::string>, std::string>;

struct UnresolvedReference {
    std::string from;
    std::string name;

    auto operator<=>(const UnresolvedReference&) const = default;
};

// Immutable set of class summaries plus the name-resolution table. Every
// resolution target is a member of the corpus.
class Corpus {
public:
    Corpus() = default;

    // Throws InvalidParams if a resolution entry points outside the corpus
    // or originates from a class that is not in it.
    Corpus(std::map<std::string, ClassSummary> classes, ResolutionTable resolution);

    // Merges parsed units and resolves names: explicit imports first, then
    // the unit's own package, then wildcard imports (java.lang.* implied
    // last), then the name taken as already qualified. Throws DuplicateClass.
    static Corpus from_units(std::vector<SourceUnit> units);

    const std::map<std::string, ClassSummary>& classes() const noexcept { return classes_; }
    const ResolutionTable& resolution() const noexcept { return resolution_; }

    std::size_t size() const noexcept { return classes_.size(); }
    bool empty() const noexcept { return classes_.empty(); }

    const ClassSummary* find(const std::string& qualified_name) const;
    std::optional<std::string> resolve(const std::string& from, const std::string& name) const;

    // Non-primitive references without a resolution entry, sorted.
    std::vector<UnresolvedReference> unresolved() const;

    bool operator==(const Corpus&) const = default;

private:
    std::map<std::string, ClassSummary> classes_;
    ResolutionTable resolution_;
};

// Parses one compilation unit. Throws MalformedSource.
SourceUnit parse_unit(std::string_view source_text, const std::string& file_name);

std::vector<ClassSummary> parse_source(std::string_view source_text, const std::string& file_name);

struct ScanOptions {
    // 0 picks COUPLAW_THREADS or the hardware concurrency.
    unsigned threads = 0;
};

struct ScanResult {
    Corpus corpus;
    // Skipped files and unresolved names, in file then line order.
    std::vector<Diagnostic> diagnostics;
    std::size_t files_scanned = 0;
};

// Parses every *.java file under root. Malformed files are skipped and
// reported. Throws DuplicateClass, EmptyCorpus, or std::filesystem errors
// when root is missing.
ScanResult scan_tree(const std::filesystem::path& root, const ScanOptions& options = {});

unsigned default_thread_count();

inline constexpr std::string_view kSummaryFormat = "couplaw-summary/1";

// Line-delimited JSON: a header record, one record per class sorted by
// name, then one record per resolution entry.
void write_summaries(const Corpus& corpus, std::ostream& out);
Corpus read_summaries(std::istream& in);

void save_summaries(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_summaries(const std::filesystem::path& path);

}  // namespace couplaw
