#include "couplaw/error.hpp"
#include "couplaw/graphs.hpp"
#include "couplaw/ingest.hpp"
#include "couplaw/report.hpp"
#include "couplaw/robustness.hpp"
#include "couplaw/stats.hpp"
#include "couplaw/synth.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <set>
#include <sstream>

namespace py = pybind11;
using namespace couplaw;

namespace {

py::list edge_names(const CouplingGraphs& g, Coupling c) {
    py::list out;
    for (const auto& e : g.edges(c)) out.append(py::make_tuple(g.nodes()[e.source], g.nodes()[e.target]));
    return out;
}

std::string analyze_csv(const Corpus& corpus, double base, std::size_t min_buckets, bool raw,
                        bool include_external) {
    FitOptions opts;
    opts.base = base;
    opts.min_buckets = min_buckets;
    opts.normalization = raw ? Normalization::Raw : Normalization::Density;
    std::ostringstream out;
    write_csv(make_report(corpus, build_graphs(corpus, GraphOptions{include_external}), opts), out);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Class coupling graphs, power-law fitting and synthetic corpora";

    auto base_error = py::register_exception<Error>(m, "CouplawError", PyExc_ValueError);
    py::register_exception<MalformedSource>(m, "MalformedSource", base_error);
    py::register_exception<DuplicateClass>(m, "DuplicateClass", base_error);
    py::register_exception<EmptyCorpus>(m, "EmptyCorpus", base_error);
    py::register_exception<FormatError>(m, "FormatError", base_error);
    py::register_exception<UnknownRelationship>(m, "UnknownRelationship", base_error);
    py::register_exception<DegenerateFit>(m, "DegenerateFit", base_error);
    py::register_exception<ZeroVariance>(m, "ZeroVariance", base_error);
    py::register_exception<InvalidParams>(m, "InvalidParams", base_error);

    // ingest
    py::enum_<TypeKind>(m, "TypeKind").value("CLASS", TypeKind::Class).value("INTERFACE", TypeKind::Interface);

    py::class_<Field>(m, "Field")
        .def_readonly("name", &Field::name)
        .def_readonly("type", &Field::type)
        .def("__repr__", [](const Field& f) { return "Field(" + f.name + ": " + f.type + ")"; });
    py::class_<Constructor>(m, "Constructor").def_readonly("param_types", &Constructor::param_types);
    py::class_<Method>(m, "Method")
        .def_readonly("name", &Method::name)
        .def_readonly("return_type", &Method::return_type)
        .def_readonly("param_types", &Method::param_types);

    py::class_<ClassSummary>(m, "ClassSummary")
        .def_readonly("qualified_name", &ClassSummary::qualified_name)
        .def_readonly("kind", &ClassSummary::kind)
        .def_readonly("superclass", &ClassSummary::superclass)
        .def_readonly("interfaces", &ClassSummary::interfaces)
        .def_readonly("fields", &ClassSummary::fields)
        .def_readonly("constructors", &ClassSummary::constructors)
        .def_readonly("methods", &ClassSummary::methods)
        .def("__repr__", [](const ClassSummary& c) { return "ClassSummary(" + c.qualified_name + ")"; });

    py::class_<Corpus>(m, "Corpus")
        .def_property_readonly("classes", &Corpus::classes)
        .def_property_readonly("resolution", &Corpus::resolution)
        .def("resolve", &Corpus::resolve, py::arg("from_class"), py::arg("name"))
        .def("unresolved",
             [](const Corpus& c) {
                 py::list out;
                 for (const auto& u : c.unresolved()) out.append(py::make_tuple(u.from, u.name));
                 return out;
             })
        .def("__len__", &Corpus::size)
        .def("__contains__", [](const Corpus& c, const std::string& n) { return c.find(n) != nullptr; })
        .def("__getitem__",
             [](const Corpus& c, const std::string& n) {
                 if (const auto* cls = c.find(n)) return *cls;
                 throw py::key_error(n);
             })
        .def(py::self == py::self);

    m.def("parse_source", &parse_source, py::arg("source_text"), py::arg("file_name") = "<string>");
    m.def(
        "scan_tree",
        [](const std::filesystem::path& root, unsigned threads) {
            ScanResult r = scan_tree(root, ScanOptions{threads});
            py::list diags;
            for (const auto& d : r.diagnostics) diags.append(py::make_tuple(d.file, d.line, d.message));
            return py::make_tuple(std::move(r.corpus), diags);
        },
        py::arg("root"), py::arg("threads") = 0,
        "Returns (corpus, diagnostics) where diagnostics are (file, line, message).");
    m.def("save_summaries", &save_summaries, py::arg("corpus"), py::arg("path"));
    m.def("load_summaries", &load_summaries, py::arg("path"));
    m.def("dumps", [](const Corpus& c) {
        std::ostringstream out;
        write_summaries(c, out);
        return out.str();
    });
    m.def("loads", [](const std::string& text) {
        std::istringstream in(text);
        return read_summaries(in);
    });

    // graphs
    py::enum_<Coupling>(m, "Coupling")
        .value("INHERITANCE", Coupling::Inheritance)
        .value("INTERFACE_IMPL", Coupling::InterfaceImpl)
        .value("AGGREGATION", Coupling::Aggregation)
        .value("PARAMETER", Coupling::Parameter)
        .value("RETURN_TYPE", Coupling::ReturnType);

    py::class_<CouplingGraphs>(m, "CouplingGraphs")
        .def_property_readonly("nodes", &CouplingGraphs::nodes)
        .def_property_readonly("class_count", &CouplingGraphs::class_count)
        .def_property_readonly("diagnostics", &CouplingGraphs::diagnostics)
        .def("edges", &edge_names, py::arg("coupling"))
        .def("edge_list", [](const CouplingGraphs& g) {
            std::ostringstream out;
            write_edge_list(g, out);
            return out.str();
        });
    m.def(
        "build_graphs",
        [](const Corpus& c, bool include_external) { return build_graphs(c, GraphOptions{include_external}); },
        py::arg("corpus"), py::arg("include_external") = false);

    m.def("relationships", [] {
        std::vector<std::string> out;
        for (auto r : kRelationships) out.emplace_back(relationship_name(r));
        return out;
    });
    m.def(
        "degree_series",
        [](const Corpus& c, const CouplingGraphs& g, const std::string& name) {
            return degree_series(c, g, relationship_from_name(name)).counts;
        },
        py::arg("corpus"), py::arg("graphs"), py::arg("relationship"));

    // stats
    py::enum_<Normalization>(m, "Normalization")
        .value("DENSITY", Normalization::Density)
        .value("RAW", Normalization::Raw);
    py::enum_<Midpoint>(m, "Midpoint").value("GEOMETRIC", Midpoint::Geometric).value("ARITHMETIC", Midpoint::Arithmetic);

    py::class_<Bucket>(m, "Bucket")
        .def_readonly("lower", &Bucket::lower)
        .def_readonly("upper", &Bucket::upper)
        .def_readonly("count", &Bucket::count)
        .def_readonly("midpoint", &Bucket::midpoint)
        .def_readonly("frequency", &Bucket::frequency);
    py::class_<BucketedHistogram>(m, "BucketedHistogram")
        .def_readonly("buckets", &BucketedHistogram::buckets)
        .def_readonly("base", &BucketedHistogram::base)
        .def_readonly("normalization", &BucketedHistogram::normalization)
        .def("non_empty", &BucketedHistogram::non_empty);

    py::class_<FitResult>(m, "FitResult")
        .def_property_readonly("status", [](const FitResult& r) { return std::string(fit_status_name(r.status)); })
        .def_readonly("buckets_used", &FitResult::buckets_used)
        .def_property_readonly("exponent", [](const FitResult& r) -> std::optional<double> {
            if (r.estimate) return r.estimate->exponent;
            return std::nullopt;
        })
        .def_property_readonly("intercept", [](const FitResult& r) -> std::optional<double> {
            if (r.estimate) return r.estimate->intercept;
            return std::nullopt;
        })
        .def_property_readonly("ci", [](const FitResult& r) -> std::optional<std::pair<double, double>> {
            if (r.estimate) return std::pair{r.estimate->ci_lower, r.estimate->ci_upper};
            return std::nullopt;
        })
        .def_property_readonly("r_squared", [](const FitResult& r) -> std::optional<double> {
            if (r.estimate) return r.estimate->r_squared;
            return std::nullopt;
        });

    m.def(
        "bucket",
        [](const std::vector<std::uint64_t>& values, double base, Normalization n, Midpoint mid) {
            return bucket(values, base, n, mid);
        },
        py::arg("values"), py::arg("base") = 2.0, py::arg("normalization") = Normalization::Density,
        py::arg("midpoint") = Midpoint::Geometric);
    m.def("fit", &fit, py::arg("histogram"), py::arg("min_buckets") = kDefaultMinBuckets);
    m.def(
        "fit_values",
        [](const std::vector<std::size_t>& counts, double base, std::size_t min_buckets, bool raw) {
            DegreeSeries s{Relationship::Methods, {}};
            for (auto c : counts) s.counts.emplace_back(std::string{}, c);
            FitOptions opts;
            opts.base = base;
            opts.min_buckets = min_buckets;
            opts.normalization = raw ? Normalization::Raw : Normalization::Density;
            return fit_series(s, opts);
        },
        py::arg("counts"), py::arg("base") = 2.0, py::arg("min_buckets") = kDefaultMinBuckets, py::arg("raw") = false,
        "Fit a series of per-class counts; zeros are dropped.");
    m.def(
        "least_squares",
        [](const std::vector<double>& x, const std::vector<double>& y, double confidence) {
            LineFit f = least_squares(x, y, confidence);
            py::dict d;
            d["slope"] = f.slope;
            d["intercept"] = f.intercept;
            d["slope_se"] = f.slope_se;
            d["t_quantile"] = f.t_quantile;
            d["slope_lower"] = f.slope_lower;
            d["slope_upper"] = f.slope_upper;
            d["r_squared"] = f.r_squared;
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("confidence") = 0.95);
    m.def("student_t_quantile", &student_t_quantile, py::arg("p"), py::arg("df"));
    m.def("correlation_matrix", [](const Corpus& corpus) {
        auto mc = member_counts(corpus);
        return correlation_matrix(mc[0], mc[1], mc[2]).values;
    });
    m.def("analyze", &analyze_csv, py::arg("corpus"), py::arg("base") = 2.0,
          py::arg("min_buckets") = kDefaultMinBuckets, py::arg("raw") = false, py::arg("include_external") = false,
          "Run the full pipeline and return the CSV report.");

    // synth
    py::class_<SynthParams>(m, "SynthParams")
        .def(py::init<>())
        .def_readwrite("n_classes", &SynthParams::n_classes)
        .def_readwrite("seed_size", &SynthParams::seed_size)
        .def_readwrite("edges_per_class", &SynthParams::edges_per_class)
        .def_readwrite("alpha", &SynthParams::alpha)
        .def_readwrite("interface_fraction", &SynthParams::interface_fraction)
        .def_readwrite("rng_seed", &SynthParams::rng_seed);
    m.def("generate", &generate, py::arg("params"));
    m.def("sample_power_law", &sample_power_law, py::arg("a"), py::arg("n"), py::arg("x_max"), py::arg("rng_seed"));

    // robustness
    m.def(
        "reachable_fraction",
        [](const CouplingGraphs& g, const std::vector<std::string>& roots, const std::set<std::string>& removed) {
            return reachable_fraction(g, roots, removed);
        },
        py::arg("graphs"), py::arg("roots"), py::arg("removed"));
    m.def(
        "run_experiment",
        [](const CouplingGraphs& g, const std::string& mode, double fraction, std::size_t trials,
           std::uint64_t seed) {
            RemovalExperiment e;
            if (mode == "random") e.mode = RemovalMode::Random;
            else if (mode == "targeted") e.mode = RemovalMode::TargetedByDegree;
            else throw InvalidParams("mode must be 'random' or 'targeted'");
            e.fraction = fraction;
            e.trials = trials;
            e.rng_seed = seed;
            return run_experiment(g, e).results;
        },
        py::arg("graphs"), py::arg("mode"), py::arg("fraction"), py::arg("trials") = 1, py::arg("rng_seed") = 42);
}
