// couplaw: coupling graphs and power-law fits for Java source trees.
//
//   couplaw scan DIR -o corpus.jsonl
//   couplaw analyze DIR|corpus.jsonl [--raw] [--plot-dir plots] [--markdown]
//   couplaw corr DIR|corpus.jsonl
//   couplaw synth --n 10000 --aggregation 2 --seed 42 -o synth.jsonl
//   couplaw ablate corpus.jsonl --mode both --fraction 0.1 --trials 20 --seed 7

#include "couplaw/error.hpp"
#include "couplaw/graphs.hpp"
#include "couplaw/ingest.hpp"
#include "couplaw/report.hpp"
#include "couplaw/robustness.hpp"
#include "couplaw/stats.hpp"
#include "couplaw/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

namespace fs = std::filesystem;
using namespace couplaw;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitEmptyCorpus = 2;

struct InputOptions {
    std::string input;
    unsigned threads = 0;
    bool verbose = false;
};

Corpus load_input(const InputOptions& opts) {
    if (fs::is_directory(opts.input)) {
        ScanResult scan = scan_tree(opts.input, ScanOptions{opts.threads});
        std::size_t unresolved = 0;
        for (const auto& d : scan.diagnostics) {
            if (d.line == 0 && d.message.starts_with("unresolved")) {
                ++unresolved;
                if (!opts.verbose) continue;
                std::cerr << "note: " << d.file << ": " << d.message << '\n';
            } else {
                std::cerr << "warning: " << d.message << " (file skipped)\n";
            }
        }
        if (unresolved && !opts.verbose)
            std::cerr << "note: " << unresolved << " unresolved type references (use --verbose to list)\n";
        return std::move(scan.corpus);
    }
    Corpus corpus = load_summaries(opts.input);
    if (corpus.empty()) throw EmptyCorpus();
    return corpus;
}

// Writes to the named file, or stdout when the name is empty or "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw Error("cannot write " + path);
    }

    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void add_input(CLI::App& cmd, InputOptions& in) {
    cmd.add_option("input", in.input, "Source directory or couplaw-summary file")->required();
    cmd.add_option("--threads", in.threads, "Parser threads (default: COUPLAW_THREADS or all cores)");
    cmd.add_flag("-v,--verbose", in.verbose, "List every unresolved type reference");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Class coupling graphs and power-law distribution fits"};
    app.require_subcommand(1);

    // scan
    InputOptions scan_in;
    std::string scan_out;
    auto* scan = app.add_subcommand("scan", "Parse a source tree into a couplaw-summary file");
    scan->add_option("dir", scan_in.input, "Source directory")->required()->check(CLI::ExistingDirectory);
    scan->add_option("-o,--out", scan_out, "Output file (default stdout)");
    scan->add_option("--threads", scan_in.threads, "Parser threads");
    scan->add_flag("-v,--verbose", scan_in.verbose, "List every unresolved type reference");

    // analyze
    InputOptions an_in;
    FitOptions fit_opts;
    bool raw = false;
    bool arithmetic = false;
    bool include_external = false;
    bool markdown = false;
    std::string an_out, plot_dir, edges_out;
    auto* analyze = app.add_subcommand("analyze", "Fit power laws to the twelve coupling and member distributions");
    add_input(*analyze, an_in);
    analyze->add_option("--base", fit_opts.base, "Bucket growth factor")->capture_default_str();
    analyze->add_option("--min-buckets", fit_opts.min_buckets, "Non-empty buckets needed for a fit")
        ->capture_default_str();
    auto* raw_flag = analyze->add_flag("--raw", raw, "Fit raw bucket counts");
    analyze->add_flag("--density", "Fit width-normalised frequencies (default)")->excludes(raw_flag);
    analyze->add_flag("--arithmetic-midpoint", arithmetic, "Use (lower+upper)/2 instead of the geometric mean");
    analyze->add_flag("--include-external", include_external, "Keep unresolved types as graph nodes");
    analyze->add_flag("--markdown", markdown, "Render a markdown table instead of CSV");
    analyze->add_option("-o,--out", an_out, "Report file (default stdout)");
    analyze->add_option("--plot-dir", plot_dir, "Directory for per-relationship plot data");
    analyze->add_option("--edges", edges_out, "Write the edge list to this file");

    // corr
    InputOptions corr_in;
    std::string corr_out;
    auto* corr = app.add_subcommand("corr", "Correlation matrix of method, field and constructor counts");
    add_input(*corr, corr_in);
    corr->add_option("-o,--out", corr_out, "Output file (default stdout)");

    // synth
    SynthParams sp;
    std::size_t m_inh = 0, m_iface = 0, m_agg = 2, m_param = 0, m_ret = 0;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus by mixed preferential attachment");
    synth->add_option("--n", sp.n_classes, "Number of classes")->capture_default_str();
    synth->add_option("--seed-size", sp.seed_size, "Size of the initial aggregation core")->capture_default_str();
    synth->add_option("--inheritance", m_inh, "Superclass edges per class (0 or 1)")->capture_default_str();
    synth->add_option("--interface", m_iface, "Interface edges per class")->capture_default_str();
    synth->add_option("--aggregation", m_agg, "Field edges per class")->capture_default_str();
    synth->add_option("--parameter", m_param, "Parameter edges per class")->capture_default_str();
    synth->add_option("--return", m_ret, "Return-type edges per class")->capture_default_str();
    synth->add_option("--alpha", sp.alpha, "Uniform attachment weight in [0,1]")->capture_default_str();
    synth->add_option("--interface-fraction", sp.interface_fraction, "Share of grown classes that are interfaces")
        ->capture_default_str();
    synth->add_option("--seed", sp.rng_seed, "Random seed")->required();
    synth->add_option("-o,--out", synth_out, "Output file (default stdout)");

    // ablate
    InputOptions ab_in;
    std::string mode = "both";
    RemovalExperiment exp;
    std::vector<std::string> roots;
    bool ab_external = false;
    std::string ab_out;
    auto* ablate = app.add_subcommand("ablate", "Reachability after random or degree-targeted class removal");
    add_input(*ablate, ab_in);
    ablate->add_option("--mode", mode, "random, targeted or both")
        ->check(CLI::IsMember({"random", "targeted", "both"}))
        ->capture_default_str();
    ablate->add_option("--fraction", exp.fraction, "Fraction of nodes removed")->capture_default_str();
    ablate->add_option("--trials", exp.trials, "Random-mode trials")->capture_default_str();
    ablate->add_option("--seed", exp.rng_seed, "Random seed")->required();
    ablate->add_option("--root", roots, "Traversal root (repeatable; default: indegree-0 nodes)");
    ablate->add_flag("--include-external", ab_external, "Keep unresolved types as graph nodes");
    ablate->add_option("-o,--out", ab_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan->parsed()) {
            Corpus corpus = load_input(scan_in);
            Output out(scan_out);
            write_summaries(corpus, out.stream());
        } else if (analyze->parsed()) {
            Corpus corpus = load_input(an_in);
            fit_opts.normalization = raw ? Normalization::Raw : Normalization::Density;
            fit_opts.midpoint = arithmetic ? Midpoint::Arithmetic : Midpoint::Geometric;
            CouplingGraphs graphs = build_graphs(corpus, GraphOptions{include_external});
            for (const auto& d : graphs.diagnostics()) std::cerr << "warning: " << d << '\n';
            Report report = make_report(corpus, graphs, fit_opts, an_in.threads);
            Output out(an_out);
            if (markdown) write_markdown(report, out.stream());
            else write_csv(report, out.stream());
            if (!plot_dir.empty()) write_plot_files(report, plot_dir);
            if (!edges_out.empty()) {
                Output edges(edges_out);
                write_edge_list(graphs, edges.stream());
            }
        } else if (corr->parsed()) {
            Corpus corpus = load_input(corr_in);
            auto members = member_counts(corpus);
            Output out(corr_out);
            write_correlation_csv(correlation_matrix(members[0], members[1], members[2]), out.stream());
        } else if (synth->parsed()) {
            sp.edges_per_class = {{Coupling::Inheritance, m_inh},
                                  {Coupling::InterfaceImpl, m_iface},
                                  {Coupling::Aggregation, m_agg},
                                  {Coupling::Parameter, m_param},
                                  {Coupling::ReturnType, m_ret}};
            Corpus corpus = generate(sp);
            Output out(synth_out);
            write_summaries(corpus, out.stream());
        } else if (ablate->parsed()) {
            Corpus corpus = load_input(ab_in);
            CouplingGraphs graphs = build_graphs(corpus, GraphOptions{ab_external});
            if (!roots.empty()) exp.roots = roots;
            Output out(ab_out);
            if (mode != "targeted") {
                exp.mode = RemovalMode::Random;
                write_experiment(run_experiment(graphs, exp), out.stream());
            }
            if (mode != "random") {
                exp.mode = RemovalMode::TargetedByDegree;
                write_experiment(run_experiment(graphs, exp), out.stream());
            }
        }
    } catch (const EmptyCorpus& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEmptyCorpus;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
