#include "couplaw/report.hpp"

#include "couplaw/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <thread>

namespace couplaw {

Report make_report(const Corpus& corpus, const CouplingGraphs& graphs, const FitOptions& options, unsigned threads) {
    Report report;
    report.class_count = graphs.class_count();
    report.external_count = graphs.nodes().size() - graphs.class_count();
    for (auto c : kCouplings) report.edge_counts[static_cast<std::size_t>(c)] = graphs.edges(c).size();

    const auto series = all_series(corpus, graphs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < series.size(); i = next++) {
            SeriesFit sf = fit_series_detailed(series[i], options);
            report.rows[i] = ReportRow{series[i].relationship, sf.result, std::move(sf.histogram)};
        }
    };
    if (threads == 0) threads = default_thread_count();
    threads = std::min<unsigned>(threads, static_cast<unsigned>(series.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return report;
}

void write_csv(const Report& report, std::ostream& out) {
    out << kReportHeader << '\n';
    for (const auto& row : report.rows) {
        if (row.fit.ok()) {
            const auto& e = *row.fit.estimate;
            out << fmt::format("{},{:.4f},{:.4f},{:.4f},{:.4f},{},{}\n", relationship_name(row.relationship),
                               e.exponent, e.ci_lower, e.ci_upper, e.r_squared, fit_status_name(row.fit.status),
                               row.fit.buckets_used);
        } else {
            out << fmt::format("{},,,,,{},{}\n", relationship_name(row.relationship),
                               fit_status_name(row.fit.status), row.fit.buckets_used);
        }
    }
}

void write_markdown(const Report& report, std::ostream& out) {
    out << fmt::format("Classes: {}\n\n", report.class_count);
    if (report.external_count) out << fmt::format("External nodes: {}\n\n", report.external_count);
    out << "| Coupling | Edges |\n|---|---:|\n";
    for (auto c : kCouplings)
        out << fmt::format("| {} | {} |\n", coupling_name(c), report.edge_counts[static_cast<std::size_t>(c)]);
    out << "\n| Relationship | Exponent | Lower 95% | Upper 95% | r² |\n|---|---:|---:|---:|---:|\n";
    for (const auto& row : report.rows) {
        if (row.fit.ok()) {
            const auto& e = *row.fit.estimate;
            out << fmt::format("| {} | {:.3f} | {:.3f} | {:.3f} | {:.3f} |\n", relationship_name(row.relationship),
                               e.exponent, e.ci_lower, e.ci_upper, e.r_squared);
        } else {
            out << fmt::format("| {} | insufficient data ({} buckets) | | | |\n", relationship_name(row.relationship),
                               row.fit.buckets_used);
        }
    }
}

void write_plot_files(const Report& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& row : report.rows) {
        if (!row.histogram) continue;
        auto path = dir / (std::string(relationship_slug(row.relationship)) + ".tsv");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        write_plot_data(*row.histogram, row.fit, out);
    }
}

void write_correlation_csv(const CorrelationMatrix& m, std::ostream& out) {
    out << fmt::format(",{},{},{}\n", m.labels[0], m.labels[1], m.labels[2]);
    for (std::size_t i = 0; i < 3; ++i) {
        out << fmt::format("{},{:.4f},{:.4f},{:.4f}\n", m.labels[i], m.values[i][0], m.values[i][1], m.values[i][2]);
    }
}

}  // namespace couplaw
