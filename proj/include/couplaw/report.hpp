#pragma once

#include "couplaw/graphs.hpp"
#include "couplaw/stats.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace couplaw {

struct ReportRow {
    Relationship relationship;
    FitResult fit;
    std::optional<BucketedHistogram> histogram;
};

struct Report {
    std::size_t class_count = 0;
    std::size_t external_count = 0;
    std::array<std::size_t, kCouplings.size()> edge_counts{};
    std::array<ReportRow, kRelationships.size()> rows;
};

// Fits all twelve series. Fitting may run on up to `threads` threads
// (0 means default_thread_count()); row order is always canonical.
Report make_report(const Corpus& corpus, const CouplingGraphs& graphs, const FitOptions& options = {},
                   unsigned threads = 1);

inline constexpr std::string_view kReportHeader = "relationship,exponent,lower95,upper95,r2,status,buckets";

// Header line plus one row per relationship, four decimals, '.' separator.
void write_csv(const Report& report, std::ostream& out);

// Table in the layout "Relationship | Exponent | Lower 95% | Upper 95% | r²"
// preceded by corpus metadata.
void write_markdown(const Report& report, std::ostream& out);

// One "<slug>.tsv" file per relationship that has any non-zero count.
void write_plot_files(const Report& report, const std::filesystem::path& dir);

void write_correlation_csv(const CorrelationMatrix& matrix, std::ostream& out);

}  // namespace couplaw
