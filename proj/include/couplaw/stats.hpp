#pragma once

#include "couplaw/graphs.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace couplaw {

enum class Normalization { Density, Raw };
enum class Midpoint { Geometric, Arithmetic };

struct Bucket {
    std::uint64_t lower;  // inclusive
    std::uint64_t upper;  // exclusive
    std::size_t count;
    double midpoint;
    double frequency;  // count / (upper - lower) for density, count for raw
};

struct BucketedHistogram {
    std::vector<Bucket> buckets;  // contiguous from 1, may contain empty buckets
    double base = 2.0;
    Normalization normalization = Normalization::Density;

    std::size_t total() const;
    std::size_t non_empty() const;
};

// Integer bucket boundaries 1 = b0 < b1 < ... with b_k = ceil(base^k),
// bumped by one where rounding would repeat a boundary. The last boundary
// exceeds max_value. Throws InvalidParams unless base > 1.
std::vector<std::uint64_t> bucket_bounds(double base, std::uint64_t max_value);

// Throws EmptyInput on no values, InvalidParams on zeros or base <= 1.
BucketedHistogram bucket(std::span<const std::uint64_t> values, double base = 2.0,
                         Normalization normalization = Normalization::Density,
                         Midpoint midpoint = Midpoint::Geometric);

// Ordinary least squares of y on x with a two-sided confidence interval on
// the slope.
struct LineFit {
    std::size_t n = 0;
    double slope = 0;
    double intercept = 0;
    double slope_se = 0;
    double t_quantile = 0;
    double slope_lower = 0;
    double slope_upper = 0;
    double r_squared = 0;
};

// Needs at least three points and distinct x values; throws DegenerateFit.
LineFit least_squares(std::span<const double> x, std::span<const double> y, double confidence = 0.95);

double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
double student_t_quantile(double p, double df);

enum class FitStatus { Ok, InsufficientData };

std::string_view fit_status_name(FitStatus s);

struct PowerLawEstimate {
    double exponent;   // a in frequency = C * midpoint^-a
    double intercept;  // log10 C
    double ci_lower;
    double ci_upper;
    double r_squared;
    double std_error;
};

struct FitResult {
    FitStatus status = FitStatus::InsufficientData;
    std::size_t buckets_used = 0;
    std::optional<PowerLawEstimate> estimate;  // set iff status == Ok

    bool ok() const noexcept { return status == FitStatus::Ok; }
};

inline constexpr std::size_t kDefaultMinBuckets = 5;

// Regresses log10(frequency) on log10(midpoint) over the non-empty buckets.
// Fewer than min_buckets of them gives InsufficientData. Throws DegenerateFit
// when the usable buckets cannot support a slope and interval (fewer than
// three), which only happens with min_buckets < 3.
FitResult fit(const BucketedHistogram& histogram, std::size_t min_buckets = kDefaultMinBuckets);

struct FitOptions {
    double base = 2.0;
    Normalization normalization = Normalization::Density;
    Midpoint midpoint = Midpoint::Geometric;
    std::size_t min_buckets = kDefaultMinBuckets;
};

struct SeriesFit {
    FitResult result;
    std::optional<BucketedHistogram> histogram;  // absent when every count is zero
};

// Drops zeros, buckets and fits. Never throws on sparse data.
SeriesFit fit_series_detailed(const DegreeSeries& series, const FitOptions& options = {});
FitResult fit_series(const DegreeSeries& series, const FitOptions& options = {});

double pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationMatrix {
    std::array<std::string, 3> labels{"methods", "fields", "constructors"};
    std::array<std::array<double, 3>, 3> values{};
};

// Pearson coefficients over raw per-class counts, zeros included. Throws
// ZeroVariance for a constant column, InvalidParams if the series cover
// different classes.
CorrelationMatrix correlation_matrix(const DegreeSeries& methods, const DegreeSeries& fields,
                                     const DegreeSeries& constructors);

// "# ..." fit line, then "log10_midpoint<TAB>log10_frequency" per non-empty
// bucket.
void write_plot_data(const BucketedHistogram& histogram, const FitResult& fit, std::ostream& out);

}  // namespace couplaw
