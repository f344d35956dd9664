#include "couplaw/stats.hpp"

#include "couplaw/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace couplaw {

std::size_t BucketedHistogram::total() const {
    std::size_t n = 0;
    for (const auto& b : buckets) n += b.count;
    return n;
}

std::size_t BucketedHistogram::non_empty() const {
    return static_cast<std::size_t>(
        std::count_if(buckets.begin(), buckets.end(), [](const Bucket& b) { return b.count > 0; }));
}

std::vector<std::uint64_t> bucket_bounds(double base, std::uint64_t max_value) {
    if (!(base > 1.0) || !std::isfinite(base)) throw InvalidParams("bucket base must be > 1");
    std::vector<std::uint64_t> bounds{1};
    long double power = 1.0L;
    while (bounds.back() <= max_value) {
        power *= base;
        // Shave a few ulps so exact powers (2^k, 10^k) are not rounded up.
        auto ceiled = static_cast<std::uint64_t>(std::ceil(power * (1.0L - 1e-15L)));
        bounds.push_back(std::max(bounds.back() + 1, ceiled));
    }
    return bounds;
}

BucketedHistogram bucket(std::span<const std::uint64_t> values, double base, Normalization normalization,
                         Midpoint midpoint) {
    if (values.empty()) throw EmptyInput();
    if (std::find(values.begin(), values.end(), 0u) != values.end())
        throw InvalidParams("bucketed values must be positive");

    auto bounds = bucket_bounds(base, *std::max_element(values.begin(), values.end()));
    std::vector<std::size_t> counts(bounds.size() - 1, 0);
    for (auto v : values) {
        auto it = std::upper_bound(bounds.begin(), bounds.end(), v);
        ++counts[static_cast<std::size_t>(it - bounds.begin()) - 1];
    }

    BucketedHistogram h;
    h.base = base;
    h.normalization = normalization;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        Bucket b{bounds[k], bounds[k + 1], counts[k], 0.0, 0.0};
        auto lo = static_cast<double>(b.lower);
        auto hi = static_cast<double>(b.upper);
        b.midpoint = midpoint == Midpoint::Geometric ? std::sqrt(lo * hi) : (lo + hi) / 2.0;
        b.frequency = normalization == Normalization::Density ? static_cast<double>(b.count) / (hi - lo)
                                                              : static_cast<double>(b.count);
        h.buckets.push_back(b);
    }
    return h;
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0) || !(b > 0)) throw InvalidParams("incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0)) throw InvalidParams("degrees of freedom must be positive");
    double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t >= 0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidParams("quantile probability must lie in (0, 1)");
    if (p < 0.5) return -student_t_quantile(1.0 - p, df);
    if (p == 0.5) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (student_t_cdf(hi, df) < p) {
        lo = hi;
        hi *= 2.0;
    }
    // The cdf is monotone; bisection converges to the last representable bit.
    for (int i = 0; i < 200 && hi - lo > std::numeric_limits<double>::epsilon() * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < p) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

LineFit least_squares(std::span<const double> x, std::span<const double> y, double confidence) {
    if (x.size() != y.size()) throw InvalidParams("x and y differ in length");
    const std::size_t n = x.size();
    if (n < 3) throw DegenerateFit("need at least three points for a slope interval");
    if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidParams("confidence must lie in (0, 1)");

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw DegenerateFit("all x values are equal");

    LineFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        sse += r * r;
    }
    auto dof = static_cast<double>(n - 2);
    f.slope_se = std::sqrt(sse / dof / sxx);
    f.t_quantile = student_t_quantile(0.5 + confidence / 2.0, dof);
    f.slope_lower = f.slope - f.t_quantile * f.slope_se;
    f.slope_upper = f.slope + f.t_quantile * f.slope_se;
    // A flat line through flat data is a perfect fit.
    f.r_squared = syy == 0.0 ? 1.0 : std::min(1.0, sxy * sxy / (sxx * syy));
    return f;
}

std::string_view fit_status_name(FitStatus s) { return s == FitStatus::Ok ? "ok" : "insufficient_data"; }

FitResult fit(const BucketedHistogram& histogram, std::size_t min_buckets) {
    std::vector<double> x, y;
    for (const auto& b : histogram.buckets) {
        if (b.count == 0) continue;
        x.push_back(std::log10(b.midpoint));
        y.push_back(std::log10(b.frequency));
    }
    FitResult r;
    r.buckets_used = x.size();
    if (x.size() < min_buckets) return r;
    if (x.size() == 1) throw DegenerateFit("a single bucket has no slope");

    LineFit line = least_squares(x, y);
    r.status = FitStatus::Ok;
    r.estimate = PowerLawEstimate{
        .exponent = -line.slope,
        .intercept = line.intercept,
        .ci_lower = -line.slope_upper,
        .ci_upper = -line.slope_lower,
        .r_squared = line.r_squared,
        .std_error = line.slope_se,
    };
    return r;
}

SeriesFit fit_series_detailed(const DegreeSeries& series, const FitOptions& options) {
    std::vector<std::uint64_t> values;
    for (const auto& [name, n] : series.counts)
        if (n > 0) values.push_back(n);
    SeriesFit out;
    if (values.empty()) return out;
    out.histogram = bucket(values, options.base, options.normalization, options.midpoint);
    try {
        out.result = fit(*out.histogram, options.min_buckets);
    } catch (const DegenerateFit&) {
        out.result = FitResult{FitStatus::InsufficientData, out.histogram->non_empty(), std::nullopt};
    }
    return out;
}

FitResult fit_series(const DegreeSeries& series, const FitOptions& options) {
    return fit_series_detailed(series, options).result;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidParams("x and y differ in length");
    if (x.size() < 2) throw InvalidParams("need at least two observations");
    const auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateFit("constant column");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const DegreeSeries& methods, const DegreeSeries& fields,
                                     const DegreeSeries& constructors) {
    CorrelationMatrix m;
    const std::array<const DegreeSeries*, 3> series{&methods, &fields, &constructors};
    std::array<std::vector<double>, 3> columns;
    for (std::size_t i = 0; i < 3; ++i) {
        if (series[i]->counts.size() != methods.counts.size())
            throw InvalidParams("series cover different class sets");
        for (std::size_t k = 0; k < methods.counts.size(); ++k) {
            if (series[i]->counts[k].first != methods.counts[k].first)
                throw InvalidParams("series cover different class sets");
            columns[i].push_back(static_cast<double>(series[i]->counts[k].second));
        }
        if (columns[i].empty() ||
            std::adjacent_find(columns[i].begin(), columns[i].end(), std::not_equal_to<>()) == columns[i].end())
            throw ZeroVariance(m.labels[i]);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        m.values[i][i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            double r = pearson(columns[i], columns[j]);
            m.values[i][j] = r;
            m.values[j][i] = r;
        }
    }
    return m;
}

void write_plot_data(const BucketedHistogram& histogram, const FitResult& result, std::ostream& out) {
    if (result.ok()) {
        const auto& e = *result.estimate;
        out << fmt::format("# status=ok exponent={:.6f} intercept={:.6f} lower95={:.6f} upper95={:.6f} r2={:.6f} "
                           "buckets={}\n",
                           e.exponent, e.intercept, e.ci_lower, e.ci_upper, e.r_squared, result.buckets_used);
    } else {
        out << fmt::format("# status={} buckets={}\n", fit_status_name(result.status), result.buckets_used);
    }
    for (const auto& b : histogram.buckets) {
        if (b.count == 0) continue;
        out << fmt::format("{:.6f}\t{:.6f}\n", std::log10(b.midpoint), std::log10(b.frequency));
    }
}

}  // namespace couplaw
