#include "couplaw/error.hpp"
#include "couplaw/graphs.hpp"
#include "couplaw/rng.hpp"
#include "couplaw/stats.hpp"
#include "couplaw/synth.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace couplaw;

namespace {

SynthParams aggregation_only(std::size_t n, std::uint64_t seed, double alpha = 0.0) {
    SynthParams p;
    p.n_classes = n;
    p.edges_per_class = {{Coupling::Aggregation, 2}};
    p.alpha = alpha;
    p.rng_seed = seed;
    return p;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("xorshift64* stream matches the published recurrence") {
    // Reference values from a separate Python implementation.
    Xorshift64Star rng(42);
    CHECK(rng() == 0x31b0ece7c4f697a2ull);
    CHECK(rng() == 0x9008a3b1cb686f03ull);
    CHECK(rng() == 0x7c7173abd97be16full);
    Xorshift64Star r(7);
    for (int i = 0; i < 1000; ++i) {
        CHECK(r.below(10) < 10);
        double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("generate: no growth leaves the seed core") {
    SynthParams p = aggregation_only(3, 1);
    p.seed_size = 3;
    auto corpus = generate(p);
    CHECK(corpus.size() == 3);
    auto g = build_graphs(corpus);
    CHECK(g.edges(Coupling::Aggregation).size() == 3);
    for (auto c : {Coupling::Inheritance, Coupling::InterfaceImpl, Coupling::Parameter, Coupling::ReturnType})
        CHECK(g.edges(c).empty());
}

TEST_CASE("generate: aggregation edge count identity") {
    auto corpus = generate(aggregation_only(1000, 42));
    auto g = build_graphs(corpus);
    CHECK(corpus.size() == 1000);
    CHECK(g.edges(Coupling::Aggregation).size() == 1997);
    CHECK(corpus.classes().begin()->first == "S000");
    CHECK(corpus.classes().rbegin()->first == "S999");
}

TEST_CASE("generate: every coupling type realised") {
    SynthParams p;
    p.n_classes = 500;
    p.seed_size = 4;
    p.edges_per_class = {{Coupling::Inheritance, 1}, {Coupling::InterfaceImpl, 2}, {Coupling::Aggregation, 2},
                         {Coupling::Parameter, 3}, {Coupling::ReturnType, 2}};
    p.interface_fraction = 0.3;
    p.alpha = 0.5;
    p.rng_seed = 5;
    auto corpus = generate(p);
    auto g = build_graphs(corpus);
    CHECK(g.edges(Coupling::Aggregation).size() == 6 + 496 * 2);
    CHECK(g.edges(Coupling::Parameter).size() == 496 * 3);
    CHECK(g.edges(Coupling::ReturnType).size() == 496 * 2);
    CHECK_FALSE(g.edges(Coupling::Inheritance).empty());
    CHECK_FALSE(g.edges(Coupling::InterfaceImpl).empty());
    for (auto d : g.in_degrees(Coupling::Inheritance)) CHECK(d <= 1);
    for (const auto& [name, c] : corpus.classes()) {
        if (c.kind == TypeKind::Interface) {
            CHECK_FALSE(c.superclass);
            CHECK(c.constructors.empty());
        }
        for (const auto& i : c.interfaces) CHECK(corpus.find(i)->kind == TypeKind::Interface);
        if (c.superclass) CHECK(corpus.find(*c.superclass)->kind == TypeKind::Class);
    }
    CHECK(corpus.unresolved().empty());
}

TEST_CASE("generate: deterministic per seed") {
    auto a = testutil::dump(generate(aggregation_only(2000, 8)));
    auto b = testutil::dump(generate(aggregation_only(2000, 8)));
    auto c = testutil::dump(generate(aggregation_only(2000, 9)));
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("generate: invalid parameters") {
    auto bad = [](auto mutate) {
        SynthParams p;
        mutate(p);
        CHECK_THROWS_AS(generate(p), InvalidParams);
    };
    bad([](SynthParams& p) { p.alpha = 1.5; });
    bad([](SynthParams& p) { p.alpha = -0.1; });
    bad([](SynthParams& p) { p.seed_size = 0; });
    bad([](SynthParams& p) { p.n_classes = 2; });
    bad([](SynthParams& p) { p.edges_per_class[Coupling::Inheritance] = 2; });
    bad([](SynthParams& p) { p.interface_fraction = 1.2; });
}

TEST_CASE("generate: preferential attachment passes the fit") {
    auto corpus = generate(aggregation_only(10000, 42));
    auto s = degree_series(corpus, build_graphs(corpus), Relationship::MembersOfClassType);
    auto r = fit_series(s);
    REQUIRE(r.ok());
    CHECK(r.estimate->r_squared >= 0.85);
    CHECK(r.estimate->exponent >= 1.8);
    CHECK(r.estimate->exponent <= 3.4);
}

TEST_CASE("generate: uniform attachment has thinner tails than preferential") {
    double preferential = 0, uniform = 0;
    int counted = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto exponent = [&](double alpha) {
            auto corpus = generate(aggregation_only(10000, seed, alpha));
            FitOptions opts;
            opts.min_buckets = 3;
            auto r = fit_series(degree_series(corpus, build_graphs(corpus), Relationship::MembersOfClassType), opts);
            REQUIRE(r.ok());
            return r.estimate->exponent;
        };
        preferential += exponent(0.0);
        uniform += exponent(1.0);
        ++counted;
    }
    CHECK(uniform / counted > preferential / counted);
}

TEST_CASE("sample_power_law: a=2 on {1,2,3} matches exact probabilities") {
    const std::size_t n = 100000;
    auto draws = sample_power_law(2.0, n, 3, 2024);
    std::array<std::size_t, 4> counts{};
    for (auto v : draws) {
        REQUIRE(v >= 1);
        REQUIRE(v <= 3);
        ++counts[v];
    }
    const double z = 49.0 / 36.0;
    const std::array<double, 4> p{0, 1.0 / z, 0.25 / z, (1.0 / 9.0) / z};
    for (int x = 1; x <= 3; ++x) {
        double sigma = std::sqrt(n * p[x] * (1 - p[x]));
        CAPTURE(x);
        CHECK(std::abs(double(counts[x]) - n * p[x]) <= 3 * sigma);
    }
}

TEST_CASE("sample_power_law: steep exponent and determinism") {
    auto steep = sample_power_law(50.0, 1000, 1000, 1);
    for (auto v : steep) CHECK(v == 1);
    CHECK(sample_power_law(2.5, 500, 1000, 77) == sample_power_law(2.5, 500, 1000, 77));
    CHECK(sample_power_law(2.5, 500, 1000, 77) != sample_power_law(2.5, 500, 1000, 78));
    CHECK_THROWS_AS(sample_power_law(1.0, 10, 10, 1), InvalidParams);
    CHECK_THROWS_AS(sample_power_law(2.0, 0, 10, 1), InvalidParams);
    CHECK_THROWS_AS(sample_power_law(2.0, 10, 0, 1), InvalidParams);
}

}  // TEST_SUITE
