#pragma once

#include "couplaw/graphs.hpp"
#include "couplaw/ingest.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace couplaw {

struct SynthParams {
    std::size_t n_classes = 1000;
    // The first seed_size classes form the core: class j aggregates every
    // class i < j, giving seed_size * (seed_size - 1) / 2 edges.
    std::size_t seed_size = 3;
    // Out-edges each new class draws per coupling type (absent means 0).
    std::map<Coupling, std::size_t> edges_per_class{{Coupling::Aggregation, 2}};
    // Weight of uniform attachment; 0 is purely preferential.
    double alpha = 0.0;
    // Chance that a grown class is an interface. Interface edges target
    // interfaces only; inheritance edges target classes only.
    double interface_fraction = 0.1;
    std::uint64_t rng_seed = 42;
};

// Throws InvalidParams.
void validate(const SynthParams& params);

// Grows a corpus one class at a time. For each coupling type a new class
// draws m distinct existing targets, picking t with probability
//   alpha / N + (1 - alpha) * (indeg(t) + 1) / sum(indeg + 1)
// over the N eligible targets, indegrees taken in that coupling's graph.
// Edges become declarations: a field per aggregation edge, one method
// taking every parameter target, one method per return target, the
// superclass and the implements list. Names are "S" plus a zero-padded index.
Corpus generate(const SynthParams& params);

// n i.i.d. draws from P(x) proportional to x^-a on {1..x_max} by inverse
// CDF over the exact mass function. Needs a > 1, n > 0, x_max >= 1.
std::vector<std::uint64_t> sample_power_law(double a, std::size_t n, std::uint64_t x_max, std::uint64_t rng_seed);

}  // namespace couplaw
