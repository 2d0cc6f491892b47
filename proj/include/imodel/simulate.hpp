#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "imodel/cascade.hpp"
#include "imodel/network.hpp"
#include "imodel/quantify.hpp"
#include "imodel/rng.hpp"

namespace imodel {

struct SimConfig {
    std::int64_t m_max = 1;  // nonempty cascades to produce
    std::uint64_t seed = 0;
    std::uint32_t streams = 1;  // independent substreams, one thread each when > 1
};

struct SimResult {
    CascadeSet cascades;
    // Generation-0 draws that came up empty and were resampled.
    std::int64_t discarded_empty = 0;
};

// One cascade draw. Generation 0 takes one uniform per component with
// positive tau, in id order; each later generation takes one uniform per
// (failed parent, not-yet-failed target) link, parents in id order. An
// all-empty draw comes back as a cascade with no generations.
Cascade simulate_cascade(const InteractionMatrix& m, Rng& rng);

// m_max nonempty cascades. Stream s uses derive_seed(cfg.seed, s) and
// produces its share of m_max (remainder spread over the first streams);
// results are concatenated in stream order, so the cascade list depends on
// (seed, streams) but never on scheduling. Throws if tau is all zero.
SimResult simulate(const InteractionMatrix& m, const SimConfig& cfg);

struct MitigationPlan {
    std::vector<std::pair<ComponentId, ComponentId>> links;
    // Fraction of each listed b[i][j] removed: b <- (1 - weaken) * b.
    double weaken = 0.9;
};

// Returns a copy with the plan applied; tau is untouched. Duplicate plan
// entries collapse to one. Throws ValidationError for a link absent from b.
InteractionMatrix apply_mitigation(const InteractionMatrix& m, const MitigationPlan& plan);

// k distinct links drawn uniformly from `weighted`, for the random arm of a
// mitigation comparison.
MitigationPlan random_plan(const std::vector<WeightedLink>& weighted, std::size_t k,
                           double weaken, Rng& rng);

// Summed weight of the plan's links. Throws for a link not in `weighted`.
double plan_weight(const MitigationPlan& plan, const std::vector<WeightedLink>& weighted);

}  // namespace imodel
