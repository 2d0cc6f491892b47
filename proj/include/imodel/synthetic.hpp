#pragma once

#include <cstdint>
#include <string>

#include "imodel/quantify.hpp"
#include "imodel/simulate.hpp"

namespace imodel {

enum class TopologyKind { chain, tree, random_sparse };

TopologyKind parse_topology(const std::string& name);
std::string topology_name(TopologyKind kind);

// Recipe for a known interaction system used to exercise the estimation
// pipeline end to end.
struct GroundTruthSpec {
    TopologyKind kind = TopologyKind::tree;
    ComponentId n = 20;
    // random_sparse only: probability of placing each ordered (i, j) link.
    double density = 0.05;
    double b_min = 0.2;
    double b_max = 0.8;
    double tau_min = 0.01;
    double tau_max = 0.01;
    std::uint64_t seed = 0;
};

struct GroundTruth {
    GroundTruthSpec spec;
    InteractionMatrix matrix;
};

// chain: i-1 -> i for every i. tree: each vertex past 0 hangs under a
// uniformly drawn earlier vertex. random_sparse: independent links, redrawn
// from scratch until every row sums below 1 so cascades cannot run away.
GroundTruth make_ground_truth(const GroundTruthSpec& spec);

SimResult generate_cascades(const GroundTruth& gt, std::int64_t m, std::uint64_t seed,
                            std::uint32_t streams = 1);

// Estimate quality against the known matrix, restricted to links whose
// source failed at least min_support times (others carry no information).
struct RecoveryReport {
    double max_abs_error = 0.0;
    double mean_abs_error = 0.0;
    double precision = 1.0;  // supported estimated links that are true
    double recall = 1.0;     // supported true links that were estimated
    std::size_t supported_true_links = 0;
    std::size_t supported_estimated_links = 0;
};

RecoveryReport recovery_report(const InteractionMatrix& estimated,
                               const InteractionCounts& counts, const GroundTruth& gt,
                               std::int64_t min_support);

}  // namespace imodel
