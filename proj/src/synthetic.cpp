#include "imodel/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "imodel/errors.hpp"
#include "imodel/rng.hpp"

namespace imodel {

TopologyKind parse_topology(const std::string& name) {
    if (name == "chain") return TopologyKind::chain;
    if (name == "tree") return TopologyKind::tree;
    if (name == "random-sparse") return TopologyKind::random_sparse;
    throw ValidationError("unknown topology '" + name +
                          "' (expected chain, tree or random-sparse)");
}

std::string topology_name(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::chain: return "chain";
        case TopologyKind::tree: return "tree";
        case TopologyKind::random_sparse: return "random-sparse";
    }
    throw ValidationError("unknown topology kind");
}

namespace {

void check_spec(const GroundTruthSpec& s) {
    if (s.n < 2) throw ValidationError("ground truth needs at least two components");
    if (s.b_min < 0.0 || s.b_max > 1.0 || s.b_min > s.b_max)
        throw ValidationError("link probability range must satisfy 0 <= min <= max <= 1");
    if (s.tau_min < 0.0 || s.tau_max > 1.0 || s.tau_min > s.tau_max)
        throw ValidationError("tau range must satisfy 0 <= min <= max <= 1");
    if (s.kind == TopologyKind::random_sparse && (s.density < 0.0 || s.density > 1.0))
        throw ValidationError("density must lie in [0, 1]");
}

}  // namespace

GroundTruth make_ground_truth(const GroundTruthSpec& spec) {
    check_spec(spec);
    GroundTruth gt;
    gt.spec = spec;
    gt.matrix.b = ProbMatrix(spec.n);
    gt.matrix.m_used = 0;
    Rng rng(spec.seed);

    switch (spec.kind) {
        case TopologyKind::chain:
            for (ComponentId v = 1; v < spec.n; ++v)
                gt.matrix.b.set(v - 1, v, uniform_range(rng, spec.b_min, spec.b_max));
            break;
        case TopologyKind::tree:
            for (ComponentId v = 1; v < spec.n; ++v) {
                const auto parent = static_cast<ComponentId>(uniform_below(rng, v));
                gt.matrix.b.set(parent, v, uniform_range(rng, spec.b_min, spec.b_max));
            }
            break;
        case TopologyKind::random_sparse: {
            // Row sums below 1 keep the offspring mean subcritical from any
            // single failure; redraw each row until it holds.
            const int max_attempts = 1000;
            ProbMatrix b(spec.n);
            for (ComponentId i = 0; i < spec.n; ++i) {
                for (int attempt = 0;; ++attempt) {
                    if (attempt == max_attempts)
                        throw ValidationError(
                            "could not draw a row with sum below 1; lower the "
                            "density or the probability range");
                    double sum = 0.0;
                    std::vector<std::pair<ComponentId, double>> row;
                    for (ComponentId j = 0; j < spec.n; ++j)
                        if (i != j && bernoulli(rng, spec.density)) {
                            row.emplace_back(j, uniform_range(rng, spec.b_min, spec.b_max));
                            sum += row.back().second;
                        }
                    if (sum < 1.0) {
                        for (const auto& [j, v] : row) b.set(i, j, v);
                        break;
                    }
                }
            }
            gt.matrix.b = std::move(b);
            break;
        }
    }

    gt.matrix.tau.resize(spec.n);
    for (ComponentId i = 0; i < spec.n; ++i)
        gt.matrix.tau[i] = uniform_range(rng, spec.tau_min, spec.tau_max);
    return gt;
}

SimResult generate_cascades(const GroundTruth& gt, std::int64_t m, std::uint64_t seed,
                            std::uint32_t streams) {
    SimConfig cfg;
    cfg.m_max = m;
    cfg.seed = seed;
    cfg.streams = streams;
    return simulate(gt.matrix, cfg);
}

RecoveryReport recovery_report(const InteractionMatrix& estimated,
                               const InteractionCounts& counts, const GroundTruth& gt,
                               std::int64_t min_support) {
    if (estimated.n() != gt.matrix.n())
        throw ValidationError("estimated matrix size differs from the ground truth");
    auto supported = [&](ComponentId i) { return counts.n_total[i] >= min_support; };

    RecoveryReport rep;
    std::size_t true_hits = 0, estimated_hits = 0;
    double err_sum = 0.0;
    gt.matrix.b.for_each([&](ComponentId i, ComponentId j, double b_true) {
        if (!supported(i)) return;
        ++rep.supported_true_links;
        const double b_hat = estimated.b.get(i, j);
        const double err = std::abs(b_hat - b_true);
        rep.max_abs_error = std::max(rep.max_abs_error, err);
        err_sum += err;
        if (b_hat > 0.0) ++true_hits;
    });
    estimated.b.for_each([&](ComponentId i, ComponentId j, double) {
        if (!supported(i)) return;
        ++rep.supported_estimated_links;
        if (gt.matrix.b.get(i, j) > 0.0) ++estimated_hits;
    });

    if (rep.supported_true_links > 0) {
        rep.mean_abs_error = err_sum / static_cast<double>(rep.supported_true_links);
        rep.recall = static_cast<double>(true_hits) /
                     static_cast<double>(rep.supported_true_links);
    }
    if (rep.supported_estimated_links > 0)
        rep.precision = static_cast<double>(estimated_hits) /
                        static_cast<double>(rep.supported_estimated_links);
    return rep;
}

}  // namespace imodel
