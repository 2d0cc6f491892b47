#include "imodel/sample_size.hpp"

#include <string>

#include "imodel/errors.hpp"
#include "imodel/network.hpp"
#include "imodel/quantify.hpp"
#include "imodel/stats.hpp"

namespace imodel {

double original_propagation_capacity(const CascadeSet& cs, std::size_t m_u) {
    if (m_u == 0) throw ValidationError("propagation capacity needs at least one cascade");
    const CascadeSet prefix = take_prefix(cs, m_u);
    std::size_t propagated = 0;
    for (const auto& c : prefix.cascades) propagated += c.propagated_failures();
    return static_cast<double>(propagated) / static_cast<double>(m_u);
}

LinkCountCurve link_count_curve(const CascadeSet& cs, std::vector<std::size_t> grid) {
    LinkCountCurve curve;
    curve.grid = std::move(grid);
    curve.link_counts.reserve(curve.grid.size());
    for (std::size_t m : curve.grid) {
        const QuantifyResult q = quantify(take_prefix(cs, m));
        curve.link_counts.push_back(build_network(q.matrix).links.size());
    }
    // Tail deviations exist through the third-to-last point; the last two
    // tails (two values, one value) carry no usable spread information.
    if (curve.grid.size() >= 3) {
        for (std::size_t i = 0; i + 2 < curve.grid.size(); ++i) {
            std::vector<double> tail(curve.link_counts.begin() +
                                         static_cast<std::ptrdiff_t>(i),
                                     curve.link_counts.end());
            curve.sigmas.push_back(sample_stddev(tail));
        }
    }
    return curve;
}

MMinResult find_m_min(const LinkCountCurve& curve, double theta) {
    if (curve.sigmas.size() < 3)
        throw ValidationError("need a grid of at least five points to judge saturation");
    const double bound = theta * static_cast<double>(curve.link_counts.back());
    for (std::size_t i = 0; i + 2 < curve.sigmas.size(); ++i) {
        if (curve.sigmas[i] <= bound && curve.sigmas[i + 1] <= curve.sigmas[i] &&
            curve.sigmas[i + 2] <= curve.sigmas[i + 1])
            return MMinResult{curve.grid[i], i};
    }
    throw ValidationError("link count never saturates on this grid; extend it");
}

MismatchResult mismatch(const CascadeSet& cs, std::size_t m_u, double epsilon) {
    const QuantifyResult q = quantify(take_prefix(cs, m_u));
    const InteractionNetwork net = build_network(q.matrix);
    const auto weighted = weigh_links(net, q.counts, WeightMode::gen0);

    MismatchResult r;
    r.pc_original = original_propagation_capacity(cs, m_u);
    r.pc_network =
        network_propagation_capacity(weighted, static_cast<std::int64_t>(m_u));
    r.delta = r.pc_network - r.pc_original;
    r.indistinguishable_ratio = q.indistinguishable_ratio;
    r.satisfied = std::abs(r.delta) <= epsilon * r.pc_original;
    return r;
}

MuSearchTrace find_mu_min(const MismatchProbe& probe, std::size_t available,
                          const MuSearchParams& params) {
    if (params.step_up == 0 || params.step_down == 0 || params.start == 0)
        throw ValidationError("search steps and start must be positive");
    if (params.start > available)
        throw ValidationError("search start exceeds the available cascades");

    MuSearchTrace trace;
    trace.params = params;
    auto run = [&](std::size_t m_u) {
        trace.visited.push_back(MuProbe{m_u, probe(m_u)});
        return trace.visited.back().result.satisfied;
    };

    // Coarse ascent until the mismatch condition first holds.
    std::size_t m_u = params.start;
    while (!run(m_u)) {
        if (m_u + params.step_up > available)
            throw ValidationError("mismatch condition still fails at " + std::to_string(m_u) +
                                  " cascades; no more are available");
        m_u += params.step_up;
    }

    // Fine descent; stops at the first failure or at the floor.
    while (true) {
        if (m_u < params.start + params.step_down) {
            trace.stopped_at_floor = true;
            break;
        }
        const std::size_t candidate = m_u - params.step_down;
        ++trace.down_steps;
        if (!run(candidate)) break;
        m_u = candidate;
    }
    trace.result = m_u;
    trace.unnecessary_cascades = trace.down_steps * params.step_down;
    return trace;
}

MuSearchTrace find_mu_min(const CascadeSet& cs, const MuSearchParams& params) {
    MismatchProbe probe = [&cs, &params](std::size_t m_u) {
        return mismatch(cs, m_u, params.epsilon);
    };
    return find_mu_min(probe, cs.size(), params);
}

}  // namespace imodel
