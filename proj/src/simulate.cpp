#include "imodel/simulate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <thread>

#include "imodel/errors.hpp"

namespace imodel {

Cascade simulate_cascade(const InteractionMatrix& m, Rng& rng) {
    const ComponentId n = m.n();
    Cascade c;
    // One uniform per component with positive tau, in id order; later, one
    // uniform per (failed parent, live target) pair, parents in id order.
    // This fixed draw order is what makes runs reproducible from the seed.
    std::vector<ComponentId> current;
    for (ComponentId i = 0; i < n; ++i)
        if (m.tau[i] > 0.0 && bernoulli(rng, m.tau[i])) current.push_back(i);
    if (current.empty()) return c;

    std::vector<char> failed(n, 0), pending(n, 0);
    for (ComponentId i : current) failed[i] = 1;
    c.generations.push_back(current);

    std::vector<ComponentId> next;
    while (true) {
        next.clear();
        for (ComponentId i : current) {
            for (const auto& e : m.b.row(i)) {
                if (failed[e.col]) continue;
                // Parents trigger independently, so the draw happens even if
                // the target is already pending for the next generation.
                if (bernoulli(rng, e.value) && !pending[e.col]) {
                    pending[e.col] = 1;
                    next.push_back(e.col);
                }
            }
        }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        for (ComponentId j : next) {
            pending[j] = 0;
            failed[j] = 1;
        }
        c.generations.push_back(next);
        current.swap(next);
    }
    return c;
}

namespace {

void check_matrix(const InteractionMatrix& m) {
    bool any_tau = false;
    for (double t : m.tau) {
        if (t < 0.0 || t > 1.0) throw ValidationError("tau entries must lie in [0, 1]");
        any_tau = any_tau || t > 0.0;
    }
    if (!any_tau) throw ValidationError("tau is all zero; every draw would be empty");
    m.b.for_each([](ComponentId, ComponentId, double p) {
        if (p < 0.0 || p > 1.0) throw ValidationError("b entries must lie in [0, 1]");
    });
}

}  // namespace

SimResult simulate(const InteractionMatrix& m, const SimConfig& cfg) {
    if (cfg.m_max < 0) throw ValidationError("cascade count must be nonnegative");
    check_matrix(m);

    const std::uint32_t streams = std::max<std::uint32_t>(1, cfg.streams);
    const std::int64_t base = cfg.m_max / streams;
    std::vector<std::vector<Cascade>> per_stream(streams);
    std::vector<std::int64_t> discards(streams, 0);

    auto run_stream = [&](std::uint32_t s) {
        const std::int64_t quota = base + (s < cfg.m_max % streams ? 1 : 0);
        Rng rng(derive_seed(cfg.seed, s));
        auto& out = per_stream[s];
        out.reserve(static_cast<std::size_t>(quota));
        while (std::ssize(out) < quota) {
            Cascade c = simulate_cascade(m, rng);
            if (c.generations.empty())
                ++discards[s];
            else
                out.push_back(std::move(c));
        }
    };

    if (streams == 1) {
        run_stream(0);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(streams);
        for (std::uint32_t s = 0; s < streams; ++s) workers.emplace_back(run_stream, s);
        for (auto& w : workers) w.join();
    }

    SimResult result;
    result.cascades.n_components = m.n();
    result.cascades.cascades.reserve(static_cast<std::size_t>(cfg.m_max));
    for (auto& chunk : per_stream)
        for (auto& c : chunk) result.cascades.cascades.push_back(std::move(c));
    result.discarded_empty = std::accumulate(discards.begin(), discards.end(), std::int64_t{0});
    return result;
}

InteractionMatrix apply_mitigation(const InteractionMatrix& m, const MitigationPlan& plan) {
    if (plan.weaken < 0.0 || plan.weaken > 1.0)
        throw ValidationError("weaken fraction must lie in [0, 1]");
    InteractionMatrix out = m;
    std::vector<std::pair<ComponentId, ComponentId>> links = plan.links;
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    for (const auto& [i, j] : links) {
        if (i >= m.n() || j >= m.n())
            throw ValidationError("mitigation link " + std::to_string(i) + " -> " +
                                  std::to_string(j) + " is out of range");
        const double b = out.b.get(i, j);
        if (b == 0.0)
            throw ValidationError("mitigation link " + std::to_string(i) + " -> " +
                                  std::to_string(j) + " is not in the matrix");
        out.b.set(i, j, (1.0 - plan.weaken) * b);
    }
    return out;
}

MitigationPlan random_plan(const std::vector<WeightedLink>& weighted, std::size_t k,
                           double weaken, Rng& rng) {
    if (k > weighted.size())
        throw ValidationError("cannot pick " + std::to_string(k) + " links out of " +
                              std::to_string(weighted.size()));
    std::vector<std::size_t> idx(weighted.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t t = 0; t < k; ++t)
        std::swap(idx[t], idx[t + uniform_below(rng, idx.size() - t)]);
    MitigationPlan plan;
    plan.weaken = weaken;
    for (std::size_t t = 0; t < k; ++t)
        plan.links.emplace_back(weighted[idx[t]].source, weighted[idx[t]].target);
    std::sort(plan.links.begin(), plan.links.end());
    return plan;
}

double plan_weight(const MitigationPlan& plan, const std::vector<WeightedLink>& weighted) {
    std::map<std::pair<ComponentId, ComponentId>, double> by_link;
    for (const auto& w : weighted) by_link[{w.source, w.target}] = w.weight;
    double total = 0.0;
    for (const auto& l : plan.links) {
        auto it = by_link.find(l);
        if (it == by_link.end())
            throw ValidationError("plan link " + std::to_string(l.first) + " -> " +
                                  std::to_string(l.second) + " has no weight");
        total += it->second;
    }
    return total;
}

}  // namespace imodel
