#include "imodel/quantify.hpp"

#include <algorithm>

#include "imodel/errors.hpp"

namespace imodel {

InteractionCounts count_pairwise(const CascadeSet& cs) {
    InteractionCounts counts;
    const ComponentId n = cs.n_components;
    counts.a = CountMatrix(n);
    counts.a_prime = CountMatrix(n);
    counts.n_total.assign(n, 0);
    counts.n_gen0.assign(n, 0);
    counts.m_used = static_cast<std::int64_t>(cs.size());
    for (const auto& c : cs.cascades) {
        for (ComponentId v : c.generations.front()) ++counts.n_gen0[v];
        for (const auto& g : c.generations)
            for (ComponentId v : g) ++counts.n_total[v];
        for (std::size_t g = 0; g + 1 < c.generations.size(); ++g)
            for (ComponentId i : c.generations[g])
                for (ComponentId j : c.generations[g + 1]) counts.a.add(i, j, 1);
    }
    return counts;
}

CountMatrix attribute_causes(const CascadeSet& cs, const CountMatrix& a) {
    CountMatrix a_prime(a.size());
    for (const auto& c : cs.cascades) {
        for (std::size_t g = 0; g + 1 < c.generations.size(); ++g) {
            const auto& parents = c.generations[g];
            for (ComponentId j : c.generations[g + 1]) {
                // The cascade itself contributed to every a[i][j] involved,
                // so the maximum is always positive.
                std::int64_t best = 0;
                for (ComponentId i : parents) best = std::max(best, a.get(i, j));
                for (ComponentId i : parents)
                    if (a.get(i, j) == best) a_prime.add(i, j, 1);
            }
        }
    }
    return a_prime;
}

InteractionMatrix estimate_matrix(const InteractionCounts& counts) {
    if (counts.m_used <= 0) throw ValidationError("cannot estimate a matrix from zero cascades");
    InteractionMatrix m;
    m.m_used = counts.m_used;
    m.b = ProbMatrix(counts.n());
    counts.a_prime.for_each([&](ComponentId i, ComponentId j, std::int64_t c) {
        m.b.set(i, j, static_cast<double>(c) / static_cast<double>(counts.n_total[i]));
    });
    m.tau.resize(counts.n());
    for (ComponentId i = 0; i < counts.n(); ++i)
        m.tau[i] = static_cast<double>(counts.n_gen0[i]) / static_cast<double>(counts.m_used);
    return m;
}

double cause_indistinguishable_ratio(const CountMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::int64_t> nonzeros(n, 0), col_min(n, 0), col_max(n, 0);
    a.for_each([&](ComponentId, ComponentId j, std::int64_t c) {
        if (nonzeros[j] == 0) {
            col_min[j] = col_max[j] = c;
        } else {
            col_min[j] = std::min(col_min[j], c);
            col_max[j] = std::max(col_max[j], c);
        }
        ++nonzeros[j];
    });
    std::int64_t caused = 0, indistinguishable = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (nonzeros[j] == 0) continue;
        ++caused;
        // All candidate causes tie exactly when the max equals the mean of
        // the nonzero entries, i.e. min == max.
        if (nonzeros[j] >= 2 && col_min[j] == col_max[j]) ++indistinguishable;
    }
    if (caused == 0) throw ValidationError("no component was ever caused; ratio undefined");
    return static_cast<double>(indistinguishable) / static_cast<double>(caused);
}

QuantifyResult quantify(const CascadeSet& cs) {
    QuantifyResult r;
    r.counts = count_pairwise(cs);
    r.counts.a_prime = attribute_causes(cs, r.counts.a);
    r.matrix = estimate_matrix(r.counts);
    r.indistinguishable_ratio =
        r.counts.a.nonzero_count() == 0 ? 0.0 : cause_indistinguishable_ratio(r.counts.a);
    return r;
}

}  // namespace imodel
