#pragma once

#include <cstdint>
#include <vector>

#include "imodel/cascade.hpp"
#include "imodel/sparse.hpp"

namespace imodel {

using CountMatrix = RowSparse<std::int64_t>;
using ProbMatrix = RowSparse<double>;

// Raw tallies from one pass over a cascade set.
//   a[i][j]       times i failed in the generation immediately before j
//   a_prime[i][j] times i was attributed as a cause of j
//   n_total[i]    failures of i in any generation (N_i)
//   n_gen0[i]     cascades whose initial outage includes i (N_i0)
struct InteractionCounts {
    CountMatrix a;
    CountMatrix a_prime;
    std::vector<std::int64_t> n_total;
    std::vector<std::int64_t> n_gen0;
    std::int64_t m_used = 0;

    ComponentId n() const { return static_cast<ComponentId>(n_total.size()); }
};

// Estimated interaction model. b[i][j] is the empirical probability that a
// failure of i causes a failure of j; tau[i] the probability that i is part
// of a cascade's initial outage.
struct InteractionMatrix {
    ProbMatrix b;
    std::vector<double> tau;
    std::int64_t m_used = 0;

    ComponentId n() const { return static_cast<ComponentId>(tau.size()); }

    bool operator==(const InteractionMatrix&) const = default;
};

// Fills a, n_total, n_gen0; a_prime is left empty for attribute_causes.
InteractionCounts count_pairwise(const CascadeSet& cs);

// Cause attribution: within each consecutive generation pair, every
// predecessor whose a[i][j] ties the maximum over the predecessors present
// gets full credit for j. `a` stays frozen while this runs.
CountMatrix attribute_causes(const CascadeSet& cs, const CountMatrix& a);

// b[i][j] = a_prime[i][j] / n_total[i], tau[i] = n_gen0[i] / m_used.
InteractionMatrix estimate_matrix(const InteractionCounts& counts);

// Fraction of caused components whose candidate causes are completely
// indistinguishable: at least two nonzero a[.][j] entries, all equal.
// Throws ValidationError when no component was ever caused.
double cause_indistinguishable_ratio(const CountMatrix& a);

struct QuantifyResult {
    InteractionCounts counts;
    InteractionMatrix matrix;
    // 0 when nothing ever propagated (every cascade stops at generation 0).
    double indistinguishable_ratio = 0.0;
};

// Full pipeline: count, attribute, estimate.
QuantifyResult quantify(const CascadeSet& cs);

}  // namespace imodel
