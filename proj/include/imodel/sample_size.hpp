#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "imodel/cascade.hpp"

namespace imodel {

// Mean propagated (generation >= 1) failures per cascade over the first m_u
// cascades.
double original_propagation_capacity(const CascadeSet& cs, std::size_t m_u);

// Network link counts quantified from growing prefixes, plus the deviation
// of each count's tail: sigmas[i] is the sample standard deviation of
// link_counts[i..end], defined up to the third-to-last grid point.
struct LinkCountCurve {
    std::vector<std::size_t> grid;
    std::vector<std::size_t> link_counts;
    std::vector<double> sigmas;
};

LinkCountCurve link_count_curve(const CascadeSet& cs, std::vector<std::size_t> grid);

struct MMinResult {
    std::size_t m_min = 0;
    std::size_t grid_index = 0;
};

// First grid point whose tail deviation is at most theta times the final
// link count and keeps shrinking for the next two points. Throws
// ValidationError when the curve never stabilizes (extend the grid).
MMinResult find_m_min(const LinkCountCurve& curve, double theta = 0.01);

// Propagation capacity mismatch between the original cascades and the
// network quantified from their first m_u: satisfied when
// |pc_network - pc_original| <= epsilon * pc_original.
struct MismatchResult {
    double pc_original = 0.0;
    double pc_network = 0.0;
    double delta = 0.0;
    double indistinguishable_ratio = 0.0;
    bool satisfied = false;
};

MismatchResult mismatch(const CascadeSet& cs, std::size_t m_u, double epsilon);

struct MuSearchParams {
    double epsilon = 0.01;
    std::size_t step_up = 1000;
    std::size_t step_down = 100;
    std::size_t start = 100;
};

struct MuProbe {
    std::size_t m_u = 0;
    MismatchResult result;
};

struct MuSearchTrace {
    MuSearchParams params;
    std::vector<MuProbe> visited;
    std::size_t result = 0;
    // Descent probes taken and the cascades they would have saved: the gap
    // between the coarse ascent answer and the refined one.
    std::size_t down_steps = 0;
    std::size_t unnecessary_cascades = 0;
    // Descent ran out of room (next candidate below `start`) while the
    // condition still held; result is the floor, not a tight minimum.
    bool stopped_at_floor = false;
};

using MismatchProbe = std::function<MismatchResult(std::size_t m_u)>;

// Coarse ascent from `start` in steps of step_up until the mismatch
// condition holds, then descent in steps of step_down until it breaks;
// returns the last satisfied value. Probes never exceed `available`.
MuSearchTrace find_mu_min(const MismatchProbe& probe, std::size_t available,
                          const MuSearchParams& params);
MuSearchTrace find_mu_min(const CascadeSet& cs, const MuSearchParams& params);

}  // namespace imodel
