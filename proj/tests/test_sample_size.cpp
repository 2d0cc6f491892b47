#include <doctest.h>

#include <cmath>
#include <vector>

#include "imodel/errors.hpp"
#include "imodel/sample_size.hpp"
#include "imodel/simulate.hpp"

using namespace imodel;

namespace {

// Deterministic chain 0 -> 1 -> 2 that always propagates fully.
CascadeSet sure_chain_set(std::size_t m) {
    CascadeSet cs;
    cs.n_components = 3;
    for (std::size_t k = 0; k < m; ++k)
        cs.cascades.push_back(Cascade{{{0}, {1}, {2}}});
    return cs;
}

}  // namespace

TEST_CASE("original propagation capacity averages propagated failures") {
    CascadeSet cs;
    cs.n_components = 4;
    cs.cascades = {Cascade{{{0}, {1}}}, Cascade{{{2, 3}}}};
    CHECK(original_propagation_capacity(cs, 2) == doctest::Approx(0.5));
    CHECK(original_propagation_capacity(cs, 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(original_propagation_capacity(cs, 0), ValidationError);
    CHECK_THROWS_AS(original_propagation_capacity(cs, 3), ValidationError);
}

TEST_CASE("link count curve and its tail deviations") {
    const CascadeSet cs = sure_chain_set(40);
    const LinkCountCurve curve = link_count_curve(cs, {10, 10, 20, 30, 40});
    CHECK(curve.link_counts == std::vector<std::size_t>{2, 2, 2, 2, 2});
    // duplicate grid entries evaluate identically
    CHECK(curve.link_counts[0] == curve.link_counts[1]);
    REQUIRE(curve.sigmas.size() == 3);
    for (double s : curve.sigmas) CHECK(s == doctest::Approx(0.0));
}

TEST_CASE("m_min picks the first stabilized grid point") {
    // counts 10, 20, 28, 30, 30, 30, 30, 30: the tail from the fourth
    // point on is flat, everything earlier still moves
    LinkCountCurve curve;
    curve.grid = {100, 200, 300, 400, 500, 600, 700, 800};
    curve.link_counts = {10, 20, 28, 30, 30, 30, 30, 30};
    for (std::size_t i = 0; i + 2 < curve.link_counts.size(); ++i) {
        std::vector<double> tail(curve.link_counts.begin() + static_cast<std::ptrdiff_t>(i),
                                 curve.link_counts.end());
        double mu = 0.0;
        for (double v : tail) mu += v;
        mu /= static_cast<double>(tail.size());
        double ss = 0.0;
        for (double v : tail) ss += (v - mu) * (v - mu);
        curve.sigmas.push_back(std::sqrt(ss / static_cast<double>(tail.size() - 1)));
    }

    const MMinResult r = find_m_min(curve, 0.01);
    CHECK(r.grid_index == 3);
    CHECK(r.m_min == 400);

    // a curve that keeps drifting never qualifies
    LinkCountCurve drifting;
    drifting.grid = {100, 200, 300, 400, 500, 600};
    drifting.link_counts = {10, 20, 30, 40, 50, 60};
    for (std::size_t i = 0; i + 2 < drifting.link_counts.size(); ++i)
        drifting.sigmas.push_back(10.0);
    CHECK_THROWS_AS(find_m_min(drifting, 0.01), ValidationError);

    LinkCountCurve tiny;
    tiny.sigmas = {0.0, 0.0};
    CHECK_THROWS_AS(find_m_min(tiny, 0.01), ValidationError);
}

TEST_CASE("mismatch is exact on a deterministic chain") {
    // b entries estimate to exactly 1, so the network predicts exactly two
    // propagated failures per cascade, the same as the data shows
    const CascadeSet cs = sure_chain_set(50);
    const MismatchResult r = mismatch(cs, 50, 0.01);
    CHECK(r.pc_original == doctest::Approx(2.0));
    CHECK(r.pc_network == doctest::Approx(2.0));
    CHECK(r.delta == doctest::Approx(0.0));
    CHECK(r.satisfied);
}

TEST_CASE("mu search: ascent, descent, counters") {
    // satisfied exactly for m_u >= 4250
    MismatchProbe probe = [](std::size_t m_u) {
        MismatchResult r;
        r.satisfied = m_u >= 4250;
        return r;
    };
    MuSearchParams params;
    params.epsilon = 0.01;
    params.step_up = 1000;
    params.step_down = 100;
    params.start = 100;

    const MuSearchTrace trace = find_mu_min(probe, 100000, params);
    CHECK(trace.result == 4300);
    CHECK(trace.down_steps == 9);
    CHECK(trace.unnecessary_cascades == 900);
    CHECK(!trace.stopped_at_floor);
    // ascent probes 100, 1100, ..., 5100; descent 5000 down to 4200
    REQUIRE(trace.visited.size() == 6 + 9);
    CHECK(trace.visited[0].m_u == 100);
    CHECK(trace.visited[5].m_u == 5100);
    CHECK(trace.visited[6].m_u == 5000);
    CHECK(trace.visited.back().m_u == 4200);
    CHECK(!trace.visited.back().result.satisfied);
    // the value one fine step below the result failed its probe
    CHECK(trace.visited[trace.visited.size() - 2].result.satisfied);
}

TEST_CASE("mu search stops at the floor when already satisfied") {
    MismatchProbe probe = [](std::size_t) {
        MismatchResult r;
        r.satisfied = true;
        return r;
    };
    MuSearchParams params;
    params.step_up = 1000;
    params.step_down = 100;
    params.start = 100;
    const MuSearchTrace trace = find_mu_min(probe, 100000, params);
    CHECK(trace.result == 100);
    CHECK(trace.stopped_at_floor);
    CHECK(trace.down_steps == 0);
}

TEST_CASE("mu search reports exhaustion as an error") {
    MismatchProbe probe = [](std::size_t) {
        MismatchResult r;
        r.satisfied = false;
        return r;
    };
    MuSearchParams params;
    params.step_up = 1000;
    params.step_down = 100;
    params.start = 100;
    CHECK_THROWS_AS(find_mu_min(probe, 2500, params), ValidationError);
    CHECK_THROWS_AS(find_mu_min(probe, 50, params), ValidationError);
}

TEST_CASE("mu search over real cascades finds the exact chain consistent") {
    const CascadeSet cs = sure_chain_set(500);
    MuSearchParams params;
    params.epsilon = 0.01;
    params.step_up = 100;
    params.step_down = 10;
    params.start = 10;
    const MuSearchTrace trace = find_mu_min(cs, params);
    // deterministic data is consistent from the very start
    CHECK(trace.result == 10);
    CHECK(trace.stopped_at_floor);
}
