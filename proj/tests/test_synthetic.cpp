#include <doctest.h>

#include "imodel/errors.hpp"
#include "imodel/quantify.hpp"
#include "imodel/synthetic.hpp"

using namespace imodel;

TEST_CASE("chain ground truth") {
    GroundTruthSpec spec;
    spec.kind = TopologyKind::chain;
    spec.n = 5;
    spec.b_min = spec.b_max = 0.5;
    spec.tau_min = spec.tau_max = 0.1;
    spec.seed = 1;
    const GroundTruth gt = make_ground_truth(spec);
    CHECK(gt.matrix.b.nonzero_count() == 4);
    for (ComponentId v = 1; v < 5; ++v) CHECK(gt.matrix.b.get(v - 1, v) == 0.5);
    for (double t : gt.matrix.tau) CHECK(t == 0.1);
}

TEST_CASE("tree ground truth hangs every vertex under an earlier one") {
    GroundTruthSpec spec;
    spec.kind = TopologyKind::tree;
    spec.n = 31;
    spec.b_min = 0.2;
    spec.b_max = 0.8;
    spec.seed = 9;
    const GroundTruth gt = make_ground_truth(spec);
    CHECK(gt.matrix.b.nonzero_count() == 30);  // exactly n - 1 links
    // each column past 0 has exactly one parent, and parent id < child id
    std::vector<int> parents(31, 0);
    gt.matrix.b.for_each([&](ComponentId i, ComponentId j, double b) {
        CHECK(i < j);
        CHECK(b >= 0.2);
        CHECK(b <= 0.8);
        ++parents[j];
    });
    for (ComponentId v = 1; v < 31; ++v) CHECK(parents[v] == 1);

    // same seed reproduces the same system
    CHECK(make_ground_truth(spec).matrix == gt.matrix);
    spec.seed = 10;
    CHECK(make_ground_truth(spec).matrix != gt.matrix);
}

TEST_CASE("random sparse ground truth keeps row sums subcritical") {
    GroundTruthSpec spec;
    spec.kind = TopologyKind::random_sparse;
    spec.n = 30;
    spec.density = 0.05;
    spec.b_min = 0.15;
    spec.b_max = 0.45;
    spec.tau_min = 0.005;
    spec.tau_max = 0.02;
    spec.seed = 4;
    const GroundTruth gt = make_ground_truth(spec);
    CHECK(gt.matrix.b.nonzero_count() > 10);
    for (ComponentId i = 0; i < 30; ++i) {
        double sum = 0.0;
        for (const auto& e : gt.matrix.b.row(i)) {
            CHECK(e.col != i);
            sum += e.value;
        }
        CHECK(sum < 1.0);
    }
    for (double t : gt.matrix.tau) {
        CHECK(t >= 0.005);
        CHECK(t <= 0.02);
    }
}

TEST_CASE("ground truth specs are checked") {
    GroundTruthSpec spec;
    spec.n = 1;
    CHECK_THROWS_AS(make_ground_truth(spec), ValidationError);
    spec.n = 5;
    spec.b_min = 0.9;
    spec.b_max = 0.2;
    CHECK_THROWS_AS(make_ground_truth(spec), ValidationError);
    spec.b_min = spec.b_max = 0.5;
    spec.tau_max = 1.5;
    CHECK_THROWS_AS(make_ground_truth(spec), ValidationError);

    // an impossible row-sum constraint gives up with an explanation
    GroundTruthSpec dense;
    dense.kind = TopologyKind::random_sparse;
    dense.n = 20;
    dense.density = 1.0;
    dense.b_min = dense.b_max = 0.9;
    CHECK_THROWS_AS(make_ground_truth(dense), ValidationError);
}

TEST_CASE("generated cascades respect the requested count and validate") {
    GroundTruthSpec spec;
    spec.kind = TopologyKind::tree;
    spec.n = 10;
    spec.b_min = 0.3;
    spec.b_max = 0.6;
    spec.tau_min = spec.tau_max = 0.05;
    spec.seed = 12;
    const GroundTruth gt = make_ground_truth(spec);
    const SimResult r = generate_cascades(gt, 500, 77);
    CHECK(r.cascades.size() == 500);
    CHECK_NOTHROW(validate(r.cascades));
}

TEST_CASE("recovery report on perfectly recovered data") {
    GroundTruthSpec spec;
    spec.kind = TopologyKind::chain;
    spec.n = 3;
    spec.b_min = spec.b_max = 1.0;  // deterministic full propagation
    spec.tau_min = spec.tau_max = 0.0;
    spec.seed = 2;
    GroundTruth gt = make_ground_truth(spec);
    gt.matrix.tau = {1.0, 0.0, 0.0};

    const SimResult r = generate_cascades(gt, 100, 5);
    const QuantifyResult q = quantify(r.cascades);
    const RecoveryReport rep = recovery_report(q.matrix, q.counts, gt, 50);
    CHECK(rep.supported_true_links == 2);
    CHECK(rep.max_abs_error == doctest::Approx(0.0));
    CHECK(rep.precision == doctest::Approx(1.0));
    CHECK(rep.recall == doctest::Approx(1.0));
}

TEST_CASE("recovery report ignores unsupported sources") {
    GroundTruthSpec spec;
    spec.kind = TopologyKind::chain;
    spec.n = 3;
    spec.b_min = spec.b_max = 0.5;
    spec.tau_min = spec.tau_max = 0.2;
    spec.seed = 3;
    const GroundTruth gt = make_ground_truth(spec);
    const SimResult r = generate_cascades(gt, 50, 6);
    const QuantifyResult q = quantify(r.cascades);
    // a support bar nothing clears: vacuous truth, zero errors
    const RecoveryReport rep = recovery_report(q.matrix, q.counts, gt, 1000000);
    CHECK(rep.supported_true_links == 0);
    CHECK(rep.supported_estimated_links == 0);
    CHECK(rep.max_abs_error == 0.0);
    CHECK(rep.precision == 1.0);
    CHECK(rep.recall == 1.0);
}

TEST_CASE("topology names round trip") {
    for (auto kind :
         {TopologyKind::chain, TopologyKind::tree, TopologyKind::random_sparse})
        CHECK(parse_topology(topology_name(kind)) == kind);
    CHECK_THROWS_AS(parse_topology("lattice"), ValidationError);
}
