#include <doctest.h>

#include <cmath>

#include "imodel/errors.hpp"
#include "imodel/rng.hpp"
#include "imodel/stats.hpp"

using namespace imodel;

namespace {

CascadeSet totals_set(std::initializer_list<std::initializer_list<int>> shapes) {
    // builds cascades with the requested generation sizes out of distinct ids
    CascadeSet cs;
    ComponentId n = 0;
    for (auto shape : shapes) {
        Cascade c;
        ComponentId next = 0;
        for (int size : shape) {
            std::vector<ComponentId> g;
            for (int k = 0; k < size; ++k) g.push_back(next++);
            c.generations.push_back(std::move(g));
        }
        n = std::max(n, next);
        cs.cascades.push_back(std::move(c));
    }
    cs.n_components = n;
    return cs;
}

}  // namespace

TEST_CASE("outage distributions") {
    const CascadeSet cs = totals_set({{1}, {1}, {1, 1}});
    const OutageDistribution d = outage_distribution(cs);
    CHECK(d.samples == 3);
    CHECK(d.at(1) == doctest::Approx(2.0 / 3.0));
    CHECK(d.at(2) == doctest::Approx(1.0 / 3.0));
    CHECK(d.at(3) == 0.0);

    const OutageDistribution d0 = initial_outage_distribution(cs);
    CHECK(d0.at(1) == doctest::Approx(1.0));

    double sum = 0.0;
    for (const auto& [bin, p] : d.probability) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("offspring mean estimate") {
    // totals 3 and 1, children 1 and 0
    const CascadeSet cs = totals_set({{2, 1}, {1}});
    CHECK(estimate_lambda(cs) == doctest::Approx(0.25));

    // invariant under reordering
    const CascadeSet swapped = totals_set({{1}, {2, 1}});
    CHECK(estimate_lambda(swapped) == doctest::Approx(0.25));

    // strictly below 1 by construction (generation 0 is never empty)
    const CascadeSet deep = totals_set({{1, 3, 5, 2}});
    CHECK(estimate_lambda(deep) < 1.0);

    CHECK_THROWS_AS(estimate_lambda(CascadeSet{}), ValidationError);
}

TEST_CASE("distribution comparison flags only real disagreement") {
    const CascadeSet a = totals_set({{1}, {1}, {1, 1}, {1, 1}});
    const DistributionComparison same =
        compare_distributions(outage_distribution(a), outage_distribution(a));
    CHECK(same.all_ok);
    CHECK(same.bins.size() == 2);

    // 0.5/0.5 vs 0.98/0.02 over a decent sample count must fail
    OutageDistribution x, y;
    x.samples = 1000;
    x.probability = {{1, 0.5}, {2, 0.5}};
    y.samples = 1000;
    y.probability = {{1, 0.98}, {2, 0.02}};
    const DistributionComparison diff = compare_distributions(x, y);
    CHECK(!diff.all_ok);

    // bins below the floor on both sides are ignored
    OutageDistribution z = x;
    z.probability[99] = 1e-5;
    const DistributionComparison floored = compare_distributions(x, z);
    for (const auto& bc : floored.bins) CHECK(bc.bin != 99);
}

TEST_CASE("weight normalization rescales by the cascade-count ratio") {
    LinkWeights w = {{{0, 1}, 41.0}, {{1, 2}, 8.2}};
    const LinkWeights scaled = normalize_weights(w, 41000, 8000);
    CHECK(scaled.at({0, 1}) == doctest::Approx(8.0));
    CHECK(scaled.at({1, 2}) == doctest::Approx(1.6));
    CHECK(normalize_weights(w, 5000, 5000) == w);
    // scale there and back is the identity
    const LinkWeights round = normalize_weights(normalize_weights(w, 41000, 8000), 8000, 41000);
    CHECK(round.at({0, 1}) == doctest::Approx(41.0));
    CHECK_THROWS_AS(normalize_weights(w, 0, 10), ValidationError);
}

TEST_CASE("similarity of identical maps is all ones") {
    const LinkWeights w = {{{0, 1}, 10.0}, {{2, 3}, 5.0}};
    const SimilarityReport rep = similarity(w, w);
    CHECK(rep.shared == 2);
    CHECK(rep.original_only == 0);
    CHECK(rep.simulated_only == 0);
    for (auto s : {rep.s1, rep.s2, rep.s3, rep.s4, rep.s5}) {
        REQUIRE(s.has_value());
        CHECK(*s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("similarity hand example") {
    const LinkWeights ori = {{{0, 1}, 10.0}, {{2, 3}, 5.0}};
    const LinkWeights sim = {{{0, 1}, 8.0}, {{4, 5}, 2.0}};
    const SimilarityReport rep = similarity(ori, sim);
    CHECK(rep.shared == 1);
    CHECK(rep.original_only == 1);
    CHECK(rep.simulated_only == 1);
    CHECK(*rep.s1 == doctest::Approx(10.0 / 15.0).epsilon(1e-12));
    CHECK(*rep.s2 == doctest::Approx(10.0 / 15.0).epsilon(1e-12));
    CHECK(*rep.s3 == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(*rep.s4 == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(*rep.s5 == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("similarity scaling law and swap symmetry") {
    const LinkWeights w = {{{0, 1}, 4.0}, {{1, 2}, 6.0}, {{2, 0}, 1.0}};
    LinkWeights scaled;
    const double c = 2.5;
    for (const auto& [k, v] : w) scaled[k] = c * v;

    const SimilarityReport rep = similarity(w, scaled);
    CHECK(*rep.s1 == doctest::Approx(c).epsilon(1e-12));
    CHECK(*rep.s2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*rep.s3 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*rep.s4 == doctest::Approx(c).epsilon(1e-12));
    CHECK(*rep.s5 == doctest::Approx(c).epsilon(1e-12));

    const LinkWeights ori = {{{0, 1}, 10.0}, {{2, 3}, 5.0}};
    const LinkWeights sim = {{{0, 1}, 8.0}, {{4, 5}, 2.0}};
    const SimilarityReport fwd = similarity(ori, sim);
    const SimilarityReport rev = similarity(sim, ori);
    CHECK(*rev.s2 == doctest::Approx(*fwd.s3).epsilon(1e-12));
    CHECK(*rev.s3 == doctest::Approx(*fwd.s2).epsilon(1e-12));
    CHECK(*rev.s1 == doctest::Approx(1.0 / *fwd.s1).epsilon(1e-12));
    CHECK(*rev.s4 == doctest::Approx(1.0 / *fwd.s4).epsilon(1e-12));
}

TEST_CASE("similarity reports undefined indices as absent") {
    // disjoint supports: nothing shared
    const SimilarityReport disjoint =
        similarity({{{0, 1}, 3.0}}, {{{1, 2}, 3.0}});
    CHECK(disjoint.shared == 0);
    CHECK(!disjoint.s4.has_value());
    CHECK(!disjoint.s5.has_value());
    CHECK(*disjoint.s2 == doctest::Approx(0.0));
    CHECK(*disjoint.s3 == doctest::Approx(0.0));

    // all-original weights zero
    const SimilarityReport zeros =
        similarity({{{0, 1}, 0.0}}, {{{0, 1}, 2.0}});
    CHECK(!zeros.s1.has_value());
    CHECK(!zeros.s2.has_value());
    CHECK(!zeros.s4.has_value());
    CHECK(!zeros.s5.has_value());
}

TEST_CASE("ccdf: exact points low, power-of-two bins high") {
    const std::vector<double> values = {1, 1, 2, 40, 50, 100};
    const auto points = ccdf_points(values, 8);  // two implicit zeros
    REQUIRE(points.size() == 5);
    CHECK(points[0].value == 0.0);
    CHECK(points[0].probability == doctest::Approx(1.0));
    CHECK(points[1].value == 1.0);
    CHECK(points[1].probability == doctest::Approx(0.75));
    CHECK(points[2].value == 2.0);
    CHECK(points[2].probability == doctest::Approx(0.5));
    // (32, 64]: values 40 and 50, mean 45, P(X > 32) = 3/8
    CHECK(points[3].value == doctest::Approx(45.0));
    CHECK(points[3].probability == doctest::Approx(0.375));
    // (64, 128]: value 100, P(X > 64) = 1/8
    CHECK(points[4].value == doctest::Approx(100.0));
    CHECK(points[4].probability == doctest::Approx(0.125));
}

TEST_CASE("ccdf probabilities never increase along the value axis") {
    std::vector<double> values;
    Rng rng(31);
    for (int k = 0; k < 500; ++k)
        values.push_back(std::floor(uniform01(rng) * uniform01(rng) * 300.0));
    const auto points = ccdf_points(values, 600);
    for (std::size_t k = 1; k < points.size(); ++k) {
        CHECK(points[k].value > points[k - 1].value);
        CHECK(points[k].probability <= points[k - 1].probability);
    }
    CHECK_THROWS_AS(ccdf_points(values, 10), ValidationError);
    CHECK_THROWS_AS(ccdf_points({-1.0}, 5), ValidationError);
}

TEST_CASE("sample statistics") {
    CHECK(mean({1.0, 2.0, 3.0}) == doctest::Approx(2.0));
    CHECK(sample_stddev({2.0, 4.0}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(sample_stddev({5.0}) == 0.0);
    CHECK(sample_stddev({}) == 0.0);
}
