#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "imodel/cascade.hpp"
#include "imodel/network.hpp"

namespace imodel {

// Empirical distribution of a per-cascade count (total or initial outages).
struct OutageDistribution {
    std::map<std::int64_t, double> probability;
    std::int64_t samples = 0;

    double at(std::int64_t bin) const;

    bool operator==(const OutageDistribution&) const = default;
};

OutageDistribution outage_distribution(const CascadeSet& cs);
OutageDistribution initial_outage_distribution(const CascadeSet& cs);

// Offspring mean for cascades observed to extinction: failures in
// generations >= 1 over all failures. Throws when there are no failures.
double estimate_lambda(const CascadeSet& cs);

struct BinComparison {
    std::int64_t bin = 0;
    double p_a = 0.0;
    double p_b = 0.0;
    double standard_error = 0.0;  // two-sample binomial
    bool ok = true;
};

struct DistributionComparison {
    std::vector<BinComparison> bins;
    bool all_ok = true;
};

// Checks every bin where either side has mass >= min_probability:
// |p_a - p_b| must stay within z standard errors.
DistributionComparison compare_distributions(const OutageDistribution& a,
                                             const OutageDistribution& b,
                                             double min_probability = 1e-3, double z = 3.0);

using LinkKey = std::pair<ComponentId, ComponentId>;
using LinkWeights = std::map<LinkKey, double>;

LinkWeights to_weight_map(const std::vector<WeightedLink>& weighted);

// Rescales weights estimated from m_from cascades so they compare against
// weights estimated from m_to cascades.
LinkWeights normalize_weights(LinkWeights weights, std::int64_t m_from, std::int64_t m_to);

// Link-set and weight agreement between two estimates of the same network.
// Links partition into shared, original-only and simulated-only. Each index
// is absent when its denominator is zero (rather than dividing by zero):
//   s1  all simulated mass over all original mass
//   s2  shared original mass over all original mass
//   s3  shared simulated mass over all simulated mass
//   s4  shared simulated mass over shared original mass
//   s5  per-link ratio w_sim/w_ori averaged over shared links, each link
//       weighted by its share of the combined shared mass
struct SimilarityReport {
    std::optional<double> s1, s2, s3, s4, s5;
    std::size_t shared = 0;
    std::size_t original_only = 0;
    std::size_t simulated_only = 0;
};

SimilarityReport similarity(const LinkWeights& original, const LinkWeights& simulated);

// Complementary cumulative distribution of `values` padded with zeros up to
// `population`. Exact points for values <= 32; beyond that one point per
// power-of-two bin (2^k, 2^(k+1)] at the bin's mean value and P(X > 2^k).
struct CcdfPoint {
    double value = 0.0;
    double probability = 0.0;
};

std::vector<CcdfPoint> ccdf_points(std::vector<double> values, std::size_t population);

// Sample standard deviation (n - 1 in the denominator); 0 for fewer than
// two values.
double sample_stddev(const std::vector<double>& values);
double mean(const std::vector<double>& values);

}  // namespace imodel
