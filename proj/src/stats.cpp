#include "imodel/stats.hpp"

#include <algorithm>
#include <cmath>

#include "imodel/errors.hpp"

namespace imodel {

double OutageDistribution::at(std::int64_t bin) const {
    auto it = probability.find(bin);
    return it == probability.end() ? 0.0 : it->second;
}

namespace {

OutageDistribution distribution_of(const CascadeSet& cs, bool initial_only) {
    OutageDistribution d;
    d.samples = static_cast<std::int64_t>(cs.size());
    std::map<std::int64_t, std::int64_t> counts;
    for (const auto& c : cs.cascades) {
        const std::size_t total =
            initial_only ? c.generations.front().size() : c.total_failures();
        ++counts[static_cast<std::int64_t>(total)];
    }
    for (const auto& [bin, count] : counts)
        d.probability[bin] = static_cast<double>(count) / static_cast<double>(d.samples);
    return d;
}

}  // namespace

OutageDistribution outage_distribution(const CascadeSet& cs) { return distribution_of(cs, false); }

OutageDistribution initial_outage_distribution(const CascadeSet& cs) {
    return distribution_of(cs, true);
}

double estimate_lambda(const CascadeSet& cs) {
    std::int64_t children = 0, total = 0;
    for (const auto& c : cs.cascades) {
        children += static_cast<std::int64_t>(c.propagated_failures());
        total += static_cast<std::int64_t>(c.total_failures());
    }
    if (total == 0) throw ValidationError("no failures at all; offspring mean undefined");
    return static_cast<double>(children) / static_cast<double>(total);
}

DistributionComparison compare_distributions(const OutageDistribution& a,
                                             const OutageDistribution& b,
                                             double min_probability, double z) {
    if (a.samples <= 0 || b.samples <= 0)
        throw ValidationError("cannot compare empty distributions");
    DistributionComparison cmp;
    std::vector<std::int64_t> bins;
    for (const auto& [bin, p] : a.probability)
        if (p >= min_probability) bins.push_back(bin);
    for (const auto& [bin, p] : b.probability)
        if (p >= min_probability) bins.push_back(bin);
    std::sort(bins.begin(), bins.end());
    bins.erase(std::unique(bins.begin(), bins.end()), bins.end());

    for (std::int64_t bin : bins) {
        BinComparison bc;
        bc.bin = bin;
        bc.p_a = a.at(bin);
        bc.p_b = b.at(bin);
        bc.standard_error =
            std::sqrt(bc.p_a * (1.0 - bc.p_a) / static_cast<double>(a.samples) +
                      bc.p_b * (1.0 - bc.p_b) / static_cast<double>(b.samples));
        bc.ok = std::abs(bc.p_a - bc.p_b) <= z * bc.standard_error;
        cmp.all_ok = cmp.all_ok && bc.ok;
        cmp.bins.push_back(bc);
    }
    return cmp;
}

LinkWeights to_weight_map(const std::vector<WeightedLink>& weighted) {
    LinkWeights map;
    for (const auto& w : weighted) map[{w.source, w.target}] = w.weight;
    return map;
}

LinkWeights normalize_weights(LinkWeights weights, std::int64_t m_from, std::int64_t m_to) {
    if (m_from <= 0 || m_to <= 0)
        throw ValidationError("weight normalization needs positive cascade counts");
    const double scale = static_cast<double>(m_to) / static_cast<double>(m_from);
    for (auto& [link, w] : weights) w *= scale;
    return weights;
}

SimilarityReport similarity(const LinkWeights& original, const LinkWeights& simulated) {
    SimilarityReport rep;
    double ori_all = 0.0, sim_all = 0.0;        // over L1 ∪ L2 and L1 ∪ L3
    double ori_shared = 0.0, sim_shared = 0.0;  // over L1
    double combined_shared = 0.0;
    bool shared_ori_zero_entry = false;

    for (const auto& [link, w_ori] : original) {
        ori_all += w_ori;
        auto it = simulated.find(link);
        if (it == simulated.end()) {
            ++rep.original_only;
        } else {
            ++rep.shared;
            ori_shared += w_ori;
            sim_shared += it->second;
            combined_shared += w_ori + it->second;
            shared_ori_zero_entry = shared_ori_zero_entry || w_ori == 0.0;
        }
    }
    for (const auto& [link, w_sim] : simulated) {
        sim_all += w_sim;
        if (!original.count(link)) ++rep.simulated_only;
    }

    if (ori_all > 0.0) {
        rep.s1 = sim_all / ori_all;
        rep.s2 = ori_shared / ori_all;
    }
    if (sim_all > 0.0) rep.s3 = sim_shared / sim_all;
    if (rep.shared > 0 && ori_shared > 0.0) rep.s4 = sim_shared / ori_shared;
    if (rep.shared > 0 && combined_shared > 0.0 && !shared_ori_zero_entry) {
        double s5 = 0.0;
        for (const auto& [link, w_ori] : original) {
            auto it = simulated.find(link);
            if (it == simulated.end()) continue;
            const double w_sim = it->second;
            s5 += (w_sim + w_ori) / combined_shared * (w_sim / w_ori);
        }
        rep.s5 = s5;
    }
    return rep;
}

std::vector<CcdfPoint> ccdf_points(std::vector<double> values, std::size_t population) {
    if (population < values.size())
        throw ValidationError("population smaller than the number of observed values");
    for (double v : values)
        if (v < 0.0) throw ValidationError("CCDF values must be nonnegative");
    std::sort(values.begin(), values.end());
    const double m = static_cast<double>(population);
    const std::size_t zeros = population - values.size();

    // Count of observations >= v, using the sorted order; implicit zeros
    // only matter for v = 0.
    auto tail_count = [&](double v) {
        auto it = std::lower_bound(values.begin(), values.end(), v);
        std::size_t c = static_cast<std::size_t>(values.end() - it);
        if (v <= 0.0) c += zeros;
        return c;
    };
    auto strictly_above = [&](double v) {
        auto it = std::upper_bound(values.begin(), values.end(), v);
        return static_cast<std::size_t>(values.end() - it);
    };

    std::vector<CcdfPoint> points;
    if (population == 0) return points;
    if (zeros > 0 && (values.empty() || values.front() != 0.0)) points.push_back({0.0, 1.0});

    for (std::size_t k = 0; k < values.size();) {
        const double v = values[k];
        if (v > 32.0) break;
        std::size_t next = k;
        while (next < values.size() && values[next] == v) ++next;
        points.push_back({v, static_cast<double>(tail_count(v)) / m});
        k = next;
    }

    // Beyond 32 one point per (2^k, 2^(k+1)] bin: the bin's mean value and
    // the probability of exceeding the bin's lower edge.
    double lo = 32.0;
    auto it = std::upper_bound(values.begin(), values.end(), lo);
    while (it != values.end()) {
        const double hi = lo * 2.0;
        double sum = 0.0;
        std::size_t count = 0;
        while (it != values.end() && *it <= hi) {
            sum += *it;
            ++count;
            ++it;
        }
        if (count > 0)
            points.push_back({sum / static_cast<double>(count),
                              static_cast<double>(strictly_above(lo)) / m});
        lo = hi;
    }
    return points;
}

double mean(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_stddev(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double mu = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace imodel
