#include "imodel/network.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "imodel/errors.hpp"

namespace imodel {

namespace {

const Link* find_link(const InteractionNetwork& net, ComponentId source, ComponentId target) {
    if (source >= net.out_edges.size()) return nullptr;
    const auto& row = net.out_edges[source];
    auto it = std::lower_bound(row.begin(), row.end(), target,
                               [](const Link& e, ComponentId t) { return e.target < t; });
    return (it != row.end() && it->target == target) ? &*it : nullptr;
}

}  // namespace

bool InteractionNetwork::has_link(ComponentId source, ComponentId target) const {
    return find_link(*this, source, target) != nullptr;
}

InteractionNetwork build_network(const InteractionMatrix& m) {
    InteractionNetwork net;
    net.n = m.n();
    net.out_edges.resize(net.n);
    m.b.for_each([&](ComponentId i, ComponentId j, double p) {
        if (i == j) return;  // self-interactions carry no propagation
        Link l{i, j, p};
        net.links.push_back(l);
        net.out_edges[i].push_back(l);
    });
    return net;
}

std::size_t LayeredDag::vertex_count() const {
    std::size_t total = 0;
    for (const auto& level : levels) total += level.size();
    return total;
}

bool LayeredDag::contains(ComponentId v) const {
    for (const auto& level : levels)
        for (const auto& dv : level)
            if (dv.id == v) return true;
    return false;
}

LayeredDag layered_subgraph(const InteractionNetwork& net, const Link& l) {
    if (!net.has_link(l.source, l.target))
        throw ValidationError("no link " + std::to_string(l.source) + " -> " +
                              std::to_string(l.target) + " in the network");

    LayeredDag dag;
    dag.root = l.target;
    dag.excluded = l.source;
    dag.levels.push_back({DagVertex{l.target, l.target, 0.0}});

    std::vector<char> placed(net.n, 0);
    placed[l.source] = 1;  // the link's source is cut out entirely
    placed[l.target] = 1;
    // Flow relative to the root; the parent choice only compares products of
    // probabilities, so the root's absolute scale is irrelevant here.
    std::vector<double> flow(net.n, 0.0);
    flow[l.target] = 1.0;

    while (true) {
        struct Candidate {
            ComponentId parent = 0;
            double probability = 0.0;
            double flow = 0.0;
            std::size_t count = 0;
        };
        std::map<ComponentId, Candidate> frontier;
        for (const DagVertex& v : dag.levels.back()) {
            for (const Link& e : net.out_edges[v.id]) {
                if (placed[e.target]) continue;  // drops backward and same-level edges
                Candidate& cand = frontier[e.target];
                const double f = flow[v.id] * e.probability;
                ++cand.count;
                // Parents arrive in ascending id; strict > keeps the
                // smallest id on exact ties.
                if (cand.count == 1 || f > cand.flow) {
                    cand.parent = v.id;
                    cand.probability = e.probability;
                    cand.flow = f;
                }
            }
        }
        if (frontier.empty()) break;
        std::vector<DagVertex> level;
        level.reserve(frontier.size());
        for (const auto& [child, cand] : frontier) {
            placed[child] = 1;
            flow[child] = cand.flow;
            level.push_back(DagVertex{child, cand.parent, cand.probability});
            if (cand.count > 1) ++dag.multi_parent_children;
        }
        dag.levels.push_back(std::move(level));
    }
    return dag;
}

double link_index(const InteractionNetwork& net, const InteractionCounts& counts, const Link& l,
                  WeightMode mode) {
    const Link* actual = find_link(net, l.source, l.target);
    if (!actual)
        throw ValidationError("no link " + std::to_string(l.source) + " -> " +
                              std::to_string(l.target) + " in the network");
    const LayeredDag dag = layered_subgraph(net, *actual);
    const auto& source_counts = mode == WeightMode::total ? counts.n_total : counts.n_gen0;
    std::vector<double> expected(net.n, 0.0);
    expected[dag.root] =
        static_cast<double>(source_counts[actual->source]) * actual->probability;
    double index = 0.0;
    for (const auto& level : dag.levels) {
        for (const DagVertex& v : level) {
            if (v.id != dag.root) expected[v.id] = expected[v.parent] * v.edge_probability;
            index += expected[v.id];
        }
    }
    return index;
}

std::vector<WeightedLink> weigh_links(const InteractionNetwork& net,
                                      const InteractionCounts& counts, WeightMode mode) {
    std::vector<WeightedLink> out;
    out.reserve(net.links.size());
    for (const Link& l : net.links)
        out.push_back(WeightedLink{l.source, l.target, l.probability,
                                   link_index(net, counts, l, mode)});
    return out;
}

std::vector<WeightedLink> key_links(const std::vector<WeightedLink>& weighted, double epsilon) {
    if (weighted.empty()) throw ValidationError("cannot rank an empty link set");
    double max_weight = 0.0;
    for (const auto& w : weighted) max_weight = std::max(max_weight, w.weight);
    const double threshold = epsilon * max_weight;
    std::vector<WeightedLink> keys;
    for (const auto& w : weighted)
        if (w.weight >= threshold) keys.push_back(w);
    std::sort(keys.begin(), keys.end(), [](const WeightedLink& a, const WeightedLink& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    return keys;
}

VertexStrengths strengths(ComponentId n, const std::vector<WeightedLink>& weighted) {
    VertexStrengths s;
    s.out.assign(n, 0.0);
    s.in.assign(n, 0.0);
    for (const auto& w : weighted) {
        s.out[w.source] += w.weight;
        s.in[w.target] += w.weight;
    }
    return s;
}

std::vector<ComponentId> key_components(const std::vector<double>& out_strength, double epsilon) {
    double max_strength = 0.0;
    for (double s : out_strength) max_strength = std::max(max_strength, s);
    if (max_strength <= 0.0)
        throw ValidationError("every out-strength is zero; no components to rank");
    const double threshold = epsilon * max_strength;
    std::vector<ComponentId> keys;
    for (ComponentId i = 0; i < out_strength.size(); ++i)
        if (out_strength[i] >= threshold) keys.push_back(i);
    std::sort(keys.begin(), keys.end(), [&](ComponentId a, ComponentId b) {
        if (out_strength[a] != out_strength[b]) return out_strength[a] > out_strength[b];
        return a < b;
    });
    return keys;
}

double network_propagation_capacity(const std::vector<WeightedLink>& gen0_weighted,
                                    std::int64_t m_used) {
    if (m_used <= 0) throw ValidationError("propagation capacity needs at least one cascade");
    double total = 0.0;
    for (const auto& w : gen0_weighted) total += w.weight;
    return total / static_cast<double>(m_used);
}

}  // namespace imodel
