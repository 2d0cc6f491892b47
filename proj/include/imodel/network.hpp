#pragma once

#include <cstdint>
#include <vector>

#include "imodel/quantify.hpp"

namespace imodel {

struct Link {
    ComponentId source = 0;
    ComponentId target = 0;
    double probability = 0.0;

    bool operator==(const Link&) const = default;
};

// Directed interaction network: one link per nonzero off-diagonal b[i][j].
// Links are sorted by (source, target); out_edges mirrors them per source.
struct InteractionNetwork {
    ComponentId n = 0;
    std::vector<Link> links;
    std::vector<std::vector<Link>> out_edges;

    bool has_link(ComponentId source, ComponentId target) const;
};

InteractionNetwork build_network(const InteractionMatrix& m);

// How many source failures feed a link's weight: every failure of the source
// (total) or only its initial failures (gen0).
enum class WeightMode { total, gen0 };

struct DagVertex {
    ComponentId id = 0;
    // Root's parent is itself; everyone else keeps exactly one parent from
    // the previous level, the one carrying the largest expected flow
    // (smallest parent id on exact ties).
    ComponentId parent = 0;
    double edge_probability = 0.0;
};

// Acyclic layered subgraph rooted at a link's target with the link's source
// removed everywhere. Level 0 is the root alone; level t+1 holds vertices
// first reached from level t. Vertices unreachable from the root, edges
// within a level and edges pointing back toward the root are all dropped.
struct LayeredDag {
    ComponentId root = 0;
    ComponentId excluded = 0;
    std::vector<std::vector<DagVertex>> levels;
    // Vertices whose parent had to be picked among several candidates.
    std::size_t multi_parent_children = 0;

    std::size_t vertex_count() const;
    bool contains(ComponentId v) const;
};

// Throws ValidationError if l is not a link of the network.
LayeredDag layered_subgraph(const InteractionNetwork& net, const Link& l);

// Expected failures per vertex of the layered subgraph, then their sum: the
// link's weight. The root gets source_failures * l.probability; each child
// its parent's value times the connecting probability.
double link_index(const InteractionNetwork& net, const InteractionCounts& counts, const Link& l,
                  WeightMode mode);

struct WeightedLink {
    ComponentId source = 0;
    ComponentId target = 0;
    double probability = 0.0;
    double weight = 0.0;

    bool operator==(const WeightedLink&) const = default;
};

// Every link of the network with its weight, in (source, target) order.
std::vector<WeightedLink> weigh_links(const InteractionNetwork& net,
                                      const InteractionCounts& counts, WeightMode mode);

// Links whose weight reaches epsilon times the maximum (inclusive), sorted
// by descending weight, ties by (source, target). Throws on empty input.
std::vector<WeightedLink> key_links(const std::vector<WeightedLink>& weighted, double epsilon);

struct VertexStrengths {
    std::vector<double> out;  // sum of weights of outgoing links
    std::vector<double> in;   // sum of weights of incoming links
};

VertexStrengths strengths(ComponentId n, const std::vector<WeightedLink>& weighted);

// Components whose out-strength reaches epsilon times the maximum, sorted by
// descending strength, ties by id. Throws when every strength is zero.
std::vector<ComponentId> key_components(const std::vector<double>& out_strength, double epsilon);

// Mean propagated failures per cascade as the network predicts it: the sum
// of all gen0-mode link weights over the number of cascades used.
double network_propagation_capacity(const std::vector<WeightedLink>& gen0_weighted,
                                    std::int64_t m_used);

}  // namespace imodel
