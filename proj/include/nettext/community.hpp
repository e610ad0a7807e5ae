#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nettext/wordgraph.hpp"

namespace nettext {

// Assignment of every node to a community. Ids are dense: 0..count-1,
// numbered by first appearance in node order.
struct Partition {
    std::vector<int> community;
    int count = 0;

    static Partition singletons(int n);
    static Partition single_group(int n);
    // Renumbers arbitrary labels densely by first appearance.
    static Partition from_labels(std::vector<int> labels);

    bool operator==(const Partition&) const = default;
};

// Weighted modularity
//   M = (1/2m) sum_ij (A_ij - gamma * k_i k_j / 2m) delta(c_i, c_j)
// with k_i the weighted degree and m the total edge weight, evaluated as
//   M = sum_c [ W_in(c)/m - gamma * (K(c)/2m)^2 ].
// Rejects empty graphs, graphs with zero total weight and partitions that
// do not cover every node.
double modularity(const WordGraph& graph, const Partition& partition, double resolution = 1.0);

// Seeded greedy optimization: repeated single-node moves accepting the best
// positive gain, then aggregation of communities into supernodes, until no
// move improves. The seed drives the node visit order; identical inputs and
// seed give identical output. If level_trace is non-null it receives the
// modularity after each level's local-move phase (nondecreasing).
// Guarantees dense community ids and a result no worse than both the
// singleton and the single-community partition at the given resolution.
Partition louvain(const WordGraph& graph, double resolution, std::uint32_t seed,
                  std::vector<double>* level_trace = nullptr);

// Exhaustive search over all set partitions, feasible up to 12 nodes.
// Ties within 1e-12 prefer fewer communities. Returns the partition and
// its modularity at resolution 1.
std::pair<Partition, double> exact_partition(const WordGraph& graph);

struct CommunityGroup {
    int id = 0;
    std::size_t size = 0;
    double size_percent = 0.0;  // rounded to 2 decimals
    std::vector<std::string> terms;

    bool operator==(const CommunityGroup&) const = default;
};

struct CommunitySummary {
    int community_count = 0;
    double modularity = 0.0;
    std::vector<CommunityGroup> groups;  // descending size, ascending id on ties

    bool operator==(const CommunitySummary&) const = default;
};

CommunitySummary summarize(const WordGraph& graph, const Partition& partition);

namespace detail {

// Working graph for the optimizer: collapsed self-loop weights appear when
// communities are aggregated. Exposed for tests.
struct LouvainGraph {
    int n = 0;
    double m = 0.0;  // sum of edge weights plus self weights
    std::vector<std::vector<std::pair<int, double>>> adj;  // no self entries
    std::vector<double> self_weight;
    std::vector<double> strength;  // k_i = sum of incident weights + 2*self

    static LouvainGraph from_graph(const WordGraph& graph);
    LouvainGraph aggregate(const std::vector<int>& community, int count) const;
    double modularity(const std::vector<int>& community, int count, double resolution) const;
    // Recomputes strengths and m from adj and self_weight.
    void refresh();
};

}  // namespace detail

}  // namespace nettext
