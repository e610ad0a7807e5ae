#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nettext/association.hpp"

namespace nettext {

// Undirected weighted co-occurrence graph. Nodes are terms; edge weights
// are co-occurrence counts (or arbitrary positive weights when built from
// raw edges). No self-loops, no parallel edges.
class WordGraph {
public:
    struct Edge {
        int u = 0;
        int v = 0;  // u < v
        double weight = 1.0;

        bool operator==(const Edge&) const = default;
    };

    WordGraph() = default;

    // Nodes are the terms appearing in the pairs, indexed in lexicographic
    // order, so the graph does not depend on pair order. Every node has at
    // least one incident edge; prune_isolated is accepted for symmetry with
    // from_edges.
    static WordGraph from_pairs(const std::vector<WordPair>& pairs, bool prune_isolated = true);

    // Keeps the given term order. Endpoints are normalized to u < v;
    // self-loops, duplicate edges and non-positive weights are rejected.
    static WordGraph from_edges(std::vector<std::string> terms, std::vector<Edge> edges,
                                bool prune_isolated = false);

    int node_count() const { return static_cast<int>(terms_.size()); }
    std::size_t edge_count() const { return edges_.size(); }
    double total_weight() const { return total_weight_; }  // m, the sum of edge weights

    const std::string& term(int node) const { return terms_[static_cast<std::size_t>(node)]; }
    const std::vector<std::string>& terms() const { return terms_; }
    std::optional<int> find(std::string_view term) const;

    const std::vector<Edge>& edges() const { return edges_; }
    // Sorted by neighbor index.
    const std::vector<std::pair<int, double>>& neighbors(int node) const {
        return adjacency_[static_cast<std::size_t>(node)];
    }
    // A_uv, 0 when the edge is absent.
    double weight(int u, int v) const;

private:
    std::vector<std::string> terms_;
    std::vector<Edge> edges_;                                  // sorted by (u, v)
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    double total_weight_ = 0.0;

    void finish(std::vector<Edge>&& edges);
};

struct NodeMetrics {
    int degree = 0;
    double weighted_degree = 0.0;

    bool operator==(const NodeMetrics&) const = default;
};

std::vector<NodeMetrics> node_metrics(const WordGraph& graph);

// 2|E| / (|N| (|N|-1)); rejects graphs with fewer than 2 nodes.
double density(const WordGraph& graph);

}  // namespace nettext
