#include "nettext/wordgraph.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "nettext/util.hpp"

namespace nettext {

void WordGraph::finish(std::vector<Edge>&& edges) {
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    edges_ = std::move(edges);
    adjacency_.assign(terms_.size(), {});
    total_weight_ = 0.0;
    for (const auto& e : edges_) {
        adjacency_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.weight);
        adjacency_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.weight);
        total_weight_ += e.weight;
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

WordGraph WordGraph::from_pairs(const std::vector<WordPair>& pairs, bool prune_isolated) {
    (void)prune_isolated;  // pairs cannot produce isolated nodes
    std::set<std::string> term_set;
    for (const auto& p : pairs) {
        if (p.weight < 1) throw Error("pair weight must be at least 1: " + p.a + "-" + p.b);
        if (p.a == p.b) throw Error("pair endpoints must differ: " + p.a);
        term_set.insert(p.a);
        term_set.insert(p.b);
    }
    WordGraph g;
    g.terms_.assign(term_set.begin(), term_set.end());
    std::unordered_map<std::string_view, int> index;
    index.reserve(g.terms_.size());
    for (std::size_t i = 0; i < g.terms_.size(); ++i)
        index.emplace(g.terms_[i], static_cast<int>(i));
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& p : pairs) {
        int u = index.at(p.a);
        int v = index.at(p.b);
        if (u > v) std::swap(u, v);
        if (!seen.emplace(u, v).second) throw Error("duplicate pair: " + p.a + "-" + p.b);
        edges.push_back({u, v, static_cast<double>(p.weight)});
    }
    g.finish(std::move(edges));
    return g;
}

WordGraph WordGraph::from_edges(std::vector<std::string> terms, std::vector<Edge> edges,
                                bool prune_isolated) {
    {
        std::set<std::string_view> unique;
        for (const auto& t : terms) {
            if (t.empty()) throw Error("graph node term must not be empty");
            if (!unique.insert(t).second) throw Error("duplicate graph node term: '" + t + "'");
        }
    }
    const int n = static_cast<int>(terms.size());
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw Error("edge endpoint out of range");
        if (e.u == e.v) throw Error("self-loops are not allowed: node " + terms[static_cast<std::size_t>(e.u)]);
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!(e.weight > 0.0)) throw Error("edge weight must be positive");
        if (!seen.emplace(e.u, e.v).second)
            throw Error("duplicate edge: " + terms[static_cast<std::size_t>(e.u)] + "-" +
                        terms[static_cast<std::size_t>(e.v)]);
    }
    if (prune_isolated) {
        std::vector<bool> used(terms.size(), false);
        for (const auto& e : edges) {
            used[static_cast<std::size_t>(e.u)] = true;
            used[static_cast<std::size_t>(e.v)] = true;
        }
        std::vector<int> remap(terms.size(), -1);
        std::vector<std::string> kept;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (!used[i]) continue;
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(std::move(terms[i]));
        }
        for (auto& e : edges) {
            e.u = remap[static_cast<std::size_t>(e.u)];
            e.v = remap[static_cast<std::size_t>(e.v)];
        }
        terms = std::move(kept);
    }
    WordGraph g;
    g.terms_ = std::move(terms);
    g.finish(std::move(edges));
    return g;
}

std::optional<int> WordGraph::find(std::string_view term) const {
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i] == term) return static_cast<int>(i);
    return std::nullopt;
}

double WordGraph::weight(int u, int v) const {
    const auto& adj = adjacency_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(adj.begin(), adj.end(), v,
                               [](const std::pair<int, double>& e, int node) { return e.first < node; });
    if (it != adj.end() && it->first == v) return it->second;
    return 0.0;
}

std::vector<NodeMetrics> node_metrics(const WordGraph& graph) {
    std::vector<NodeMetrics> metrics(static_cast<std::size_t>(graph.node_count()));
    for (int node = 0; node < graph.node_count(); ++node) {
        const auto& adj = graph.neighbors(node);
        auto& m = metrics[static_cast<std::size_t>(node)];
        m.degree = static_cast<int>(adj.size());
        for (const auto& [_, w] : adj) m.weighted_degree += w;
    }
    return metrics;
}

double density(const WordGraph& graph) {
    const double n = graph.node_count();
    if (graph.node_count() < 2)
        throw Error("density is undefined for graphs with fewer than 2 nodes");
    return 2.0 * static_cast<double>(graph.edge_count()) / (n * (n - 1.0));
}

}  // namespace nettext
