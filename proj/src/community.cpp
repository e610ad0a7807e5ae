#include "nettext/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "nettext/util.hpp"

namespace nettext {

namespace {

// Floor for accepting a move, below which gains count as noise. Also the
// tie window of the exhaustive search.
constexpr double kGainEps = 1e-12;

void check_partition(const WordGraph& graph, const Partition& partition, const char* op) {
    if (graph.node_count() == 0)
        throw Error(std::string(op) + " is undefined for an empty graph");
    if (static_cast<int>(partition.community.size()) != graph.node_count())
        throw Error(std::string(op) + ": partition covers " +
                    std::to_string(partition.community.size()) + " nodes, graph has " +
                    std::to_string(graph.node_count()));
    if (partition.count <= 0) throw Error(std::string(op) + ": partition has no communities");
    for (int c : partition.community)
        if (c < 0 || c >= partition.count)
            throw Error(std::string(op) + ": community id " + std::to_string(c) +
                        " out of range [0, " + std::to_string(partition.count) + ")");
}

// Seeded Fisher-Yates, kept hand-rolled so the order is identical across
// platforms (std::shuffle is not).
std::vector<int> visit_order(int n, std::mt19937& rng) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng() % static_cast<std::uint32_t>(i + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    return order;
}

// Labels are already in [0, bound); renumbers densely by first appearance.
int renumber_bounded(std::vector<int>& labels, int bound) {
    std::vector<int> remap(static_cast<std::size_t>(bound), -1);
    int next = 0;
    for (auto& c : labels) {
        auto& r = remap[static_cast<std::size_t>(c)];
        if (r == -1) r = next++;
        c = r;
    }
    return next;
}

// One level of single-node moves. Every node is repeatedly offered the
// neighboring community with the best positive gain,
//   gain(u -> C) = w_{u,C}/m - gamma * k_u * K_C / (2 m^2),
// relative to standing alone, until a full sweep makes no move. `q` is
// maintained incrementally and verified against a recomputation by the
// caller. Returns whether anything moved.
bool local_moves(const detail::LouvainGraph& g, double resolution, std::mt19937& rng,
                 std::vector<int>& community, double& q) {
    const double m = g.m;
    std::vector<double> comm_strength(static_cast<std::size_t>(g.n), 0.0);
    for (int u = 0; u < g.n; ++u)
        comm_strength[static_cast<std::size_t>(community[static_cast<std::size_t>(u)])] +=
            g.strength[static_cast<std::size_t>(u)];
    std::vector<double> weight_to(static_cast<std::size_t>(g.n), 0.0);
    std::vector<int> candidates;
    const auto order = visit_order(g.n, rng);
    bool moved_any = false;
    for (;;) {
        int moves = 0;
        for (int u : order) {
            const int old_c = community[static_cast<std::size_t>(u)];
            candidates.clear();
            for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) {
                const int c = community[static_cast<std::size_t>(v)];
                if (weight_to[static_cast<std::size_t>(c)] == 0.0) candidates.push_back(c);
                weight_to[static_cast<std::size_t>(c)] += w;
            }
            const double ku = g.strength[static_cast<std::size_t>(u)];
            comm_strength[static_cast<std::size_t>(old_c)] -= ku;
            const double scale = resolution * ku / (2.0 * m * m);
            auto gain = [&](int c) {
                return weight_to[static_cast<std::size_t>(c)] / m -
                       scale * comm_strength[static_cast<std::size_t>(c)];
            };
            const double stay = gain(old_c);
            double best_gain = stay;
            int best_c = old_c;
            std::sort(candidates.begin(), candidates.end());
            for (int c : candidates) {
                if (c == old_c) continue;
                const double gc = gain(c);
                if (gc > best_gain + kGainEps) {
                    best_gain = gc;
                    best_c = c;
                }
            }
            comm_strength[static_cast<std::size_t>(best_c)] += ku;
            if (best_c != old_c) {
                community[static_cast<std::size_t>(u)] = best_c;
                q += best_gain - stay;
                ++moves;
            }
            for (int c : candidates) weight_to[static_cast<std::size_t>(c)] = 0.0;
        }
        if (moves == 0) break;
        moved_any = true;
    }
    return moved_any;
}

}  // namespace

Partition Partition::singletons(int n) {
    Partition p;
    p.community.resize(static_cast<std::size_t>(n));
    std::iota(p.community.begin(), p.community.end(), 0);
    p.count = n;
    return p;
}

Partition Partition::single_group(int n) {
    Partition p;
    p.community.assign(static_cast<std::size_t>(n), 0);
    p.count = n > 0 ? 1 : 0;
    return p;
}

Partition Partition::from_labels(std::vector<int> labels) {
    std::unordered_map<int, int> remap;
    int next = 0;
    for (auto& c : labels) {
        auto [it, inserted] = remap.emplace(c, next);
        if (inserted) ++next;
        c = it->second;
    }
    return {std::move(labels), next};
}

double modularity(const WordGraph& graph, const Partition& partition, double resolution) {
    check_partition(graph, partition, "modularity");
    const double m = graph.total_weight();
    if (!(m > 0.0)) throw Error("modularity is undefined for a graph with zero total weight");
    std::vector<double> intra(static_cast<std::size_t>(partition.count), 0.0);
    std::vector<double> strength(static_cast<std::size_t>(partition.count), 0.0);
    for (const auto& e : graph.edges()) {
        const int cu = partition.community[static_cast<std::size_t>(e.u)];
        const int cv = partition.community[static_cast<std::size_t>(e.v)];
        if (cu == cv) intra[static_cast<std::size_t>(cu)] += e.weight;
        strength[static_cast<std::size_t>(cu)] += e.weight;
        strength[static_cast<std::size_t>(cv)] += e.weight;
    }
    double q = 0.0;
    for (int c = 0; c < partition.count; ++c) {
        const double frac = strength[static_cast<std::size_t>(c)] / (2.0 * m);
        q += intra[static_cast<std::size_t>(c)] / m - resolution * frac * frac;
    }
    return q;
}

namespace detail {

LouvainGraph LouvainGraph::from_graph(const WordGraph& graph) {
    LouvainGraph g;
    g.n = graph.node_count();
    g.adj.resize(static_cast<std::size_t>(g.n));
    g.self_weight.assign(static_cast<std::size_t>(g.n), 0.0);
    for (int u = 0; u < g.n; ++u) g.adj[static_cast<std::size_t>(u)] = graph.neighbors(u);
    g.refresh();
    return g;
}

void LouvainGraph::refresh() {
    strength.assign(static_cast<std::size_t>(n), 0.0);
    double directed = 0.0;
    for (int u = 0; u < n; ++u) {
        double s = 0.0;
        for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) s += w;
        directed += s;
        strength[static_cast<std::size_t>(u)] = s + 2.0 * self_weight[static_cast<std::size_t>(u)];
    }
    m = directed / 2.0;
    for (double s : self_weight) m += s;
}

LouvainGraph LouvainGraph::aggregate(const std::vector<int>& community, int count) const {
    LouvainGraph g;
    g.n = count;
    g.adj.resize(static_cast<std::size_t>(count));
    g.self_weight.assign(static_cast<std::size_t>(count), 0.0);
    for (int u = 0; u < n; ++u)
        g.self_weight[static_cast<std::size_t>(community[static_cast<std::size_t>(u)])] +=
            self_weight[static_cast<std::size_t>(u)];
    std::map<std::pair<int, int>, double> cross;
    for (int u = 0; u < n; ++u) {
        const int cu = community[static_cast<std::size_t>(u)];
        for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
            if (v < u) continue;  // visit each undirected edge once
            const int cv = community[static_cast<std::size_t>(v)];
            if (cu == cv)
                g.self_weight[static_cast<std::size_t>(cu)] += w;
            else
                cross[std::minmax(cu, cv)] += w;
        }
    }
    for (const auto& [key, w] : cross) {
        g.adj[static_cast<std::size_t>(key.first)].emplace_back(key.second, w);
        g.adj[static_cast<std::size_t>(key.second)].emplace_back(key.first, w);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    g.refresh();
    return g;
}

double LouvainGraph::modularity(const std::vector<int>& community, int count,
                                double resolution) const {
    std::vector<double> intra(static_cast<std::size_t>(count), 0.0);
    std::vector<double> stot(static_cast<std::size_t>(count), 0.0);
    for (int u = 0; u < n; ++u) {
        const int cu = community[static_cast<std::size_t>(u)];
        intra[static_cast<std::size_t>(cu)] += self_weight[static_cast<std::size_t>(u)];
        stot[static_cast<std::size_t>(cu)] += strength[static_cast<std::size_t>(u)];
        for (const auto& [v, w] : adj[static_cast<std::size_t>(u)])
            if (v > u && community[static_cast<std::size_t>(v)] == cu)
                intra[static_cast<std::size_t>(cu)] += w;
    }
    double q = 0.0;
    for (int c = 0; c < count; ++c) {
        const double frac = stot[static_cast<std::size_t>(c)] / (2.0 * m);
        q += intra[static_cast<std::size_t>(c)] / m - resolution * frac * frac;
    }
    return q;
}

}  // namespace detail

Partition louvain(const WordGraph& graph, double resolution, std::uint32_t seed,
                  std::vector<double>* level_trace) {
    if (!(resolution > 0.0)) throw Error("resolution must be positive");
    if (graph.node_count() == 0) throw Error("louvain is undefined for an empty graph");
    if (!(graph.total_weight() > 0.0))
        throw Error("louvain is undefined for a graph with zero total weight");

    detail::LouvainGraph g = detail::LouvainGraph::from_graph(graph);
    std::mt19937 rng(seed);
    std::vector<int> node_to_comm(static_cast<std::size_t>(graph.node_count()));
    std::iota(node_to_comm.begin(), node_to_comm.end(), 0);

    for (;;) {
        std::vector<int> community(static_cast<std::size_t>(g.n));
        std::iota(community.begin(), community.end(), 0);
        double q = g.modularity(community, g.n, resolution);
        const bool moved = local_moves(g, resolution, rng, community, q);
        const int count = renumber_bounded(community, g.n);
        const double q_check = g.modularity(community, count, resolution);
        if (std::abs(q_check - q) > 1e-8)
            throw std::logic_error("modularity bookkeeping drifted during local moves");
        if (level_trace) level_trace->push_back(q_check);
        if (!moved) break;
        for (auto& c : node_to_comm) c = community[static_cast<std::size_t>(c)];
        if (count == g.n) break;  // nothing to aggregate
        g = g.aggregate(community, count);
    }

    Partition result = Partition::from_labels(std::move(node_to_comm));
    // Never return something worse than keeping everything together.
    const double q_result = modularity(graph, result, resolution);
    const Partition single = Partition::single_group(graph.node_count());
    if (modularity(graph, single, resolution) > q_result + kGainEps) return single;
    return result;
}

std::pair<Partition, double> exact_partition(const WordGraph& graph) {
    const int n = graph.node_count();
    if (n == 0) throw Error("exact search is undefined for an empty graph");
    if (n > 12) throw Error("exact search is limited to 12 nodes, got " + std::to_string(n));
    const double m = graph.total_weight();
    if (!(m > 0.0)) throw Error("exact search is undefined for a graph with zero total weight");

    std::vector<double> strength(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : graph.edges()) {
        strength[static_cast<std::size_t>(e.u)] += e.weight;
        strength[static_cast<std::size_t>(e.v)] += e.weight;
    }

    // Enumerate set partitions as restricted growth strings in
    // lexicographic order: a[0] = 0, a[j] <= 1 + max(a[0..j-1]).
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::vector<int> b(static_cast<std::size_t>(n), 1);  // b[j] = 1 + max prefix
    std::vector<double> intra(static_cast<std::size_t>(n), 0.0);
    std::vector<double> stot(static_cast<std::size_t>(n), 0.0);
    double best_q = 0.0;
    int best_count = 0;
    std::vector<int> best;
    bool first = true;
    for (;;) {
        int count = 0;
        for (int x : a) count = std::max(count, x + 1);
        std::fill(intra.begin(), intra.begin() + count, 0.0);
        std::fill(stot.begin(), stot.begin() + count, 0.0);
        for (int u = 0; u < n; ++u)
            stot[static_cast<std::size_t>(a[static_cast<std::size_t>(u)])] +=
                strength[static_cast<std::size_t>(u)];
        for (const auto& e : graph.edges())
            if (a[static_cast<std::size_t>(e.u)] == a[static_cast<std::size_t>(e.v)])
                intra[static_cast<std::size_t>(a[static_cast<std::size_t>(e.u)])] += e.weight;
        double q = 0.0;
        for (int c = 0; c < count; ++c) {
            const double frac = stot[static_cast<std::size_t>(c)] / (2.0 * m);
            q += intra[static_cast<std::size_t>(c)] / m - frac * frac;
        }
        // Ties prefer fewer communities; the enumeration order already
        // prefers the lexicographically smallest string.
        if (first || q > best_q + kGainEps ||
            (q > best_q - kGainEps && count < best_count)) {
            best_q = q;
            best_count = count;
            best = a;
            first = false;
        }
        int j = n - 1;
        while (j > 0 && a[static_cast<std::size_t>(j)] == b[static_cast<std::size_t>(j)]) --j;
        if (j == 0) break;
        ++a[static_cast<std::size_t>(j)];
        const int nb = std::max(b[static_cast<std::size_t>(j)], a[static_cast<std::size_t>(j)] + 1);
        for (int k = j + 1; k < n; ++k) {
            a[static_cast<std::size_t>(k)] = 0;
            b[static_cast<std::size_t>(k)] = nb;
        }
    }
    return {Partition{std::move(best), best_count}, best_q};
}

CommunitySummary summarize(const WordGraph& graph, const Partition& partition) {
    CommunitySummary summary;
    summary.modularity = modularity(graph, partition);
    summary.community_count = partition.count;
    summary.groups.resize(static_cast<std::size_t>(partition.count));
    for (int c = 0; c < partition.count; ++c) summary.groups[static_cast<std::size_t>(c)].id = c;
    for (int node = 0; node < graph.node_count(); ++node) {
        auto& group =
            summary.groups[static_cast<std::size_t>(partition.community[static_cast<std::size_t>(node)])];
        ++group.size;
        group.terms.push_back(graph.term(node));
    }
    const double n = static_cast<double>(graph.node_count());
    for (auto& group : summary.groups)
        group.size_percent = std::round(100.0 * static_cast<double>(group.size) / n * 100.0) / 100.0;
    std::sort(summary.groups.begin(), summary.groups.end(),
              [](const CommunityGroup& x, const CommunityGroup& y) {
                  if (x.size != y.size) return x.size > y.size;
                  return x.id < y.id;
              });
    return summary;
}

}  // namespace nettext
