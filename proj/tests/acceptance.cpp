// Acceptance gate for the whole pipeline. Each criterion prints exactly one
// PASS/FAIL line; tolerances and time budgets are pinned here, next to the
// checks. Exit code 0 only if every criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "nettext/community.hpp"
#include "nettext/generator.hpp"
#include "nettext/pipeline.hpp"
#include "nettext/util.hpp"
#include "testutil.hpp"

using namespace nettext;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& message) {
    if (!ok) throw Failure(message);
}

long long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

int g_failures = 0;

void criterion(const char* name, long long budget_ms, const std::function<void()>& body) {
    const auto start = Clock::now();
    std::string detail;
    try {
        body();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    const long long elapsed = ms_since(start);
    if (detail.empty() && elapsed > budget_ms)
        detail = "exceeded the " + std::to_string(budget_ms) + " ms budget (" +
                 std::to_string(elapsed) + " ms)";
    if (detail.empty()) {
        std::printf("PASS %s (%lld ms)\n", name, elapsed);
    } else {
        std::printf("FAIL %s: %s\n", name, detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

void expect_close(double actual, double wanted, double tolerance, const std::string& what) {
    expect(std::abs(actual - wanted) <= tolerance,
           what + ": got " + std::to_string(actual) + ", wanted " + std::to_string(wanted) +
               " within " + std::to_string(tolerance));
}

WordGraph two_triangles() {
    return WordGraph::from_edges({"a0", "a1", "a2", "b0", "b1", "b2"},
                                 {{0, 1, 1}, {0, 2, 1}, {1, 2, 1},
                                  {3, 4, 1}, {3, 5, 1}, {4, 5, 1}});
}

WordGraph clique(int k) {
    std::vector<std::string> terms;
    for (int i = 0; i < k; ++i) terms.push_back("n" + std::to_string(i));
    std::vector<WordGraph::Edge> edges;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) edges.push_back({u, v, 1.0});
    return WordGraph::from_edges(std::move(terms), std::move(edges));
}

// Closed-form modularity values plus agreement with an independent dense-sum
// evaluation of the definition.
void check_modularity_identities() {
    const Partition triangles{{0, 0, 0, 1, 1, 1}, 2};
    expect_close(modularity(two_triangles(), triangles), 0.5, 1e-12,
                 "two split triangles");
    expect_close(modularity(two_triangles(), Partition::single_group(6)), 0.0, 1e-12,
                 "two triangles kept whole");
    expect_close(modularity(clique(3), Partition::singletons(3)), -1.0 / 3.0, 1e-12,
                 "triangle singletons");
    expect_close(modularity(clique(4), Partition::single_group(4)), 0.0, 1e-12,
                 "whole clique");

    std::vector<WordGraph::Edge> barbell_edges;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) {
            barbell_edges.push_back({u, v, 1.0});
            barbell_edges.push_back({u + 4, v + 4, 1.0});
        }
    barbell_edges.push_back({3, 4, 1.0});
    auto barbell = WordGraph::from_edges(
        {"n0", "n1", "n2", "n3", "n4", "n5", "n6", "n7"}, std::move(barbell_edges));
    expect_close(modularity(barbell, Partition{{0, 0, 0, 0, 1, 1, 1, 1}, 2}),
                 12.0 / 13.0 - 0.5, 1e-12, "split barbell");

    std::mt19937 rng(101);
    for (int iter = 0; iter < 20; ++iter) {
        auto g = testutil::random_graph(rng, 2, 24);
        auto p = testutil::random_partition(rng, g.node_count());
        for (double gamma : {1.0, 0.7, 2.5})
            expect_close(modularity(g, p, gamma), testutil::modularity_oracle(g, p, gamma),
                         1e-9, "dense-sum oracle disagreement");
    }
}

// The exhaustive search is the ground truth the greedy optimizer is judged
// against: it must dominate random partitions and bound the greedy result.
void check_exhaustive_optimum() {
    auto [split, q] = exact_partition(two_triangles());
    expect_close(q, 0.5, 1e-12, "exhaustive optimum of two triangles");
    expect(testutil::same_partition(split, Partition{{0, 0, 0, 1, 1, 1}, 2}),
           "exhaustive search split the triangles wrong");

    auto [whole, q4] = exact_partition(clique(4));
    expect(whole.count == 1, "a clique must stay whole");
    expect_close(q4, 0.0, 1e-12, "exhaustive optimum of a clique");

    std::mt19937 rng(102);
    for (int iter = 0; iter < 50; ++iter) {
        auto g = testutil::random_graph(rng, 2, 8);
        auto [best, best_q] = exact_partition(g);
        expect_close(best_q, modularity(g, best), 1e-12, "reported optimum mismatch");
        for (int probe = 0; probe < 1000; ++probe) {
            auto p = testutil::random_partition(rng, g.node_count());
            expect(modularity(g, p) <= best_q + 1e-9,
                   "a random partition beat the exhaustive optimum");
        }
        const double greedy = modularity(g, louvain(g, 1.0, 7));
        expect(greedy <= best_q + 1e-9, "the greedy optimizer beat the exhaustive optimum");
        expect(greedy >= modularity(g, Partition::single_group(g.node_count())) - 1e-12,
               "the greedy optimizer lost to the single-community partition");
    }
}

// Pair mining must equal a quadratic recount of document co-presence.
void check_pair_mining_oracle() {
    std::mt19937 rng(103);
    const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<ProcessedDocument> docs;
        const std::size_t n = rng() % 60;
        for (std::size_t i = 0; i < n; ++i) {
            ProcessedDocument doc;
            doc.id = "d" + std::to_string(i);
            const std::size_t len = rng() % 10;
            for (std::size_t t = 0; t < len; ++t) doc.tokens.push_back(vocab[rng() % vocab.size()]);
            docs.push_back(std::move(doc));
        }
        DominantWordSet dom;
        dom.words = vocab;
        dom.cap = vocab.size();
        const std::size_t min_weight = 1 + rng() % 3;

        std::map<std::pair<std::string, std::string>, std::size_t> counts;
        for (const auto& doc : docs) {
            std::set<std::string> present(doc.tokens.begin(), doc.tokens.end());
            for (auto a = present.begin(); a != present.end(); ++a)
                for (auto b = std::next(a); b != present.end(); ++b) ++counts[{*a, *b}];
        }
        std::vector<WordPair> oracle;
        for (const auto& [key, weight] : counts)
            if (weight >= min_weight) oracle.push_back({key.first, key.second, weight});
        std::sort(oracle.begin(), oracle.end(), [](const WordPair& x, const WordPair& y) {
            if (x.weight != y.weight) return x.weight > y.weight;
            if (x.a != y.a) return x.a < y.a;
            return x.b < y.b;
        });
        expect(mine_pairs(docs, dom, min_weight) == oracle,
               "mine_pairs disagreed with the quadratic recount");
        expect(mine_pairs_serial(docs, dom, min_weight) == oracle,
               "mine_pairs_serial disagreed with the quadratic recount");
    }
}

std::set<std::string> dir_files(const std::filesystem::path& dir) {
    std::set<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        names.insert(entry.path().filename().string());
    return names;
}

void expect_same_tree(const std::filesystem::path& a, const std::filesystem::path& b) {
    expect(dir_files(a) == dir_files(b),
           a.string() + " and " + b.string() + " hold different files");
    for (const auto& name : dir_files(a))
        expect(read_file(a / name) == read_file(b / name), name + " differs between runs");
}

int run_cli(const std::string& args) {
    const std::string command = "\"" + testutil::cli_path() + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Identical inputs must produce byte-identical output trees, through the CLI
// and through in-process stage composition alike.
void check_pipeline_determinism() {
    testutil::TempDir dir;
    const auto config_path = testutil::source_dir() / "fixtures" / "pipeline_config.json";
    const std::string base = "run --config " + config_path.string() + " --out ";
    expect(run_cli(base + (dir / "first").string()) == 0, "first CLI run failed");
    expect(run_cli(base + (dir / "second").string()) == 0, "second CLI run failed");
    expect_same_tree(dir / "first", dir / "second");

    auto config = config_from_file(config_path);
    auto staged = dir.path() / "staged";
    std::filesystem::create_directories(staged);
    stage_ingest(config, staged);
    stage_preprocess(config, staged);
    stage_pairs(config, staged);
    stage_graph(config, staged);
    stage_communities(config, staged);
    stage_report(config, staged);
    expect_same_tree(dir / "first", staged);
}

// The pipeline must recover the topics that the corpus generator planted.
void check_planted_topic_recovery() {
    // Small corpus: the graph is small enough to compare the greedy result
    // against the exhaustive optimum.
    {
        testutil::TempDir dir;
        const auto spec = two_topic_spec();
        generate_corpus_file(spec, dir / "two_topic.jsonl");
        PipelineConfig config;
        config.input = {(dir / "two_topic.jsonl").string()};
        config.stopwords = {(testutil::source_dir() / "data" / "stopwords_id.txt").string()};
        config.min_doc_freq = 2;
        config.min_pair_weight = 2;
        config.out = dir / "out";
        auto report = run_pipeline(config);

        auto graph = read_graph_json(config.out / "graph.json");
        expect(graph.node_count() >= 6 && graph.node_count() <= 12,
               "two-topic graph has " + std::to_string(graph.node_count()) + " nodes");
        auto greedy = read_partition_csv(graph, config.out / "partition.csv");
        auto [best, best_q] = exact_partition(graph);
        expect(testutil::same_partition(greedy, best),
               "greedy and exhaustive partitions differ on the two-topic corpus");
        expect(best.count == 2, "expected exactly 2 communities, got " +
                                    std::to_string(best.count));
        expect(report.modularity && *report.modularity >= 0.45,
               "two-topic modularity below 0.45");

        auto planted = planted_topics(spec, config.make_preprocess_config());
        for (int node = 0; node < graph.node_count(); ++node) {
            expect(planted.count(graph.term(node)) == 1,
                   "unplanted node '" + graph.term(node) + "'");
        }
        std::vector<int> by_topic;
        for (const auto& term : graph.terms()) by_topic.push_back(planted.at(term));
        expect(testutil::same_partition(best, Partition::from_labels(by_topic)),
               "the optimum does not match the planted topics");
    }

    // Shipped corpus: six planted topics, judged by majority agreement.
    {
        auto config =
            config_from_file(testutil::source_dir() / "fixtures" / "pipeline_config.json");
        testutil::TempDir dir;
        config.out = dir / "out";
        auto report = run_pipeline(config);
        expect(report.communities.community_count >= 4,
               "expected at least 4 communities, got " +
                   std::to_string(report.communities.community_count));
        expect(report.modularity && *report.modularity >= 0.3,
               "shipped-corpus modularity below 0.3");

        double share_total = 0.0;
        for (const auto& group : report.communities.groups) share_total += group.size_percent;
        expect(std::abs(share_total - 100.0) <= 0.05,
               "community shares sum to " + std::to_string(share_total));

        auto graph = read_graph_json(config.out / "graph.json");
        auto partition = read_partition_csv(graph, config.out / "partition.csv");
        auto planted = planted_topics(shipped_2000_spec(), config.make_preprocess_config());
        std::map<std::pair<int, int>, int> votes;  // (community, topic) -> nodes
        int known = 0;
        for (int node = 0; node < graph.node_count(); ++node) {
            auto it = planted.find(graph.term(node));
            expect(it != planted.end(), "unplanted node '" + graph.term(node) + "'");
            ++votes[{partition.community[static_cast<std::size_t>(node)], it->second}];
            ++known;
        }
        std::map<int, int> majority;
        for (const auto& [key, count] : votes) {
            auto& best_count = majority[key.first];
            best_count = std::max(best_count, count);
        }
        int agree = 0;
        for (const auto& [community, count] : majority) agree += count;
        expect(agree * 10 >= known * 9,
               "only " + std::to_string(agree) + " of " + std::to_string(known) +
                   " nodes follow their community's majority topic");
    }
}

// The report schema must express a full-size published analysis: profile
// counts, pair weights, modularity and per-community shares.
void check_report_schema_parity() {
    AnalysisReport r;
    r.name = "marketplace-reviews";
    r.profile = {25436, 9100, 200, 619};
    r.top_pairs = {{"pesanan", "sampai", 116}};
    r.density = 0.0311;
    r.modularity = 0.411;
    r.communities.community_count = 11;
    r.communities.modularity = 0.411;
    const std::vector<std::size_t> sizes = {56, 32, 25, 21, 17, 14, 11, 9, 7, 5, 3};
    const std::vector<double> shares = {27.84, 15.98, 12.5, 10.5, 8.5,
                                        7.0,   5.5,   4.5,  3.5,  2.5, 1.5};
    for (int c = 0; c < 11; ++c) {
        CommunityGroup group;
        group.id = c;
        group.size = sizes[static_cast<std::size_t>(c)];
        group.size_percent = shares[static_cast<std::size_t>(c)];
        group.terms = {"t" + std::to_string(c)};
        r.communities.groups.push_back(std::move(group));
    }
    const std::string md = render_report(r, ReportFormat::markdown);
    for (const char* row : {"| Raw Data | 25436 |", "| Processed Data | 9100 |",
                            "| Nodes | 200 |", "| Edges | 619 |", "| pesanan-sampai | 116 |",
                            "| Modularity | 0.411 |", "| Communities | 11 |",
                            "| 0 | 56 | 27.84% |", "| 1 | 32 | 15.98% |"})
        expect(testutil::contains(md, row), std::string("markdown lacks '") + row + "'");
    expect(report_from_json(render_report(r, ReportFormat::json)) == r,
           "JSON report did not round-trip");
}

// Wall-clock ceilings for a full run on a 25k-document corpus and for
// community detection on a 10k-node, 100k-edge graph.
void check_throughput() {
    testutil::TempDir dir;
    auto spec = shipped_2000_spec();
    spec.count = 25000;
    generate_corpus_file(spec, dir / "large.jsonl");
    PipelineConfig config;
    config.input = {(dir / "large.jsonl").string()};
    config.stopwords = {(testutil::source_dir() / "data" / "stopwords_id.txt").string()};
    config.relevance_drop = {"promo"};
    config.out = dir / "out";
    const auto pipeline_start = Clock::now();
    auto report = run_pipeline(config);
    const long long pipeline_ms = ms_since(pipeline_start);
    expect(report.profile.raw_count == 25000, "wrong raw count");
    expect(pipeline_ms < 10000,
           "25k-document pipeline took " + std::to_string(pipeline_ms) + " ms (limit 10000)");

    std::mt19937 rng(104);
    const int n = 10000;
    std::vector<std::string> terms;
    terms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) terms.push_back("w" + std::to_string(i));
    std::vector<WordGraph::Edge> edges;
    std::unordered_set<std::uint64_t> used;
    auto add = [&](int u, int v) {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
            static_cast<std::uint32_t>(v);
        if (!used.insert(key).second) return false;
        edges.push_back({u, v, static_cast<double>(1 + rng() % 5)});
        return true;
    };
    for (int i = 0; i < n; ++i) add(i, (i + 1) % n);
    while (edges.size() < 100000)
        add(static_cast<int>(rng() % static_cast<unsigned>(n)),
            static_cast<int>(rng() % static_cast<unsigned>(n)));
    auto graph = WordGraph::from_edges(std::move(terms), std::move(edges));

    const auto louvain_start = Clock::now();
    auto partition = louvain(graph, 1.0, 7);
    const long long louvain_ms = ms_since(louvain_start);
    expect(partition.count > 1, "community detection collapsed the graph");
    expect(louvain_ms < 5000, "community detection on 10k nodes / 100k edges took " +
                                  std::to_string(louvain_ms) + " ms (limit 5000)");
}

}  // namespace

int main() {
    criterion("modularity-identities", 5000, check_modularity_identities);
    criterion("exhaustive-optimum", 30000, check_exhaustive_optimum);
    criterion("pair-mining-oracle", 5000, check_pair_mining_oracle);
    criterion("pipeline-determinism", 60000, check_pipeline_determinism);
    criterion("planted-topic-recovery", 60000, check_planted_topic_recovery);
    criterion("report-schema-parity", 5000, check_report_schema_parity);
    criterion("throughput", 120000, check_throughput);
    if (g_failures == 0) {
        std::printf("acceptance: all 7 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d of 7 criteria failed\n", g_failures);
    return 1;
}
