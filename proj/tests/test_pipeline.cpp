#include "nettext/pipeline.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <set>

#include "doctest.h"
#include "nettext/util.hpp"
#include "testutil.hpp"

using namespace nettext;

namespace {

// Six documents, all distinct after normalization (identical cleaned texts
// would be dropped as duplicates), forming two disjoint token pairs.
const char* kTwoTopicJsonl =
    "{\"id\":\"d1\",\"text\":\"Pesanan TIDAK sampai!!!\"}\n"
    "{\"id\":\"d2\",\"text\":\"pesanan pesanan tidak sampai :(\"}\n"
    "{\"id\":\"d3\",\"text\":\"PESANAN pesanan pesanan tidak sampai http://t.co/x\"}\n"
    "{\"id\":\"d4\",\"text\":\"dana belum kembali\"}\n"
    "{\"id\":\"d5\",\"text\":\"Dana dana belum kembali @tokoku\"}\n"
    "{\"id\":\"d6\",\"text\":\"dana dana dana BELUM kembali #dana\"}\n";

PipelineConfig small_config(const testutil::TempDir& dir) {
    write_file(dir / "mini.jsonl", kTwoTopicJsonl);
    PipelineConfig config;
    config.input = {(dir / "mini.jsonl").string()};
    config.min_doc_freq = 1;
    config.min_pair_weight = 1;
    config.out = dir / "out";
    return config;
}

std::set<std::string> dir_files(const std::filesystem::path& dir) {
    std::set<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        names.insert(entry.path().filename().string());
    return names;
}

void check_same_tree(const std::filesystem::path& a, const std::filesystem::path& b) {
    REQUIRE(dir_files(a) == dir_files(b));
    for (const auto& name : dir_files(a)) {
        INFO("file ", name);
        CHECK(read_file(a / name) == read_file(b / name));
    }
}

int run_cli(const std::string& args, const std::filesystem::path& log) {
    const std::string command =
        "\"" + testutil::cli_path() + "\" " + args + " > " + (log / "out.txt").string() +
        " 2> " + (log / "err.txt").string();
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("config files resolve paths against their own directory") {
    auto config = config_from_file(testutil::source_dir() / "fixtures" / "pipeline_config.json");
    CHECK(config.effective_name() == "synthetic-2000");
    CHECK(std::filesystem::exists(config.input.resolve()));
    CHECK(std::filesystem::exists(config.stopwords.resolve()));
    CHECK(config.relevance_drop == std::vector<std::string>{"promo"});
    CHECK(config.min_doc_freq == 3);
    CHECK(config.input.given == "synthetic_2000.jsonl");  // snapshot keeps the spelling

    auto snapshot = config.snapshot();
    CHECK(snapshot.at("input") == "synthetic_2000.jsonl");
    CHECK(snapshot.at("name") == "synthetic-2000");
    CHECK_FALSE(snapshot.contains("out"));
}

TEST_CASE("config rejects unknown keys and bad values") {
    PipelineConfig config;
    CHECK_THROWS_WITH_AS(config.apply_json({{"colour", 3}}, "."),
                         doctest::Contains("unknown config key 'colour'"), Error);
    CHECK_THROWS_WITH_AS(config.apply_json({{"format", "xml"}}, "."),
                         doctest::Contains("unknown format"), Error);
    CHECK_THROWS_WITH_AS(config.apply_json({{"min_token_length", "two"}}, "."),
                         doctest::Contains("config key 'min_token_length'"), Error);

    config.min_pair_weight = 0;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("min-pair-weight"), Error);
    config = PipelineConfig{};
    config.resolution = 0.0;
    CHECK_THROWS_AS(config.validate(), Error);
    config = PipelineConfig{};
    config.negation_particles = {"!!!"};
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("normalizes to empty"), Error);
}

TEST_CASE("effective name falls back to the input stem") {
    PipelineConfig config;
    CHECK(config.effective_name() == "corpus");
    config.input = {"data/reviews.jsonl"};
    CHECK(config.effective_name() == "reviews");
    config.name = "given";
    CHECK(config.effective_name() == "given");
}

TEST_CASE("run_pipeline produces the full stage tree") {
    testutil::TempDir dir;
    auto config = small_config(dir);
    auto report = run_pipeline(config);

    CHECK(dir_files(config.out) ==
          std::set<std::string>{"corpus.json", "processed.json", "terms.csv", "pairs.csv",
                                "graph.json", "partition.csv", "report.json", "report.md",
                                "graph.gexf", "graph.dot"});
    CHECK_FALSE(std::filesystem::exists(dir / "out.tmp"));

    CHECK(report.name == "mini");
    CHECK(report.profile == DataProfile{6, 6, 4, 2});
    REQUIRE(report.density.has_value());
    CHECK(*report.density == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    // Two disjoint weight-3 edges split in half: 2 * (3/6 - (6/12)^2) = 1/2.
    REQUIRE(report.modularity.has_value());
    CHECK(*report.modularity == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.communities.community_count == 2);
    CHECK(report.top_pairs == std::vector<WordPair>{{"belum kembali", "dana", 3},
                                                    {"pesanan", "tidak sampai", 3}});

    // The written report parses back to exactly what run_pipeline returned.
    CHECK(report_from_json(read_file(config.out / "report.json")) == report);
}

TEST_CASE("stage-by-stage execution matches the composed run") {
    testutil::TempDir dir;
    auto config = small_config(dir);
    run_pipeline(config);

    auto staged = dir.path() / "staged";
    std::filesystem::create_directories(staged);
    stage_ingest(config, staged);
    stage_preprocess(config, staged);
    stage_pairs(config, staged);
    stage_graph(config, staged);
    stage_communities(config, staged);
    auto report = stage_report(config, staged);

    check_same_tree(config.out, staged);
    CHECK(report == report_from_json(read_file(config.out / "report.json")));
}

TEST_CASE("repeated runs are byte identical") {
    testutil::TempDir dir;
    auto config = small_config(dir);
    run_pipeline(config);
    auto first = dir.path() / "first";
    std::filesystem::rename(config.out, first);
    run_pipeline(config);
    check_same_tree(first, config.out);
}

TEST_CASE("an empty corpus flows through every stage") {
    testutil::TempDir dir;
    write_file(dir / "empty.jsonl", "");
    PipelineConfig config;
    config.input = {(dir / "empty.jsonl").string()};
    config.out = dir / "out";
    auto report = run_pipeline(config);
    CHECK(report.profile == DataProfile{0, 0, 0, 0});
    CHECK_FALSE(report.density.has_value());
    CHECK_FALSE(report.modularity.has_value());
    CHECK(report.top_pairs.empty());
    CHECK(testutil::contains(read_file(config.out / "report.md"), "No pairs."));
    CHECK(testutil::contains(read_file(config.out / "report.md"), "No communities."));
}

TEST_CASE("stage errors carry the stage name and leave no output") {
    testutil::TempDir dir;
    auto config = small_config(dir);
    config.stopwords = {(dir / "no-such-file.txt").string()};
    CHECK_THROWS_WITH_AS(run_pipeline(config), doctest::Contains("preprocess: "), Error);
    CHECK_FALSE(std::filesystem::exists(config.out));
    CHECK_FALSE(std::filesystem::exists(dir / "out.tmp"));
}

TEST_CASE("stages refuse to run out of order") {
    testutil::TempDir dir;
    auto config = small_config(dir);
    auto stage_dir = dir.path() / "stages";
    std::filesystem::create_directories(stage_dir);
    CHECK_THROWS_WITH_AS(stage_pairs(config, stage_dir),
                         doctest::Contains("run the 'preprocess' stage first"), Error);
    CHECK_THROWS_WITH_AS(stage_communities(config, stage_dir),
                         doctest::Contains("run the 'graph' stage first"), Error);
}

TEST_CASE("stage files from other schemas are rejected") {
    testutil::TempDir dir;
    auto config = small_config(dir);
    auto stage_dir = dir.path() / "stages";
    std::filesystem::create_directories(stage_dir);
    write_file(stage_dir / "corpus.json", "{\"schema\":\"nettext/corpus\",\"version\":9}\n");
    CHECK_THROWS_WITH_AS(stage_preprocess(config, stage_dir),
                         doctest::Contains("schema-version mismatch"), Error);
}

TEST_CASE("pipeline output matches the checked-in golden run") {
    auto config = config_from_file(testutil::source_dir() / "fixtures" / "pipeline_config.json");
    testutil::TempDir dir;
    config.out = dir / "out";
    run_pipeline(config);
    check_same_tree(testutil::source_dir() / "fixtures" / "golden" / "synthetic_2000",
                    config.out);
}

TEST_CASE("cli run executes a config end to end") {
    testutil::TempDir dir;
    write_file(dir / "mini.jsonl", kTwoTopicJsonl);
    write_file(dir / "config.json",
               "{\"input\": \"mini.jsonl\", \"min_doc_freq\": 1, \"min_pair_weight\": 1}\n");
    const auto out = dir / "result";
    const int code = run_cli("run --config " + (dir / "config.json").string() + " --out " +
                                 out.string(),
                             dir.path());
    CHECK(code == 0);
    CHECK(std::filesystem::exists(out / "report.json"));
    const std::string stdout_text = read_file(dir / "out.txt");
    CHECK(testutil::contains(stdout_text, "name: mini"));
    CHECK(testutil::contains(stdout_text, "communities: 2"));
}

TEST_CASE("cli stage subcommands compose") {
    testutil::TempDir dir;
    write_file(dir / "mini.jsonl", kTwoTopicJsonl);
    const auto out = dir / "staged";
    const std::string shared = " --input " + (dir / "mini.jsonl").string() +
                               " --min-doc-freq 1 --min-pair-weight 1 --out " + out.string();
    for (const char* stage : {"ingest", "preprocess", "pairs", "graph", "communities", "report"}) {
        const int code = run_cli(std::string(stage) + shared, dir.path());
        INFO("stage ", stage, ": ", read_file(dir / "err.txt"));
        REQUIRE(code == 0);
    }
    CHECK(std::filesystem::exists(out / "report.md"));

    // The composed CLI run writes the same bytes as a one-shot run.
    testutil::TempDir one;
    auto config = small_config(one);
    config.input = {(dir / "mini.jsonl").string()};
    run_pipeline(config);
    check_same_tree(config.out, out);
}

TEST_CASE("cli reports errors on stderr with a nonzero exit") {
    testutil::TempDir dir;
    const int code = run_cli("run --input " + (dir / "absent.jsonl").string(), dir.path());
    CHECK(code == 1);
    CHECK(testutil::contains(read_file(dir / "err.txt"), "nettext: error:"));

    const int usage = run_cli("run --no-such-flag", dir.path());
    CHECK(usage != 0);
}

TEST_CASE("cli gen-corpus regenerates the shipped fixtures") {
    testutil::TempDir dir;
    int code = run_cli("gen-corpus --preset shipped-2000 --out " + (dir / "a.jsonl").string(),
                       dir.path());
    REQUIRE(code == 0);
    CHECK(read_file(dir / "a.jsonl") ==
          read_file(testutil::source_dir() / "fixtures" / "synthetic_2000.jsonl"));

    code = run_cli("gen-corpus --preset two-topic --out " + (dir / "b.jsonl").string(),
                   dir.path());
    REQUIRE(code == 0);
    CHECK(read_file(dir / "b.jsonl") ==
          read_file(testutil::source_dir() / "fixtures" / "two_topic.jsonl"));
}

}  // TEST_SUITE
