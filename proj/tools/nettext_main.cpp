#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nettext/generator.hpp"
#include "nettext/pipeline.hpp"
#include "nettext/util.hpp"

namespace {

using namespace nettext;

struct CliOptions {
    std::string config_path;
    std::string input;
    std::string format = "jsonl";
    std::string name;
    std::string stopwords;
    std::vector<std::string> keep;
    std::vector<std::string> drop;
    std::vector<std::string> negation;
    int min_token_length = 2;
    std::size_t top_n = 200;
    std::size_t min_doc_freq = 3;
    std::size_t min_pair_weight = 2;
    std::size_t top_k = 10;
    double resolution = 1.0;
    std::uint32_t seed = 42;
    std::string out;
    std::string meta_file;
};

void add_pipeline_options(CLI::App* cmd, CliOptions& opt, bool with_meta) {
    cmd->add_option("--config", opt.config_path, "JSON config file; flags override its values");
    cmd->add_option("--input", opt.input, "corpus file");
    cmd->add_option("--format", opt.format, "corpus format: jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    cmd->add_option("--name", opt.name, "corpus name (defaults to the input file stem)");
    cmd->add_option("--stopwords", opt.stopwords, "stopword list, one word per line");
    cmd->add_option("--keep", opt.keep, "relevance keep substring (repeatable)");
    cmd->add_option("--drop", opt.drop, "relevance drop substring (repeatable)");
    cmd->add_option("--negation", opt.negation,
                    "negation particle (repeatable, replaces the defaults)");
    cmd->add_option("--min-token-length", opt.min_token_length, "minimum token length");
    cmd->add_option("--top-n", opt.top_n, "dominant word cap");
    cmd->add_option("--min-doc-freq", opt.min_doc_freq, "minimum document frequency");
    cmd->add_option("--min-pair-weight", opt.min_pair_weight, "minimum pair co-occurrence");
    cmd->add_option("--top-k", opt.top_k, "pairs listed in the report");
    cmd->add_option("--resolution", opt.resolution, "community resolution");
    cmd->add_option("--seed", opt.seed, "community detection seed");
    cmd->add_option("--out", opt.out, "output directory");
    if (with_meta)
        cmd->add_option("--meta-file", opt.meta_file,
                        "write run metadata (elapsed time) to this file");
}

PipelineConfig build_config(CLI::App* cmd, const CliOptions& opt) {
    PipelineConfig config;
    if (cmd->count("--config")) config = config_from_file(opt.config_path);
    if (cmd->count("--input")) config.input = {opt.input, "."};
    if (cmd->count("--format")) config.format = *parse_corpus_format(opt.format);
    if (cmd->count("--name")) config.name = opt.name;
    if (cmd->count("--stopwords")) config.stopwords = {opt.stopwords, "."};
    if (cmd->count("--keep")) config.relevance_keep = opt.keep;
    if (cmd->count("--drop")) config.relevance_drop = opt.drop;
    if (cmd->count("--negation")) config.negation_particles = opt.negation;
    if (cmd->count("--min-token-length")) config.min_token_length = opt.min_token_length;
    if (cmd->count("--top-n")) config.dominant_cap = opt.top_n;
    if (cmd->count("--min-doc-freq")) config.min_doc_freq = opt.min_doc_freq;
    if (cmd->count("--min-pair-weight")) config.min_pair_weight = opt.min_pair_weight;
    if (cmd->count("--top-k")) config.top_k = opt.top_k;
    if (cmd->count("--resolution")) config.resolution = opt.resolution;
    if (cmd->count("--seed")) config.seed = opt.seed;
    if (cmd->count("--out")) config.out = opt.out;
    return config;
}

void print_summary(const AnalysisReport& report, const std::filesystem::path& out) {
    std::cout << "name: " << report.name << "\n";
    std::cout << "raw documents: " << report.profile.raw_count << "\n";
    std::cout << "processed documents: " << report.profile.processed_count << "\n";
    std::cout << "nodes: " << report.profile.nodes << ", edges: " << report.profile.edges << "\n";
    std::cout << "density: " << (report.density ? format_fixed(*report.density, 4) : "n/a")
              << "\n";
    std::cout << "modularity: "
              << (report.modularity ? format_fixed(*report.modularity, 3) : "n/a") << "\n";
    std::cout << "communities: " << report.communities.community_count << "\n";
    std::cout << "wrote " << out.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"turns a corpus of short messages into a weighted word co-occurrence "
                 "network and decomposes it into topic communities"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* cmd_run = app.add_subcommand("run", "run the whole pipeline");
    add_pipeline_options(cmd_run, opt, true);
    const std::vector<std::pair<std::string, CLI::App*>> stages = {
        {"ingest", app.add_subcommand("ingest", "load the corpus into the stage directory")},
        {"preprocess", app.add_subcommand("preprocess", "normalize, filter and tokenize")},
        {"pairs", app.add_subcommand("pairs", "count terms and mine word pairs")},
        {"graph", app.add_subcommand("graph", "build the co-occurrence network")},
        {"communities", app.add_subcommand("communities", "detect topic communities")},
        {"report", app.add_subcommand("report", "render reports and graph exports")},
    };
    for (const auto& [_, cmd] : stages) add_pipeline_options(cmd, opt, false);

    CLI::App* cmd_gen = app.add_subcommand("gen-corpus", "generate a synthetic corpus");
    std::string preset = "shipped-2000";
    std::size_t gen_count = 0;
    std::uint32_t gen_seed = 0;
    std::string gen_out;
    cmd_gen->add_option("--preset", preset, "shipped-2000 or two-topic")
        ->check(CLI::IsMember({"shipped-2000", "two-topic"}));
    cmd_gen->add_option("--count", gen_count, "number of documents");
    cmd_gen->add_option("--seed", gen_seed, "generator seed");
    cmd_gen->add_option("--out", gen_out, "output jsonl file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gen->parsed()) {
            CorpusGeneratorSpec spec =
                preset == "two-topic" ? two_topic_spec() : shipped_2000_spec();
            if (cmd_gen->count("--count")) spec.count = gen_count;
            if (cmd_gen->count("--seed")) spec.seed = gen_seed;
            generate_corpus_file(spec, gen_out);
            std::cout << "wrote " << gen_out << "\n";
            return 0;
        }
        if (cmd_run->parsed()) {
            const PipelineConfig config = build_config(cmd_run, opt);
            const auto start = std::chrono::steady_clock::now();
            const AnalysisReport report = run_pipeline(config);
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
            print_summary(report, config.out);
            std::cout << "elapsed: " << elapsed << " ms\n";
            if (!opt.meta_file.empty()) {
                nlohmann::json meta;
                meta["elapsed_ms"] = elapsed;
                meta["pipeline_version"] = std::string(kPipelineVersion);
                write_file(opt.meta_file, meta.dump(2) + "\n");
            }
            return 0;
        }
        for (const auto& [stage_name, cmd] : stages) {
            if (!cmd->parsed()) continue;
            const PipelineConfig config = build_config(cmd, opt);
            if (config.out.empty())
                throw Error(stage_name + ": --out (stage directory) is required");
            std::filesystem::create_directories(config.out);
            if (stage_name == "ingest") stage_ingest(config, config.out);
            else if (stage_name == "preprocess") stage_preprocess(config, config.out);
            else if (stage_name == "pairs") stage_pairs(config, config.out);
            else if (stage_name == "graph") stage_graph(config, config.out);
            else if (stage_name == "communities") stage_communities(config, config.out);
            else stage_report(config, config.out);
            std::cout << stage_name << ": ok\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "nettext: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
