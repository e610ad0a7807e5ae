#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nettext/corpus.hpp"
#include "nettext/preprocess.hpp"
#include "nettext/report.hpp"

namespace nettext {

// A path kept as written (for config snapshots) plus the directory it is
// relative to: the config file's directory or the working directory.
struct PathField {
    std::string given;
    std::filesystem::path base = ".";

    bool empty() const { return given.empty(); }
    std::filesystem::path resolve() const;
};

struct PipelineConfig {
    PathField input;
    CorpusFormat format = CorpusFormat::jsonl;
    std::string name;  // defaults to the input file stem
    PathField stopwords;
    std::vector<std::string> relevance_keep;
    std::vector<std::string> relevance_drop;
    std::vector<std::string> negation_particles{"tidak", "belum", "tidak bisa", "belum bisa"};
    int min_token_length = 2;
    std::size_t dominant_cap = 200;
    std::size_t min_doc_freq = 3;
    std::size_t min_pair_weight = 2;
    std::size_t top_k = 10;
    double resolution = 1.0;
    std::uint32_t seed = 42;
    std::filesystem::path out = "nettext-out";

    void validate() const;
    // Everything except `out`, with paths as written. Embedded in reports.
    nlohmann::json snapshot() const;
    // Merges keys from a config file; unknown keys are rejected. Paths are
    // taken relative to `base`.
    void apply_json(const nlohmann::json& j, const std::filesystem::path& base);
    std::string effective_name() const;
    PreprocessConfig make_preprocess_config() const;  // loads the stopword file
};

PipelineConfig config_from_file(const std::filesystem::path& path);

// Stage entry points; each reads its inputs from and writes its outputs to
// `dir` (created if needed). Errors are prefixed with the stage name.
void stage_ingest(const PipelineConfig& config, const std::filesystem::path& dir);
void stage_preprocess(const PipelineConfig& config, const std::filesystem::path& dir);
void stage_pairs(const PipelineConfig& config, const std::filesystem::path& dir);
void stage_graph(const PipelineConfig& config, const std::filesystem::path& dir);
void stage_communities(const PipelineConfig& config, const std::filesystem::path& dir);
AnalysisReport stage_report(const PipelineConfig& config, const std::filesystem::path& dir);

// All stages composed in-process, written to a temporary directory that
// replaces config.out only on success.
AnalysisReport run_pipeline(const PipelineConfig& config);

}  // namespace nettext
