#include "nettext/pipeline.hpp"

#include <string_view>
#include <unordered_map>

#include "nettext/community.hpp"
#include "nettext/util.hpp"

namespace nettext {

namespace {

using nlohmann::json;

const char* kCorpusStage = "corpus.json";
const char* kProcessedStage = "processed.json";
const char* kTermsStage = "terms.csv";
const char* kPairsStage = "pairs.csv";
const char* kGraphStage = "graph.json";
const char* kPartitionStage = "partition.csv";

json read_stage_json(const std::filesystem::path& path, const char* schema, const char* hint) {
    if (!std::filesystem::exists(path))
        throw Error("missing stage file " + path.string() + " (run the '" + hint +
                    "' stage first)");
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(path.string() + ": invalid JSON");
    if (j.value("schema", "") != schema || j.value("version", 0) != 1)
        throw Error(path.string() + ": schema-version mismatch, expected " + schema + " v1");
    return j;
}

void require_stage_file(const std::filesystem::path& path, const char* hint) {
    if (!std::filesystem::exists(path))
        throw Error("missing stage file " + path.string() + " (run the '" + hint +
                    "' stage first)");
}

template <typename Fn>
auto named_stage(const char* stage, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(stage) + ": " + e.what());
    }
}

}  // namespace

std::filesystem::path PathField::resolve() const {
    if (given.empty()) return {};
    std::filesystem::path p(given);
    return p.is_absolute() ? p : base / p;
}

void PipelineConfig::validate() const {
    if (min_token_length < 1) throw Error("min_token_length must be at least 1");
    if (dominant_cap < 1) throw Error("top-n (dominant word cap) must be at least 1");
    if (min_doc_freq < 1) throw Error("min-doc-freq must be at least 1");
    if (min_pair_weight < 1) throw Error("min-pair-weight must be at least 1");
    if (top_k < 1) throw Error("top-k must be at least 1");
    if (!(resolution > 0.0)) throw Error("resolution must be positive");
    for (const auto& p : negation_particles)
        if (normalize(p).empty()) throw Error("negation particle normalizes to empty: '" + p + "'");
}

json PipelineConfig::snapshot() const {
    json j;
    j["input"] = input.given;
    j["format"] = std::string(to_string(format));
    j["name"] = effective_name();
    j["stopwords"] = stopwords.given;
    j["relevance_keep"] = relevance_keep;
    j["relevance_drop"] = relevance_drop;
    j["negation_particles"] = negation_particles;
    j["min_token_length"] = min_token_length;
    j["dominant_cap"] = dominant_cap;
    j["min_doc_freq"] = min_doc_freq;
    j["min_pair_weight"] = min_pair_weight;
    j["top_k"] = top_k;
    j["resolution"] = resolution;
    j["seed"] = seed;
    return j;
}

void PipelineConfig::apply_json(const nlohmann::json& j, const std::filesystem::path& base) {
    if (!j.is_object()) throw Error("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "input") {
                input = {value.get<std::string>(), base};
            } else if (key == "format") {
                auto f = parse_corpus_format(value.get<std::string>());
                if (!f) throw Error("unknown format '" + value.get<std::string>() + "'");
                format = *f;
            } else if (key == "name") {
                name = value.get<std::string>();
            } else if (key == "stopwords") {
                stopwords = {value.get<std::string>(), base};
            } else if (key == "relevance_keep") {
                relevance_keep = value.get<std::vector<std::string>>();
            } else if (key == "relevance_drop") {
                relevance_drop = value.get<std::vector<std::string>>();
            } else if (key == "negation_particles") {
                negation_particles = value.get<std::vector<std::string>>();
            } else if (key == "min_token_length") {
                min_token_length = value.get<int>();
            } else if (key == "dominant_cap") {
                dominant_cap = value.get<std::size_t>();
            } else if (key == "min_doc_freq") {
                min_doc_freq = value.get<std::size_t>();
            } else if (key == "min_pair_weight") {
                min_pair_weight = value.get<std::size_t>();
            } else if (key == "top_k") {
                top_k = value.get<std::size_t>();
            } else if (key == "resolution") {
                resolution = value.get<double>();
            } else if (key == "seed") {
                seed = value.get<std::uint32_t>();
            } else if (key == "out") {
                std::filesystem::path p(value.get<std::string>());
                out = p.is_absolute() ? p : base / p;
            } else {
                throw Error("unknown config key '" + key + "'");
            }
        } catch (const json::exception& e) {
            throw Error("config key '" + key + "': " + e.what());
        }
    }
}

std::string PipelineConfig::effective_name() const {
    if (!name.empty()) return name;
    if (!input.empty()) return std::filesystem::path(input.given).stem().string();
    return "corpus";
}

PreprocessConfig PipelineConfig::make_preprocess_config() const {
    PreprocessConfig pc;
    if (!stopwords.empty()) pc.stopwords = load_stopwords(stopwords.resolve());
    pc.relevance_keep = relevance_keep;
    pc.relevance_drop = relevance_drop;
    pc.negation_particles = negation_particles;
    pc.min_token_length = min_token_length;
    return pc;
}

PipelineConfig config_from_file(const std::filesystem::path& path) {
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw Error(path.string() + ": invalid JSON");
    PipelineConfig config;
    config.apply_json(j, path.parent_path());
    return config;
}

void stage_ingest(const PipelineConfig& config, const std::filesystem::path& dir) {
    named_stage("ingest", [&] {
        config.validate();
        if (config.input.empty()) throw Error("no input file configured");
        Corpus corpus = load_corpus(config.input.resolve(), config.format, config.effective_name());
        json j;
        j["schema"] = "nettext/corpus";
        j["version"] = 1;
        j["name"] = corpus.name;
        j["documents"] = json::array();
        for (const auto& doc : corpus.documents) j["documents"].push_back(document_to_json(doc));
        write_file(dir / kCorpusStage, j.dump(2) + "\n");
    });
}

void stage_preprocess(const PipelineConfig& config, const std::filesystem::path& dir) {
    named_stage("preprocess", [&] {
        config.validate();
        json j = read_stage_json(dir / kCorpusStage, "nettext/corpus", "ingest");
        Corpus corpus;
        corpus.name = j.value("name", "corpus");
        for (std::size_t i = 0; i < j.at("documents").size(); ++i)
            corpus.documents.push_back(
                document_from_json(j.at("documents")[i], "document " + std::to_string(i)));
        const PreprocessConfig pc = config.make_preprocess_config();
        const Corpus filtered = filter_relevant(corpus, pc);
        const auto processed = tokenize_corpus(filtered, pc);
        json out;
        out["schema"] = "nettext/processed";
        out["version"] = 1;
        out["name"] = corpus.name;
        out["raw_count"] = corpus.documents.size();
        out["documents"] = json::array();
        for (const auto& doc : processed)
            out["documents"].push_back(json{{"id", doc.id}, {"tokens", doc.tokens}});
        write_file(dir / kProcessedStage, out.dump(2) + "\n");
    });
}

namespace {

struct ProcessedStage {
    std::string name;
    std::size_t raw_count = 0;
    std::vector<ProcessedDocument> documents;
};

ProcessedStage read_processed(const std::filesystem::path& dir) {
    json j = read_stage_json(dir / kProcessedStage, "nettext/processed", "preprocess");
    ProcessedStage stage;
    stage.name = j.value("name", "corpus");
    stage.raw_count = j.at("raw_count").get<std::size_t>();
    for (const auto& doc : j.at("documents"))
        stage.documents.push_back(
            {doc.at("id").get<std::string>(), doc.at("tokens").get<std::vector<std::string>>()});
    return stage;
}

}  // namespace

void stage_pairs(const PipelineConfig& config, const std::filesystem::path& dir) {
    named_stage("pairs", [&] {
        config.validate();
        const ProcessedStage stage = read_processed(dir);
        const auto stats = term_stats(stage.documents);
        wordcloud_export(stats, stats.empty() ? 1 : stats.size(), dir / kTermsStage);
        const auto dominant = select_dominant(stats, config.dominant_cap, config.min_doc_freq);
        const auto pairs = mine_pairs(stage.documents, dominant, config.min_pair_weight);
        write_pairs_csv(pairs, stats, dir / kPairsStage);
    });
}

void stage_graph(const PipelineConfig& config, const std::filesystem::path& dir) {
    named_stage("graph", [&] {
        config.validate();
        require_stage_file(dir / kPairsStage, "pairs");
        const auto pairs = read_pairs_csv(dir / kPairsStage);
        const WordGraph graph = WordGraph::from_pairs(pairs);
        export_graph(graph, nullptr, GraphFormat::json, dir / kGraphStage);
    });
}

void stage_communities(const PipelineConfig& config, const std::filesystem::path& dir) {
    named_stage("communities", [&] {
        config.validate();
        require_stage_file(dir / kGraphStage, "graph");
        const WordGraph graph = read_graph_json(dir / kGraphStage);
        Partition partition;
        if (graph.node_count() > 0)
            partition = louvain(graph, config.resolution, config.seed);
        write_partition_csv(graph, partition, dir / kPartitionStage);
    });
}

AnalysisReport stage_report(const PipelineConfig& config, const std::filesystem::path& dir) {
    return named_stage("report", [&] {
        config.validate();
        const ProcessedStage stage = read_processed(dir);
        require_stage_file(dir / kTermsStage, "pairs");
        require_stage_file(dir / kPairsStage, "pairs");
        require_stage_file(dir / kGraphStage, "graph");
        require_stage_file(dir / kPartitionStage, "communities");
        const auto stats = read_terms_csv(dir / kTermsStage);
        const auto pairs = read_pairs_csv(dir / kPairsStage);
        const WordGraph graph = read_graph_json(dir / kGraphStage);
        const Partition partition = read_partition_csv(graph, dir / kPartitionStage);

        AnalysisReport report;
        report.name = stage.name;
        report.profile.raw_count = stage.raw_count;
        report.profile.processed_count = stage.documents.size();
        report.profile.nodes = static_cast<std::size_t>(graph.node_count());
        report.profile.edges = graph.edge_count();
        report.top_pairs = top_pairs(pairs, config.top_k);
        if (graph.node_count() >= 2) report.density = density(graph);
        if (graph.node_count() > 0 && graph.total_weight() > 0.0) {
            report.communities = summarize(graph, partition);
            report.modularity = report.communities.modularity;
        }
        const auto dominant = select_dominant(stats, config.dominant_cap, config.min_doc_freq);
        {
            std::unordered_map<std::string_view, const TermStats*> by_term;
            for (const auto& s : stats) by_term.emplace(s.term, &s);
            for (const auto& word : dominant.words) {
                auto it = by_term.find(word);
                if (it != by_term.end()) report.dominant_terms.push_back(*it->second);
            }
        }
        report.config = config.snapshot();

        write_report(report, ReportFormat::json, dir / "report.json");
        write_report(report, ReportFormat::markdown, dir / "report.md");
        export_graph(graph, &partition, GraphFormat::gexf, dir / "graph.gexf", &stats);
        export_graph(graph, &partition, GraphFormat::dot, dir / "graph.dot");
        return report;
    });
}

AnalysisReport run_pipeline(const PipelineConfig& config) {
    config.validate();
    if (config.out.empty()) throw Error("run: no output directory configured");
    std::filesystem::path tmp = config.out;
    tmp += ".tmp";
    std::filesystem::remove_all(tmp);
    std::filesystem::create_directories(tmp);
    AnalysisReport report;
    try {
        stage_ingest(config, tmp);
        stage_preprocess(config, tmp);
        stage_pairs(config, tmp);
        stage_graph(config, tmp);
        stage_communities(config, tmp);
        report = stage_report(config, tmp);
    } catch (...) {
        std::filesystem::remove_all(tmp);
        throw;
    }
    std::filesystem::remove_all(config.out);
    std::filesystem::rename(tmp, config.out);
    return report;
}

}  // namespace nettext
