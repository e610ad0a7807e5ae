#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nettext/association.hpp"
#include "nettext/community.hpp"
#include "nettext/frequency.hpp"
#include "nettext/util.hpp"
#include "nettext/wordgraph.hpp"

namespace nettext {

struct DataProfile {
    std::size_t raw_count = 0;
    std::size_t processed_count = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;

    bool operator==(const DataProfile&) const = default;
};

// Everything the pipeline publishes about one corpus. density and
// modularity are absent when the graph is too small to define them.
struct AnalysisReport {
    std::string name;
    DataProfile profile;
    std::vector<WordPair> top_pairs;
    std::optional<double> density;
    std::optional<double> modularity;
    CommunitySummary communities;
    std::vector<TermStats> dominant_terms;
    nlohmann::json config = nlohmann::json::object();  // settings snapshot
    std::string pipeline_version = std::string(kPipelineVersion);

    bool operator==(const AnalysisReport&) const = default;
};

enum class ReportFormat { json, markdown };

// Byte-deterministic: equal reports render to equal bytes.
std::string render_report(const AnalysisReport& report, ReportFormat format);
void write_report(const AnalysisReport& report, ReportFormat format,
                  const std::filesystem::path& path);

// Inverse of the JSON rendering; numeric fields round-trip exactly.
AnalysisReport report_from_json(std::string_view text);

enum class GraphFormat { gexf, dot, json };

std::optional<GraphFormat> parse_graph_format(std::string_view text);

// partition and stats may be null; they add community and doc_freq node
// attributes when present.
std::string export_graph_text(const WordGraph& graph, const Partition* partition,
                              GraphFormat format, const std::vector<TermStats>* stats = nullptr);
void export_graph(const WordGraph& graph, const Partition* partition, GraphFormat format,
                  const std::filesystem::path& path,
                  const std::vector<TermStats>* stats = nullptr);

// Reads graphs written by export_graph (gexf / json formats).
WordGraph import_gexf(const std::filesystem::path& path);
WordGraph read_graph_json(const std::filesystem::path& path);

// term,community_id rows in node order.
void write_partition_csv(const WordGraph& graph, const Partition& partition,
                         const std::filesystem::path& path);
// Every graph term must be assigned exactly once; ids are renumbered
// densely by first appearance in node order.
Partition read_partition_csv(const WordGraph& graph, const std::filesystem::path& path);

}  // namespace nettext
