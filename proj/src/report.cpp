#include "nettext/report.hpp"

#include <algorithm>
#include <unordered_map>

namespace nettext {

namespace {

using nlohmann::json;

const char* kReportSchema = "nettext/report";
const char* kGraphSchema = "nettext/graph";
const char* kPartitionSchema = "#schema nettext/partition v1";

json group_to_json(const CommunityGroup& g) {
    return json{{"id", g.id}, {"size", g.size}, {"size_percent", g.size_percent},
                {"terms", g.terms}};
}

json pair_to_json(const WordPair& p) {
    return json{{"a", p.a}, {"b", p.b}, {"weight", p.weight}};
}

json term_to_json(const TermStats& t) {
    return json{{"term", t.term}, {"doc_freq", t.doc_freq}, {"total_freq", t.total_freq}};
}

std::string render_json(const AnalysisReport& r) {
    json j;
    j["schema"] = kReportSchema;
    j["version"] = 1;
    j["name"] = r.name;
    j["pipeline_version"] = r.pipeline_version;
    j["profile"] = {{"raw_count", r.profile.raw_count},
                    {"processed_count", r.profile.processed_count},
                    {"nodes", r.profile.nodes},
                    {"edges", r.profile.edges}};
    if (r.density)
        j["density"] = *r.density;
    else
        j["density"] = nullptr;
    if (r.modularity)
        j["modularity"] = *r.modularity;
    else
        j["modularity"] = nullptr;
    j["communities"] = {{"count", r.communities.community_count},
                        {"modularity", r.communities.modularity},
                        {"groups", json::array()}};
    for (const auto& g : r.communities.groups) j["communities"]["groups"].push_back(group_to_json(g));
    j["top_pairs"] = json::array();
    for (const auto& p : r.top_pairs) j["top_pairs"].push_back(pair_to_json(p));
    j["dominant_terms"] = json::array();
    for (const auto& t : r.dominant_terms) j["dominant_terms"].push_back(term_to_json(t));
    j["config"] = r.config;
    return j.dump(2) + "\n";
}

void require(bool ok, const std::string& message) {
    if (!ok) throw Error(message);
}

std::string markdown_terms_cell(const std::vector<std::string>& terms) {
    constexpr std::size_t kShown = 8;
    std::string cell;
    for (std::size_t i = 0; i < terms.size() && i < kShown; ++i) {
        if (i) cell += ", ";
        cell += terms[i];
    }
    if (terms.size() > kShown) cell += ", ...";
    return cell;
}

std::string render_markdown(const AnalysisReport& r) {
    std::string out;
    out += "# Network Text Report: " + r.name + "\n\n";
    out += "Pipeline version " + r.pipeline_version + ".\n\n";

    out += "## Data Profile\n\n";
    out += "| Metric | Value |\n| --- | --- |\n";
    out += "| Raw Data | " + std::to_string(r.profile.raw_count) + " |\n";
    out += "| Processed Data | " + std::to_string(r.profile.processed_count) + " |\n";
    out += "| Nodes | " + std::to_string(r.profile.nodes) + " |\n";
    out += "| Edges | " + std::to_string(r.profile.edges) + " |\n\n";

    out += "## Top Word Pairs\n\n";
    if (r.top_pairs.empty()) {
        out += "No pairs.\n\n";
    } else {
        out += "| Words | Weight |\n| --- | --- |\n";
        for (const auto& p : r.top_pairs)
            out += "| " + p.a + "-" + p.b + " | " + std::to_string(p.weight) + " |\n";
        out += "\n";
    }

    out += "## Network Properties\n\n";
    out += "| Property | Value |\n| --- | --- |\n";
    out += "| Density | " + (r.density ? format_fixed(*r.density, 4) : std::string("n/a")) + " |\n";
    out += "| Modularity | " +
           (r.modularity ? format_fixed(*r.modularity, 3) : std::string("n/a")) + " |\n";
    out += "| Communities | " + std::to_string(r.communities.community_count) + " |\n\n";

    out += "## Topic Groups\n\n";
    if (r.communities.groups.empty()) {
        out += "No communities.\n";
    } else {
        out += "| Group | Size | Share | Terms |\n| --- | --- | --- | --- |\n";
        for (const auto& g : r.communities.groups)
            out += "| " + std::to_string(g.id) + " | " + std::to_string(g.size) + " | " +
                   format_fixed(g.size_percent, 2) + "% | " + markdown_terms_cell(g.terms) +
                   " |\n";
    }
    return out;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string xml_unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '&') {
            auto starts = [&](std::string_view entity) {
                return s.substr(i).substr(0, entity.size()) == entity;
            };
            if (starts("&amp;")) { out += '&'; i += 5; continue; }
            if (starts("&lt;")) { out += '<'; i += 4; continue; }
            if (starts("&gt;")) { out += '>'; i += 4; continue; }
            if (starts("&quot;")) { out += '"'; i += 6; continue; }
            if (starts("&apos;")) { out += '\''; i += 6; continue; }
        }
        out.push_back(s[i++]);
    }
    return out;
}

}  // namespace

std::optional<GraphFormat> parse_graph_format(std::string_view text) {
    if (text == "gexf") return GraphFormat::gexf;
    if (text == "dot") return GraphFormat::dot;
    if (text == "json") return GraphFormat::json;
    return std::nullopt;
}

std::string render_report(const AnalysisReport& report, ReportFormat format) {
    return format == ReportFormat::json ? render_json(report) : render_markdown(report);
}

void write_report(const AnalysisReport& report, ReportFormat format,
                  const std::filesystem::path& path) {
    write_file(path, render_report(report, format));
}

AnalysisReport report_from_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    require(!j.is_discarded() && j.is_object(), "report: invalid JSON");
    require(j.value("schema", "") == kReportSchema && j.value("version", 0) == 1,
            "report: schema-version mismatch, expected nettext/report v1");
    AnalysisReport r;
    r.name = j.at("name").get<std::string>();
    r.pipeline_version = j.at("pipeline_version").get<std::string>();
    const auto& p = j.at("profile");
    r.profile = {p.at("raw_count").get<std::size_t>(), p.at("processed_count").get<std::size_t>(),
                 p.at("nodes").get<std::size_t>(), p.at("edges").get<std::size_t>()};
    if (!j.at("density").is_null()) r.density = j.at("density").get<double>();
    if (!j.at("modularity").is_null()) r.modularity = j.at("modularity").get<double>();
    const auto& c = j.at("communities");
    r.communities.community_count = c.at("count").get<int>();
    r.communities.modularity = c.at("modularity").get<double>();
    for (const auto& g : c.at("groups")) {
        CommunityGroup group;
        group.id = g.at("id").get<int>();
        group.size = g.at("size").get<std::size_t>();
        group.size_percent = g.at("size_percent").get<double>();
        group.terms = g.at("terms").get<std::vector<std::string>>();
        r.communities.groups.push_back(std::move(group));
    }
    for (const auto& q : j.at("top_pairs"))
        r.top_pairs.push_back(
            {q.at("a").get<std::string>(), q.at("b").get<std::string>(), q.at("weight").get<std::size_t>()});
    for (const auto& t : j.at("dominant_terms"))
        r.dominant_terms.push_back({t.at("term").get<std::string>(), t.at("doc_freq").get<std::size_t>(),
                                    t.at("total_freq").get<std::size_t>()});
    r.config = j.at("config");
    return r;
}

std::string export_graph_text(const WordGraph& graph, const Partition* partition,
                              GraphFormat format, const std::vector<TermStats>* stats) {
    if (partition && static_cast<int>(partition->community.size()) != graph.node_count())
        throw Error("graph export: partition does not cover the graph");
    std::unordered_map<std::string_view, std::size_t> doc_freq;
    if (stats)
        for (const auto& s : *stats) doc_freq.emplace(s.term, s.doc_freq);
    auto freq_of = [&](int node) -> std::optional<std::size_t> {
        if (!stats) return std::nullopt;
        auto it = doc_freq.find(graph.term(node));
        if (it == doc_freq.end()) return std::nullopt;
        return it->second;
    };
    const auto metrics = node_metrics(graph);

    if (format == GraphFormat::gexf) {
        std::string out;
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
        out += "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
        out += "    <attributes class=\"node\">\n";
        out += "      <attribute id=\"0\" title=\"doc_freq\" type=\"long\"/>\n";
        out += "      <attribute id=\"1\" title=\"degree\" type=\"long\"/>\n";
        out += "      <attribute id=\"2\" title=\"weighted_degree\" type=\"double\"/>\n";
        out += "      <attribute id=\"3\" title=\"community\" type=\"long\"/>\n";
        out += "    </attributes>\n";
        out += "    <nodes>\n";
        for (int node = 0; node < graph.node_count(); ++node) {
            const auto& m = metrics[static_cast<std::size_t>(node)];
            out += "      <node id=\"" + std::to_string(node) + "\" label=\"" +
                   xml_escape(graph.term(node)) + "\">\n";
            out += "        <attvalues>\n";
            if (auto f = freq_of(node))
                out += "          <attvalue for=\"0\" value=\"" + std::to_string(*f) + "\"/>\n";
            out += "          <attvalue for=\"1\" value=\"" + std::to_string(m.degree) + "\"/>\n";
            out += "          <attvalue for=\"2\" value=\"" + format_double(m.weighted_degree) +
                   "\"/>\n";
            if (partition)
                out += "          <attvalue for=\"3\" value=\"" +
                       std::to_string(partition->community[static_cast<std::size_t>(node)]) +
                       "\"/>\n";
            out += "        </attvalues>\n";
            out += "      </node>\n";
        }
        out += "    </nodes>\n";
        out += "    <edges>\n";
        std::size_t id = 0;
        for (const auto& e : graph.edges()) {
            out += "      <edge id=\"" + std::to_string(id++) + "\" source=\"" +
                   std::to_string(e.u) + "\" target=\"" + std::to_string(e.v) + "\" weight=\"" +
                   format_double(e.weight) + "\"/>\n";
        }
        out += "    </edges>\n";
        out += "  </graph>\n";
        out += "</gexf>\n";
        return out;
    }

    if (format == GraphFormat::dot) {
        double wmax = 0.0;
        for (const auto& e : graph.edges()) wmax = std::max(wmax, e.weight);
        auto quote = [](const std::string& s) {
            std::string out = "\"";
            for (char c : s) {
                if (c == '"' || c == '\\') out.push_back('\\');
                out.push_back(c);
            }
            out += "\"";
            return out;
        };
        std::string out = "graph wordnet {\n";
        for (int node = 0; node < graph.node_count(); ++node) {
            out += "  " + quote(graph.term(node));
            if (partition)
                out += " [community=" +
                       std::to_string(partition->community[static_cast<std::size_t>(node)]) + "]";
            out += ";\n";
        }
        for (const auto& e : graph.edges()) {
            const double penwidth = wmax > 0.0 ? 0.5 + 4.5 * e.weight / wmax : 1.0;
            out += "  " + quote(graph.term(e.u)) + " -- " + quote(graph.term(e.v)) + " [weight=" +
                   format_double(e.weight) + ", penwidth=" + format_fixed(penwidth, 2) + "];\n";
        }
        out += "}\n";
        return out;
    }

    json j;
    j["schema"] = kGraphSchema;
    j["version"] = 1;
    j["nodes"] = json::array();
    for (int node = 0; node < graph.node_count(); ++node) {
        const auto& m = metrics[static_cast<std::size_t>(node)];
        json jn{{"id", node},
                {"term", graph.term(node)},
                {"degree", m.degree},
                {"weighted_degree", m.weighted_degree}};
        if (auto f = freq_of(node)) jn["doc_freq"] = *f;
        if (partition) jn["community"] = partition->community[static_cast<std::size_t>(node)];
        j["nodes"].push_back(std::move(jn));
    }
    j["edges"] = json::array();
    for (const auto& e : graph.edges())
        j["edges"].push_back(json{{"source", e.u}, {"target", e.v}, {"weight", e.weight}});
    return j.dump(2) + "\n";
}

void export_graph(const WordGraph& graph, const Partition* partition, GraphFormat format,
                  const std::filesystem::path& path, const std::vector<TermStats>* stats) {
    write_file(path, export_graph_text(graph, partition, format, stats));
}

WordGraph import_gexf(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    auto attr = [&](std::string_view tag, std::string_view name) -> std::optional<std::string> {
        const std::string pattern = " " + std::string(name) + "=\"";
        auto pos = tag.find(pattern);
        if (pos == std::string_view::npos) return std::nullopt;
        pos += pattern.size();
        auto end = tag.find('"', pos);
        if (end == std::string_view::npos) return std::nullopt;
        return xml_unescape(tag.substr(pos, end - pos));
    };
    std::vector<std::string> terms;
    std::unordered_map<std::string, int> by_id;
    std::vector<WordGraph::Edge> edges;
    std::size_t pos = 0;
    const std::string_view view(content);
    while (pos < view.size()) {
        auto open = view.find('<', pos);
        if (open == std::string_view::npos) break;
        auto close = view.find('>', open);
        if (close == std::string_view::npos)
            throw Error(path.string() + ": malformed XML near offset " + std::to_string(open));
        std::string_view tag = view.substr(open, close - open + 1);
        pos = close + 1;
        if (tag.starts_with("<node ")) {
            auto id = attr(tag, "id");
            auto label = attr(tag, "label");
            if (!id || !label) throw Error(path.string() + ": node tag missing id or label");
            if (!by_id.emplace(*id, static_cast<int>(terms.size())).second)
                throw Error(path.string() + ": duplicate node id '" + *id + "'");
            terms.push_back(*label);
        } else if (tag.starts_with("<edge ")) {
            auto source = attr(tag, "source");
            auto target = attr(tag, "target");
            if (!source || !target)
                throw Error(path.string() + ": edge tag missing source or target");
            auto find = [&](const std::string& id) {
                auto it = by_id.find(id);
                if (it == by_id.end())
                    throw Error(path.string() + ": edge references unknown node '" + id + "'");
                return it->second;
            };
            double weight = 1.0;
            if (auto w = attr(tag, "weight")) {
                try {
                    weight = std::stod(*w);
                } catch (const std::exception&) {
                    throw Error(path.string() + ": invalid edge weight '" + *w + "'");
                }
            }
            edges.push_back({find(*source), find(*target), weight});
        }
    }
    return WordGraph::from_edges(std::move(terms), std::move(edges));
}

WordGraph read_graph_json(const std::filesystem::path& path) {
    json j = json::parse(read_file(path), nullptr, false);
    require(!j.is_discarded() && j.is_object(), path.string() + ": invalid JSON");
    require(j.value("schema", "") == kGraphSchema && j.value("version", 0) == 1,
            path.string() + ": schema-version mismatch, expected nettext/graph v1");
    std::vector<std::string> terms;
    for (const auto& node : j.at("nodes")) {
        require(node.at("id").get<int>() == static_cast<int>(terms.size()),
                path.string() + ": node ids must be consecutive from 0");
        terms.push_back(node.at("term").get<std::string>());
    }
    std::vector<WordGraph::Edge> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back(
            {e.at("source").get<int>(), e.at("target").get<int>(), e.at("weight").get<double>()});
    return WordGraph::from_edges(std::move(terms), std::move(edges));
}

void write_partition_csv(const WordGraph& graph, const Partition& partition,
                         const std::filesystem::path& path) {
    if (static_cast<int>(partition.community.size()) != graph.node_count())
        throw Error("partition export: partition does not cover the graph");
    std::string out = kPartitionSchema;
    out += "\nterm,community_id\n";
    for (int node = 0; node < graph.node_count(); ++node) {
        out += csv_field(graph.term(node));
        out += ',';
        out += std::to_string(partition.community[static_cast<std::size_t>(node)]);
        out += '\n';
    }
    write_file(path, out);
}

Partition read_partition_csv(const WordGraph& graph, const std::filesystem::path& path) {
    std::string content = read_file(path);
    std::size_t eol = content.find('\n');
    if (eol == std::string::npos || content.substr(0, eol) != kPartitionSchema)
        throw Error(path.string() + ": schema-version mismatch, expected '" +
                    std::string(kPartitionSchema) + "'");
    auto records = parse_csv(std::string_view(content).substr(eol + 1));
    if (records.empty() || records.front().fields != std::vector<std::string>{"term", "community_id"})
        throw Error(path.string() + ": expected header 'term,community_id'");
    std::unordered_map<std::string, int> assigned;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
        if (rec.fields.size() != 2)
            throw Error(path.string() + ": line " + std::to_string(rec.line + 1) +
                        ": expected 2 fields");
        int id = 0;
        try {
            id = std::stoi(rec.fields[1]);
        } catch (const std::exception&) {
            throw Error(path.string() + ": invalid community id '" + rec.fields[1] + "'");
        }
        if (id < 0) throw Error(path.string() + ": negative community id for '" + rec.fields[0] + "'");
        if (!assigned.emplace(rec.fields[0], id).second)
            throw Error(path.string() + ": term assigned twice: '" + rec.fields[0] + "'");
    }
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(graph.node_count()));
    for (int node = 0; node < graph.node_count(); ++node) {
        auto it = assigned.find(graph.term(node));
        if (it == assigned.end())
            throw Error(path.string() + ": term missing from partition: '" + graph.term(node) + "'");
        labels.push_back(it->second);
    }
    return Partition::from_labels(std::move(labels));
}

}  // namespace nettext
