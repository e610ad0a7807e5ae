#include "nettext/corpus.hpp"

#include <unordered_set>

#include "nettext/util.hpp"

namespace nettext {

namespace {

const char* kCsvHeader = "id,text,source,timestamp";

void check_unique_id(std::unordered_set<std::string>& seen, const std::string& id) {
    if (!seen.insert(id).second) throw Error("duplicate document id: '" + id + "'");
}

}  // namespace

std::string_view to_string(Source source) {
    switch (source) {
        case Source::twitter_like: return "twitter-like";
        case Source::facebook_like: return "facebook-like";
        case Source::generic: return "generic";
    }
    return "generic";
}

std::optional<Source> parse_source(std::string_view text) {
    if (text == "twitter-like") return Source::twitter_like;
    if (text == "facebook-like") return Source::facebook_like;
    if (text == "generic") return Source::generic;
    return std::nullopt;
}

std::string_view to_string(CorpusFormat format) {
    return format == CorpusFormat::jsonl ? "jsonl" : "csv";
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view text) {
    if (text == "jsonl") return CorpusFormat::jsonl;
    if (text == "csv") return CorpusFormat::csv;
    return std::nullopt;
}

nlohmann::json document_to_json(const Document& doc) {
    nlohmann::json j;
    j["id"] = doc.id;
    j["text"] = doc.text;
    j["source"] = to_string(doc.source);
    if (doc.timestamp) j["timestamp"] = *doc.timestamp;
    return j;
}

Document document_from_json(const nlohmann::json& j, const std::string& context) {
    if (!j.is_object()) throw Error(context + ": record must be a JSON object");
    Document doc;
    if (!j.contains("text")) throw Error(context + ": missing required field 'text'");
    if (!j["text"].is_string()) throw Error(context + ": field 'text' must be a string");
    doc.text = j["text"].get<std::string>();
    if (j.contains("id")) {
        if (!j["id"].is_string()) throw Error(context + ": field 'id' must be a string");
        doc.id = j["id"].get<std::string>();
    }
    if (j.contains("source") && !j["source"].is_null()) {
        if (!j["source"].is_string()) throw Error(context + ": field 'source' must be a string");
        auto source = parse_source(j["source"].get<std::string>());
        if (!source)
            throw Error(context + ": unknown source '" + j["source"].get<std::string>() +
                        "' (expected twitter-like, facebook-like or generic)");
        doc.source = *source;
    }
    if (j.contains("timestamp") && !j["timestamp"].is_null()) {
        if (!j["timestamp"].is_string())
            throw Error(context + ": field 'timestamp' must be a string");
        doc.timestamp = j["timestamp"].get<std::string>();
    }
    return doc;
}

Corpus corpus_from_jsonl(std::string_view content, std::string_view name) {
    Corpus corpus;
    corpus.name = std::string(name);
    std::unordered_set<std::string> seen;
    std::size_t line = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        ++line;
        std::string_view raw = content.substr(pos, end - pos);
        pos = end + 1;
        if (pos > content.size() && raw.empty()) break;
        std::string_view trimmed = raw;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
            trimmed.remove_suffix(1);
        while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
        if (trimmed.empty()) continue;
        const std::string context = "line " + std::to_string(line);
        nlohmann::json j = nlohmann::json::parse(trimmed, nullptr, false);
        if (j.is_discarded()) throw Error(context + ": invalid JSON");
        Document doc = document_from_json(j, context);
        if (doc.id.empty()) doc.id = "rec-" + std::to_string(line);
        check_unique_id(seen, doc.id);
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

Corpus corpus_from_csv(std::string_view content, std::string_view name) {
    Corpus corpus;
    corpus.name = std::string(name);
    auto records = parse_csv(content);
    if (records.empty()) throw Error("csv corpus must start with header '" + std::string(kCsvHeader) + "'");
    const auto& header = records.front().fields;
    if (header != std::vector<std::string>{"id", "text", "source", "timestamp"})
        throw Error("csv corpus must start with header '" + std::string(kCsvHeader) + "'");
    std::unordered_set<std::string> seen;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;  // blank line
        const std::string context = "line " + std::to_string(rec.line);
        if (rec.fields.size() != 4)
            throw Error(context + ": expected 4 fields, found " + std::to_string(rec.fields.size()));
        Document doc;
        doc.id = rec.fields[0];
        doc.text = rec.fields[1];
        if (!rec.fields[2].empty()) {
            auto source = parse_source(rec.fields[2]);
            if (!source)
                throw Error(context + ": unknown source '" + rec.fields[2] +
                            "' (expected twitter-like, facebook-like or generic)");
            doc.source = *source;
        }
        if (!rec.fields[3].empty()) doc.timestamp = rec.fields[3];
        if (doc.id.empty()) doc.id = "rec-" + std::to_string(rec.line);
        check_unique_id(seen, doc.id);
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   std::string_view name) {
    std::string content = read_file(path);
    std::string effective(name);
    if (effective.empty()) effective = path.stem().string();
    try {
        return format == CorpusFormat::jsonl ? corpus_from_jsonl(content, effective)
                                             : corpus_from_csv(content, effective);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& doc : corpus.documents) {
        out += document_to_json(doc).dump();
        out += '\n';
    }
    return out;
}

std::string corpus_to_csv(const Corpus& corpus) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& doc : corpus.documents) {
        out += csv_field(doc.id);
        out += ',';
        out += csv_field(doc.text);
        out += ',';
        out += to_string(doc.source);
        out += ',';
        if (doc.timestamp) out += csv_field(*doc.timestamp);
        out += '\n';
    }
    return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format) {
    write_file(path, format == CorpusFormat::jsonl ? corpus_to_jsonl(corpus)
                                                   : corpus_to_csv(corpus));
}

CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats stats;
    stats.count = corpus.documents.size();
    std::size_t total = 0;
    for (const auto& doc : corpus.documents) {
        total += utf8_length(doc.text);
        ++stats.per_source[doc.source];
    }
    stats.mean_text_length =
        stats.count == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(stats.count);
    return stats;
}

}  // namespace nettext
