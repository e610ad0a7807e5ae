#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace nettext {

enum class Source { twitter_like, facebook_like, generic };

std::string_view to_string(Source source);
std::optional<Source> parse_source(std::string_view text);

// One conversational record flowing through the pipeline.
struct Document {
    std::string id;
    std::string text;
    Source source = Source::generic;
    std::optional<std::string> timestamp;  // ISO-8601, kept verbatim

    bool operator==(const Document&) const = default;
};

// Ordered collection of documents. Loaders assign synthetic ids to records
// without one and reject duplicate ids.
struct Corpus {
    std::string name;
    std::vector<Document> documents;

    bool operator==(const Corpus&) const = default;
};

enum class CorpusFormat { jsonl, csv };

std::string_view to_string(CorpusFormat format);
std::optional<CorpusFormat> parse_corpus_format(std::string_view text);

// `name` defaults to the file stem.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   std::string_view name = {});
Corpus corpus_from_jsonl(std::string_view content, std::string_view name);
Corpus corpus_from_csv(std::string_view content, std::string_view name);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format);
std::string corpus_to_jsonl(const Corpus& corpus);
std::string corpus_to_csv(const Corpus& corpus);

nlohmann::json document_to_json(const Document& doc);
// `context` names the record in error messages, e.g. "line 12".
Document document_from_json(const nlohmann::json& j, const std::string& context);

struct CorpusStats {
    std::size_t count = 0;
    double mean_text_length = 0.0;  // UTF-8 code points
    std::map<Source, std::size_t> per_source;
};

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace nettext
