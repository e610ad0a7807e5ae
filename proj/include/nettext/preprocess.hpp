#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "nettext/corpus.hpp"

namespace nettext {

struct PreprocessConfig {
    std::unordered_set<std::string> stopwords;
    // Literal substrings matched against the normalized text. An empty keep
    // list keeps everything; any drop match discards the document.
    std::vector<std::string> relevance_keep;
    std::vector<std::string> relevance_drop;
    // Merged with the single following token so negated phrases survive as
    // one unit ("tidak sampai" stays distinct from "sampai").
    std::vector<std::string> negation_particles{"tidak", "belum", "tidak bisa", "belum bisa"};
    int min_token_length = 2;
};

struct ProcessedDocument {
    std::string id;
    std::vector<std::string> tokens;

    bool operator==(const ProcessedDocument&) const = default;
};

// Lowercases, strips URLs, @mentions, the '#' marker (the tag word is kept),
// punctuation, emoji and any non-ASCII byte, and collapses whitespace.
// Idempotent: normalize(normalize(x)) == normalize(x).
std::string normalize(std::string_view text);

// Splits normalized text, merges negation particles with the following
// token, then applies the stopword list and the minimum token length.
std::vector<std::string> tokenize(std::string_view normalized, const PreprocessConfig& config);

// Drops documents whose normalized text is empty, applies the keep/drop
// lists and removes duplicate texts (first occurrence wins). Order is kept.
Corpus filter_relevant(const Corpus& corpus, const PreprocessConfig& config);

// Tokenizes every document of an already filtered corpus. The parallel and
// serial versions produce identical output.
std::vector<ProcessedDocument> tokenize_corpus(const Corpus& corpus,
                                               const PreprocessConfig& config);
std::vector<ProcessedDocument> tokenize_corpus_serial(const Corpus& corpus,
                                                      const PreprocessConfig& config);

// filter_relevant followed by tokenize_corpus.
std::vector<ProcessedDocument> preprocess_corpus(const Corpus& corpus,
                                                 const PreprocessConfig& config);

// One entry per line; blank lines and lines starting with '#' are skipped.
// Entries are normalized on load.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

}  // namespace nettext
