#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "nettext/preprocess.hpp"

namespace nettext {

struct TermStats {
    std::string term;
    std::size_t doc_freq = 0;    // documents containing the term
    std::size_t total_freq = 0;  // occurrences across all documents

    bool operator==(const TermStats&) const = default;
};

// Per-term counts over the whole corpus, sorted by term. The parallel and
// serial versions produce identical output.
std::vector<TermStats> term_stats(const std::vector<ProcessedDocument>& docs);
std::vector<TermStats> term_stats_serial(const std::vector<ProcessedDocument>& docs);

// The `cap` most frequent terms with doc_freq >= min_doc_freq, ordered by
// descending doc_freq and ascending term on ties.
struct DominantWordSet {
    std::vector<std::string> words;
    std::size_t cap = 0;
};

DominantWordSet select_dominant(const std::vector<TermStats>& stats, std::size_t cap,
                                std::size_t min_doc_freq);

// CSV of the top_k terms in dominant order: term,total_freq,doc_freq.
void wordcloud_export(const std::vector<TermStats>& stats, std::size_t top_k,
                      const std::filesystem::path& path);
std::string wordcloud_csv(const std::vector<TermStats>& stats, std::size_t top_k);

std::vector<TermStats> read_terms_csv(const std::filesystem::path& path);

}  // namespace nettext
