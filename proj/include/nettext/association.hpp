#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "nettext/frequency.hpp"
#include "nettext/preprocess.hpp"

namespace nettext {

// Unordered pair with a < b lexicographically. The weight is the number of
// documents containing both words (presence, not occurrence counts).
struct WordPair {
    std::string a;
    std::string b;
    std::size_t weight = 0;

    bool operator==(const WordPair&) const = default;
};

// All dominant-word pairs with weight >= min_weight, sorted by descending
// weight, then a, then b. The parallel and serial versions produce
// identical output.
std::vector<WordPair> mine_pairs(const std::vector<ProcessedDocument>& docs,
                                 const DominantWordSet& dominant, std::size_t min_weight);
std::vector<WordPair> mine_pairs_serial(const std::vector<ProcessedDocument>& docs,
                                        const DominantWordSet& dominant, std::size_t min_weight);

// First k pairs of an already sorted pair list.
std::vector<WordPair> top_pairs(const std::vector<WordPair>& pairs, std::size_t k);

// CSV: word_a,word_b,weight,confidence_a_to_b,confidence_b_to_a where
// confidence_x_to_y = weight / doc_freq(x).
void write_pairs_csv(const std::vector<WordPair>& pairs, const std::vector<TermStats>& stats,
                     const std::filesystem::path& path);
std::string pairs_csv(const std::vector<WordPair>& pairs, const std::vector<TermStats>& stats);

std::vector<WordPair> read_pairs_csv(const std::filesystem::path& path);

}  // namespace nettext
