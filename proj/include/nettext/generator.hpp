#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nettext/corpus.hpp"
#include "nettext/preprocess.hpp"

namespace nettext {

// Weighted list of phrase patterns. Topic vocabularies must be disjoint so
// community recovery can be scored against the planted assignment.
struct TopicTemplate {
    std::string name;
    double weight = 1.0;
    std::vector<std::string> phrases;
};

struct CorpusGeneratorSpec {
    std::uint32_t seed = 1;
    std::size_t count = 2000;
    std::vector<TopicTemplate> topics;
    double noise_rate = 0.25;      // URLs, mentions, hashtags, emoji
    double mix_rate = 0.12;        // chance a document borrows a second topic
    double offtopic_rate = 0.05;   // advertising chatter (contains "promo")
    double duplicate_rate = 0.02;  // exact duplicate of an earlier text
    double empty_rate = 0.01;      // noise-only texts that normalize to nothing
};

// The shipped 2000-document corpus: seed 1, six topics.
CorpusGeneratorSpec shipped_2000_spec();
// Two topics with five words each; small enough for exhaustive search.
CorpusGeneratorSpec two_topic_spec();

// Same spec and seed always produce the same corpus, on any platform.
Corpus generate_corpus(const CorpusGeneratorSpec& spec);
void generate_corpus_file(const CorpusGeneratorSpec& spec, const std::filesystem::path& path);

// token -> topic index under the given preprocessing; rejects specs whose
// topics share tokens.
std::map<std::string, int> planted_topics(const CorpusGeneratorSpec& spec,
                                          const PreprocessConfig& config);

}  // namespace nettext
