#include "nettext/preprocess.hpp"

#include <algorithm>
#include <cctype>

#include "nettext/util.hpp"

namespace nettext {

namespace {

bool is_space_byte(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool starts_with_ci(std::string_view s, std::size_t i, std::string_view prefix) {
    if (i + prefix.size() > s.size()) return false;
    for (std::size_t k = 0; k < prefix.size(); ++k)
        if (std::tolower(static_cast<unsigned char>(s[i + k])) != prefix[k]) return false;
    return true;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ') ++i;
        if (i > start) words.emplace_back(s.substr(start, i - start));
    }
    return words;
}

// Particles split into words, longest match first so "tidak bisa" wins
// over "tidak".
struct ParticlePlan {
    std::vector<std::vector<std::string>> particles;
};

ParticlePlan plan_particles(const PreprocessConfig& config) {
    ParticlePlan plan;
    for (const auto& p : config.negation_particles) {
        auto words = split_words(normalize(p));
        if (!words.empty()) plan.particles.push_back(std::move(words));
    }
    std::sort(plan.particles.begin(), plan.particles.end(),
              [](const auto& a, const auto& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
    plan.particles.erase(std::unique(plan.particles.begin(), plan.particles.end()),
                         plan.particles.end());
    return plan;
}

std::vector<std::string> tokenize_with_plan(std::string_view normalized,
                                            const PreprocessConfig& config,
                                            const ParticlePlan& plan) {
    auto words = split_words(normalized);
    std::vector<std::string> merged;
    merged.reserve(words.size());
    std::size_t i = 0;
    while (i < words.size()) {
        const std::vector<std::string>* match = nullptr;
        for (const auto& particle : plan.particles) {
            if (particle.size() > words.size() - i) continue;
            if (std::equal(particle.begin(), particle.end(), words.begin() + i)) {
                match = &particle;
                break;
            }
        }
        if (match) {
            std::size_t next = i + match->size();
            if (next < words.size()) {
                std::string token = words[i];
                for (std::size_t k = i + 1; k <= next; ++k) {
                    token += ' ';
                    token += words[k];
                }
                merged.push_back(std::move(token));
                i = next + 1;
            } else {
                i = next;  // bare particle at the end of the text, dropped
            }
        } else {
            merged.push_back(std::move(words[i]));
            ++i;
        }
    }
    std::vector<std::string> tokens;
    tokens.reserve(merged.size());
    for (auto& token : merged) {
        if (utf8_length(token) < static_cast<std::size_t>(config.min_token_length)) continue;
        if (config.stopwords.count(token)) continue;
        tokens.push_back(std::move(token));
    }
    return tokens;
}

}  // namespace

std::string normalize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    auto push_space = [&out] {
        if (!out.empty() && out.back() != ' ') out.push_back(' ');
    };
    std::size_t i = 0;
    while (i < text.size()) {
        if (starts_with_ci(text, i, "http://") || starts_with_ci(text, i, "https://") ||
            starts_with_ci(text, i, "www.")) {
            while (i < text.size() && !is_space_byte(text[i])) ++i;
            push_space();
            continue;
        }
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '@') {  // mention: drop the marker and the handle
            ++i;
            while (i < text.size()) {
                unsigned char h = static_cast<unsigned char>(text[i]);
                if (!std::isalnum(h) && h != '_') break;
                ++i;
            }
            push_space();
            continue;
        }
        if (c == '#') {  // hashtag: drop the marker, keep the word
            ++i;
            continue;
        }
        if (std::isalpha(c)) {
            out.push_back(static_cast<char>(std::tolower(c)));
        } else if (std::isdigit(c)) {
            out.push_back(static_cast<char>(c));
        } else {
            // punctuation, symbols, emoji and non-ASCII bytes separate words
            push_space();
        }
        ++i;
    }
    if (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::vector<std::string> tokenize(std::string_view normalized, const PreprocessConfig& config) {
    return tokenize_with_plan(normalized, config, plan_particles(config));
}

Corpus filter_relevant(const Corpus& corpus, const PreprocessConfig& config) {
    auto normalize_patterns = [](const std::vector<std::string>& patterns, const char* which) {
        std::vector<std::string> out;
        out.reserve(patterns.size());
        for (const auto& p : patterns) {
            std::string n = normalize(p);
            if (n.empty())
                throw Error(std::string("relevance ") + which + " pattern normalizes to empty: '" +
                            p + "'");
            out.push_back(std::move(n));
        }
        return out;
    };
    const auto keep = normalize_patterns(config.relevance_keep, "keep");
    const auto drop = normalize_patterns(config.relevance_drop, "drop");

    Corpus out;
    out.name = corpus.name;
    std::unordered_set<std::string> seen;
    for (const auto& doc : corpus.documents) {
        std::string norm = normalize(doc.text);
        if (norm.empty()) continue;
        auto contains = [&norm](const std::string& pattern) {
            return norm.find(pattern) != std::string::npos;
        };
        if (!keep.empty() && std::none_of(keep.begin(), keep.end(), contains)) continue;
        if (std::any_of(drop.begin(), drop.end(), contains)) continue;
        if (!seen.insert(std::move(norm)).second) continue;
        out.documents.push_back(doc);
    }
    return out;
}

std::vector<ProcessedDocument> tokenize_corpus(const Corpus& corpus,
                                               const PreprocessConfig& config) {
    const auto plan = plan_particles(config);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(corpus.documents.size());
    std::vector<ProcessedDocument> out(corpus.documents.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& doc = corpus.documents[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] =
            ProcessedDocument{doc.id, tokenize_with_plan(normalize(doc.text), config, plan)};
    }
    return out;
}

std::vector<ProcessedDocument> tokenize_corpus_serial(const Corpus& corpus,
                                                      const PreprocessConfig& config) {
    const auto plan = plan_particles(config);
    std::vector<ProcessedDocument> out;
    out.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents)
        out.push_back({doc.id, tokenize_with_plan(normalize(doc.text), config, plan)});
    return out;
}

std::vector<ProcessedDocument> preprocess_corpus(const Corpus& corpus,
                                                 const PreprocessConfig& config) {
    return tokenize_corpus(filter_relevant(corpus, config), config);
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::string content;
    try {
        content = read_file(path);
    } catch (const Error& e) {
        throw Error(std::string("stopword list: ") + e.what());
    }
    std::unordered_set<std::string> words;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string::npos) end = content.size();
        std::string_view line(content.data() + pos, end - pos);
        pos = end + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (line.empty() || line.front() == '#') {
            if (pos > content.size()) break;
            continue;
        }
        std::string entry = normalize(line);
        if (!entry.empty()) words.insert(std::move(entry));
        if (pos > content.size()) break;
    }
    return words;
}

}  // namespace nettext
