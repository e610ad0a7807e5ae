#include "nettext/association.hpp"

#include <algorithm>
#include <unordered_map>

#include "nettext/util.hpp"

namespace nettext {

namespace {

using PairCounts = std::unordered_map<std::uint64_t, std::size_t>;

// Distinct dominant-word indices present in one document, ascending.
void doc_indices(const ProcessedDocument& doc,
                 const std::unordered_map<std::string_view, std::uint32_t>& index,
                 std::vector<std::uint32_t>& out) {
    out.clear();
    for (const auto& token : doc.tokens) {
        auto it = index.find(token);
        if (it != index.end()) out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

void count_doc_pairs(PairCounts& counts, const std::vector<std::uint32_t>& present) {
    for (std::size_t i = 0; i + 1 < present.size(); ++i)
        for (std::size_t j = i + 1; j < present.size(); ++j)
            ++counts[(static_cast<std::uint64_t>(present[i]) << 32) | present[j]];
}

std::unordered_map<std::string_view, std::uint32_t> word_index(const DominantWordSet& dominant) {
    std::unordered_map<std::string_view, std::uint32_t> index;
    index.reserve(dominant.words.size());
    for (std::size_t i = 0; i < dominant.words.size(); ++i)
        index.emplace(dominant.words[i], static_cast<std::uint32_t>(i));
    return index;
}

std::vector<WordPair> materialize(PairCounts&& counts, const DominantWordSet& dominant,
                                  std::size_t min_weight) {
    std::vector<WordPair> pairs;
    pairs.reserve(counts.size());
    for (const auto& [key, weight] : counts) {
        if (weight < min_weight) continue;
        const auto& u = dominant.words[key >> 32];
        const auto& v = dominant.words[key & 0xFFFFFFFFu];
        WordPair p{u, v, weight};
        if (p.b < p.a) std::swap(p.a, p.b);  // canonical lexicographic order
        pairs.push_back(std::move(p));
    }
    std::sort(pairs.begin(), pairs.end(), [](const WordPair& x, const WordPair& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return pairs;
}

const char* kPairsSchema = "#schema nettext/pairs v1";

}  // namespace

std::vector<WordPair> mine_pairs_serial(const std::vector<ProcessedDocument>& docs,
                                        const DominantWordSet& dominant,
                                        std::size_t min_weight) {
    if (min_weight < 1) throw Error("min pair weight must be at least 1");
    const auto index = word_index(dominant);
    PairCounts counts;
    std::vector<std::uint32_t> present;
    for (const auto& doc : docs) {
        doc_indices(doc, index, present);
        count_doc_pairs(counts, present);
    }
    return materialize(std::move(counts), dominant, min_weight);
}

std::vector<WordPair> mine_pairs(const std::vector<ProcessedDocument>& docs,
                                 const DominantWordSet& dominant, std::size_t min_weight) {
    if (min_weight < 1) throw Error("min pair weight must be at least 1");
    const int shards = max_threads();
    if (shards <= 1) return mine_pairs_serial(docs, dominant, min_weight);
    const auto index = word_index(dominant);
    std::vector<PairCounts> partial(static_cast<std::size_t>(shards));
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(docs.size());
#pragma omp parallel
    {
        auto& local = partial[static_cast<std::size_t>(current_thread())];
        std::vector<std::uint32_t> present;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            doc_indices(docs[static_cast<std::size_t>(i)], index, present);
            count_doc_pairs(local, present);
        }
    }
    PairCounts counts = std::move(partial.front());
    for (std::size_t s = 1; s < partial.size(); ++s)
        for (const auto& [key, weight] : partial[s]) counts[key] += weight;
    return materialize(std::move(counts), dominant, min_weight);
}

std::vector<WordPair> top_pairs(const std::vector<WordPair>& pairs, std::size_t k) {
    if (k < 1) throw Error("top_pairs k must be at least 1");
    std::vector<WordPair> out(pairs.begin(),
                              pairs.begin() + static_cast<std::ptrdiff_t>(std::min(k, pairs.size())));
    return out;
}

std::string pairs_csv(const std::vector<WordPair>& pairs, const std::vector<TermStats>& stats) {
    std::unordered_map<std::string_view, std::size_t> doc_freq;
    doc_freq.reserve(stats.size());
    for (const auto& s : stats) doc_freq.emplace(s.term, s.doc_freq);
    std::string out = kPairsSchema;
    out += "\nword_a,word_b,weight,confidence_a_to_b,confidence_b_to_a\n";
    for (const auto& p : pairs) {
        auto freq = [&doc_freq](const std::string& term) {
            auto it = doc_freq.find(term);
            if (it == doc_freq.end() || it->second == 0)
                throw Error("pair term missing from term stats: '" + term + "'");
            return static_cast<double>(it->second);
        };
        out += csv_field(p.a);
        out += ',';
        out += csv_field(p.b);
        out += ',';
        out += std::to_string(p.weight);
        out += ',';
        out += format_double(static_cast<double>(p.weight) / freq(p.a));
        out += ',';
        out += format_double(static_cast<double>(p.weight) / freq(p.b));
        out += '\n';
    }
    return out;
}

void write_pairs_csv(const std::vector<WordPair>& pairs, const std::vector<TermStats>& stats,
                     const std::filesystem::path& path) {
    write_file(path, pairs_csv(pairs, stats));
}

std::vector<WordPair> read_pairs_csv(const std::filesystem::path& path) {
    std::string content = read_file(path);
    std::size_t eol = content.find('\n');
    if (eol == std::string::npos || content.substr(0, eol) != kPairsSchema)
        throw Error(path.string() + ": schema-version mismatch, expected '" +
                    std::string(kPairsSchema) + "'");
    auto records = parse_csv(std::string_view(content).substr(eol + 1));
    const std::vector<std::string> header{"word_a", "word_b", "weight", "confidence_a_to_b",
                                          "confidence_b_to_a"};
    if (records.empty() || records.front().fields != header)
        throw Error(path.string() + ": unexpected pairs header");
    std::vector<WordPair> pairs;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
        if (rec.fields.size() != 5)
            throw Error(path.string() + ": line " + std::to_string(rec.line + 1) +
                        ": expected 5 fields");
        try {
            pairs.push_back({rec.fields[0], rec.fields[1], std::stoull(rec.fields[2])});
        } catch (const std::exception&) {
            throw Error(path.string() + ": line " + std::to_string(rec.line + 1) +
                        ": invalid weight");
        }
    }
    return pairs;
}

}  // namespace nettext
