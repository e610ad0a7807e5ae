#include "nettext/frequency.hpp"

#include <algorithm>
#include <unordered_map>

#include "nettext/util.hpp"

namespace nettext {

namespace {

using CountMap = std::unordered_map<std::string, std::pair<std::size_t, std::size_t>>;

// Adds one document's counts: doc_freq once per distinct term, total_freq
// per occurrence.
void accumulate_doc(CountMap& acc, const ProcessedDocument& doc,
                    std::unordered_map<std::string_view, std::size_t>& scratch) {
    scratch.clear();
    for (const auto& token : doc.tokens) ++scratch[token];
    for (const auto& [term, count] : scratch) {
        auto& entry = acc[std::string(term)];
        entry.first += 1;
        entry.second += count;
    }
}

std::vector<TermStats> to_sorted_stats(CountMap&& acc) {
    std::vector<TermStats> stats;
    stats.reserve(acc.size());
    for (auto& [term, counts] : acc)
        stats.push_back({term, counts.first, counts.second});
    std::sort(stats.begin(), stats.end(),
              [](const TermStats& a, const TermStats& b) { return a.term < b.term; });
    return stats;
}

void sort_dominant(std::vector<TermStats>& stats) {
    std::sort(stats.begin(), stats.end(), [](const TermStats& a, const TermStats& b) {
        if (a.doc_freq != b.doc_freq) return a.doc_freq > b.doc_freq;
        return a.term < b.term;
    });
}

const char* kTermsSchema = "#schema nettext/terms v1";

}  // namespace

std::vector<TermStats> term_stats_serial(const std::vector<ProcessedDocument>& docs) {
    CountMap acc;
    std::unordered_map<std::string_view, std::size_t> scratch;
    for (const auto& doc : docs) accumulate_doc(acc, doc, scratch);
    return to_sorted_stats(std::move(acc));
}

std::vector<TermStats> term_stats(const std::vector<ProcessedDocument>& docs) {
    const int shards = max_threads();
    if (shards <= 1) return term_stats_serial(docs);
    std::vector<CountMap> partial(static_cast<std::size_t>(shards));
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(docs.size());
#pragma omp parallel
    {
        auto& local = partial[static_cast<std::size_t>(current_thread())];
        std::unordered_map<std::string_view, std::size_t> scratch;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            accumulate_doc(local, docs[static_cast<std::size_t>(i)], scratch);
    }
    CountMap acc = std::move(partial.front());
    for (std::size_t s = 1; s < partial.size(); ++s) {
        for (auto& [term, counts] : partial[s]) {
            auto& entry = acc[term];
            entry.first += counts.first;
            entry.second += counts.second;
        }
    }
    return to_sorted_stats(std::move(acc));
}

DominantWordSet select_dominant(const std::vector<TermStats>& stats, std::size_t cap,
                                std::size_t min_doc_freq) {
    if (cap < 1) throw Error("dominant word cap must be at least 1");
    if (min_doc_freq < 1) throw Error("min_doc_freq must be at least 1");
    std::vector<TermStats> kept;
    for (const auto& s : stats)
        if (s.doc_freq >= min_doc_freq) kept.push_back(s);
    sort_dominant(kept);
    if (kept.size() > cap) kept.resize(cap);
    DominantWordSet out;
    out.cap = cap;
    out.words.reserve(kept.size());
    for (auto& s : kept) out.words.push_back(std::move(s.term));
    return out;
}

std::string wordcloud_csv(const std::vector<TermStats>& stats, std::size_t top_k) {
    if (top_k < 1) throw Error("wordcloud top_k must be at least 1");
    std::vector<TermStats> rows = stats;
    sort_dominant(rows);
    if (rows.size() > top_k) rows.resize(top_k);
    std::string out = kTermsSchema;
    out += "\nterm,total_freq,doc_freq\n";
    for (const auto& row : rows) {
        out += csv_field(row.term);
        out += ',';
        out += std::to_string(row.total_freq);
        out += ',';
        out += std::to_string(row.doc_freq);
        out += '\n';
    }
    return out;
}

void wordcloud_export(const std::vector<TermStats>& stats, std::size_t top_k,
                      const std::filesystem::path& path) {
    write_file(path, wordcloud_csv(stats, top_k));
}

std::vector<TermStats> read_terms_csv(const std::filesystem::path& path) {
    std::string content = read_file(path);
    std::size_t eol = content.find('\n');
    if (eol == std::string::npos || content.substr(0, eol) != kTermsSchema)
        throw Error(path.string() + ": schema-version mismatch, expected '" +
                    std::string(kTermsSchema) + "'");
    auto records = parse_csv(std::string_view(content).substr(eol + 1));
    if (records.empty() ||
        records.front().fields != std::vector<std::string>{"term", "total_freq", "doc_freq"})
        throw Error(path.string() + ": expected header 'term,total_freq,doc_freq'");
    std::vector<TermStats> stats;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
        if (rec.fields.size() != 3)
            throw Error(path.string() + ": line " + std::to_string(rec.line + 1) +
                        ": expected 3 fields");
        try {
            stats.push_back({rec.fields[0], std::stoull(rec.fields[2]), std::stoull(rec.fields[1])});
        } catch (const std::exception&) {
            throw Error(path.string() + ": line " + std::to_string(rec.line + 1) +
                        ": invalid count");
        }
    }
    return stats;
}

}  // namespace nettext
