// Compares the OpenMP kernels against their serial reference on a synthetic
// corpus. Not a test; run manually, e.g.
//   ./build/bench/bench_kernels --docs 20000 --repeat 3

#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nettext/association.hpp"
#include "nettext/frequency.hpp"
#include "nettext/generator.hpp"
#include "nettext/preprocess.hpp"
#include "nettext/util.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename Fn>
double best_of(int repeat, Fn&& fn) {
    double best = 0.0;
    for (int r = 0; r < repeat; ++r) {
        const auto start = Clock::now();
        fn();
        const double elapsed = ms_since(start);
        if (r == 0 || elapsed < best) best = elapsed;
    }
    return best;
}

void report_row(const std::string& kernel, double serial_ms, double parallel_ms) {
    std::cout << kernel << ": serial " << nettext::format_fixed(serial_ms, 1) << " ms, parallel "
              << nettext::format_fixed(parallel_ms, 1) << " ms, speedup "
              << nettext::format_fixed(serial_ms / parallel_ms, 2) << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel benchmark: serial reference vs OpenMP"};
    std::size_t docs = 20000;
    int repeat = 3;
    app.add_option("--docs", docs, "synthetic corpus size");
    app.add_option("--repeat", repeat, "repetitions, best time wins");
    CLI11_PARSE(app, argc, argv);

    using namespace nettext;
    std::cout << "threads: " << max_threads() << ", docs: " << docs << "\n";

    CorpusGeneratorSpec spec = shipped_2000_spec();
    spec.count = docs;
    const Corpus corpus = generate_corpus(spec);
    PreprocessConfig pc;

    const double tok_serial = best_of(repeat, [&] { tokenize_corpus_serial(corpus, pc); });
    const double tok_parallel = best_of(repeat, [&] { tokenize_corpus(corpus, pc); });
    report_row("tokenize", tok_serial, tok_parallel);

    const auto processed = tokenize_corpus(corpus, pc);
    if (tokenize_corpus_serial(corpus, pc) != processed) {
        std::cerr << "tokenize: serial and parallel output differ\n";
        return 1;
    }

    const double stats_serial = best_of(repeat, [&] { term_stats_serial(processed); });
    const double stats_parallel = best_of(repeat, [&] { term_stats(processed); });
    report_row("term_stats", stats_serial, stats_parallel);

    const auto stats = term_stats(processed);
    if (term_stats_serial(processed) != stats) {
        std::cerr << "term_stats: serial and parallel output differ\n";
        return 1;
    }

    const auto dominant = select_dominant(stats, 200, 3);
    const double pairs_serial = best_of(repeat, [&] { mine_pairs_serial(processed, dominant, 2); });
    const double pairs_parallel = best_of(repeat, [&] { mine_pairs(processed, dominant, 2); });
    report_row("mine_pairs", pairs_serial, pairs_parallel);

    if (mine_pairs_serial(processed, dominant, 2) != mine_pairs(processed, dominant, 2)) {
        std::cerr << "mine_pairs: serial and parallel output differ\n";
        return 1;
    }
    return 0;
}
