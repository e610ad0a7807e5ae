#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nettext {

inline constexpr std::string_view kPipelineVersion = "0.1.0";

// Failure while loading, validating or writing pipeline data. The CLI
// prefixes the message with the stage that raised it.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Shortest decimal form that parses back to the exact same double.
std::string format_double(double value);
// Fixed-point with the given number of decimals, for human-facing tables.
std::string format_fixed(double value, int decimals);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s);

std::uint64_t fnv1a64(std::string_view data);

// OpenMP thread budget for the parallel kernels; 1 when built without OpenMP.
int max_threads();
// Index of the calling thread inside a parallel region, 0 otherwise.
int current_thread();

// Minimal RFC-4180-style CSV. Quoted fields may contain commas, quotes
// ("" escapes a quote) and newlines.
struct CsvRecord {
    std::size_t line = 0;  // 1-based line the record starts on
    std::vector<std::string> fields;
};

std::vector<CsvRecord> parse_csv(std::string_view content);
// Returns the field quoted iff it contains a comma, quote or newline.
std::string csv_field(std::string_view value);

}  // namespace nettext
