#include "nettext/util.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nettext {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error("read failure: " + path.string());
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open file for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw Error("write failure: " + path.string());
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw Error("cannot format double");
    return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    int n = std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    if (n < 0 || n >= static_cast<int>(sizeof(buf))) throw Error("cannot format double");
    return std::string(buf, static_cast<std::size_t>(n));
}

std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int current_thread() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

std::vector<CsvRecord> parse_csv(std::string_view content) {
    std::vector<CsvRecord> records;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = content.size();
    while (i < n) {
        CsvRecord rec;
        rec.line = line;
        bool done = false;
        while (!done) {
            std::string field;
            if (i < n && content[i] == '"') {
                ++i;  // opening quote
                for (;;) {
                    if (i >= n) throw Error("unterminated quoted field starting on line " +
                                            std::to_string(rec.line));
                    char c = content[i];
                    if (c == '"') {
                        if (i + 1 < n && content[i + 1] == '"') {
                            field.push_back('"');
                            i += 2;
                        } else {
                            ++i;  // closing quote
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field.push_back(c);
                        ++i;
                    }
                }
            } else {
                while (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r')
                    field.push_back(content[i++]);
            }
            rec.fields.push_back(std::move(field));
            if (i >= n) {
                done = true;
            } else if (content[i] == ',') {
                ++i;
            } else {
                if (content[i] == '\r') ++i;
                if (i < n && content[i] == '\n') {
                    ++i;
                    ++line;
                }
                done = true;
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string csv_field(std::string_view value) {
    bool quote = value.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!quote) return std::string(value);
    std::string out;
    out.reserve(value.size() + 2);
    out.push_back('"');
    for (char c : value) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace nettext
