#include "nettext/generator.hpp"

#include <random>

#include "nettext/util.hpp"

namespace nettext {

namespace {

// All draws go through modulo / division so the stream is identical on
// every platform (the std::uniform_* distributions are not).
struct Rng {
    std::mt19937 gen;

    explicit Rng(std::uint32_t seed) : gen(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen() % n); }
    double unit() { return static_cast<double>(gen()) / 4294967296.0; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }
};

const std::vector<std::string> kFiller = {"yang", "banget", "dong", "deh", "sih",
                                          "kok",  "nih",    "itu",  "ini"};
const std::vector<std::string> kMentions = {"@lazada", "@cs_toko", "@tokosebelah", "@admin_shop",
                                            "@seller88"};
const std::vector<std::string> kEmoji = {"\xF0\x9F\x98\xA1", "\xF0\x9F\x98\xAD",
                                         "\xF0\x9F\x91\x8E", "\xF0\x9F\x98\xA4"};
const std::vector<std::string> kPunct = {"!!!", "!!", "...", "??", "?!"};
const std::vector<std::string> kOfftopic = {
    "promo diskon 90 persen buruan serbu",
    "promo spesial gede banget hari ini",
    "diskon promo murah meriah cek toko kami",
};

std::string random_url(Rng& rng) {
    std::string url = "http://t.co/";
    for (int i = 0; i < 6; ++i) url += static_cast<char>('a' + rng.below(26));
    return url;
}

std::string jitter_case(const std::string& word, Rng& rng) {
    const double roll = rng.unit();
    if (roll < 0.08) {
        std::string out = word;
        for (auto& c : out)
            if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        return out;
    }
    if (roll < 0.2 && !word.empty() && word[0] >= 'a' && word[0] <= 'z') {
        std::string out = word;
        out[0] = static_cast<char>(out[0] - 'a' + 'A');
        return out;
    }
    return word;
}

void append_phrase(std::string& text, const std::string& phrase, Rng& rng) {
    std::string word;
    for (char c : phrase) {
        if (c == ' ') {
            if (!text.empty()) text += ' ';
            text += jitter_case(word, rng);
            word.clear();
        } else {
            word += c;
        }
    }
    if (!word.empty()) {
        if (!text.empty()) text += ' ';
        text += jitter_case(word, rng);
    }
}

std::size_t pick_topic(const std::vector<TopicTemplate>& topics, Rng& rng) {
    double total = 0.0;
    for (const auto& t : topics) total += t.weight;
    double roll = rng.unit() * total;
    for (std::size_t i = 0; i < topics.size(); ++i) {
        roll -= topics[i].weight;
        if (roll < 0.0) return i;
    }
    return topics.size() - 1;
}

std::string make_timestamp(Rng& rng) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "2017-%02zu-%02zuT%02zu:%02zu:00Z", rng.below(12) + 1,
                  rng.below(28) + 1, rng.below(24), rng.below(60));
    return buf;
}

}  // namespace

CorpusGeneratorSpec shipped_2000_spec() {
    CorpusGeneratorSpec spec;
    spec.seed = 1;
    spec.count = 2000;
    spec.topics = {
        {"delivery",
         1.3,
         {"pesanan sampai", "pesanan tidak sampai", "barang tidak kirim", "pengiriman lama",
          "estimasi tidak sesuai", "barang sampai", "kurir kirim paket", "pesanan lama sampai"}},
        {"refund",
         1.15,
         {"dana belum kembali", "sudah transfer dana", "saldo belum cair", "dana kembali",
          "pengembalian dana", "sudah bayar transfer"}},
        {"transaction",
         1.0,
         {"transaksi batal", "status transaksi gagal", "tidak bisa proses transaksi",
          "transaksi batal sepihak", "verifikasi gagal", "proses verifikasi lambat"}},
        {"seller",
         0.9,
         {"penjual penipu", "toko bohong", "lapak tipu", "penjual tidak jujur", "toko penipu"}},
        {"service",
         0.95,
         {"admin tidak respon", "komplain tidak respon", "pelayanan buruk",
          "keluhan tidak respon", "pelayanan admin buruk"}},
        {"resi", 0.7, {"resi invalid", "nomor resi salah", "resi belum aktif", "cek resi invalid"}},
    };
    return spec;
}

CorpusGeneratorSpec two_topic_spec() {
    CorpusGeneratorSpec spec;
    spec.seed = 7;
    spec.count = 80;
    spec.noise_rate = 0.1;
    spec.mix_rate = 0.0;
    spec.offtopic_rate = 0.0;
    spec.duplicate_rate = 0.0;
    spec.empty_rate = 0.0;
    spec.topics = {
        {"delivery",
         1.0,
         {"pesanan sampai", "pesanan kirim", "paket sampai", "paket lama", "pesanan lama"}},
        {"refund",
         1.0,
         {"dana transfer", "dana saldo", "bayar transfer", "bukti bayar", "dana bukti"}},
    };
    return spec;
}

Corpus generate_corpus(const CorpusGeneratorSpec& spec) {
    if (spec.topics.empty() && spec.count > 0)
        throw Error("corpus generator needs at least one topic");
    Rng rng(spec.seed);
    Corpus corpus;
    corpus.name = "synthetic";
    corpus.documents.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        Document doc;
        char id[16];
        std::snprintf(id, sizeof(id), "doc-%05zu", i + 1);
        doc.id = id;

        const double kind = rng.unit();
        if (kind < spec.duplicate_rate && !corpus.documents.empty()) {
            doc.text = corpus.documents[rng.below(corpus.documents.size())].text;
        } else if (kind < spec.duplicate_rate + spec.offtopic_rate) {
            doc.text = rng.pick(kOfftopic);
        } else if (kind < spec.duplicate_rate + spec.offtopic_rate + spec.empty_rate) {
            doc.text = random_url(rng) + " " + rng.pick(kEmoji);
        } else {
            const std::size_t topic = pick_topic(spec.topics, rng);
            std::string text;
            append_phrase(text, rng.pick(spec.topics[topic].phrases), rng);
            if (rng.unit() < 0.5) {  // second phrase, sometimes from another topic
                std::size_t other = topic;
                if (spec.topics.size() > 1 && rng.unit() < spec.mix_rate) {
                    other = rng.below(spec.topics.size() - 1);
                    if (other >= topic) ++other;
                }
                if (rng.unit() < 0.5) text += " " + rng.pick(kFiller);
                append_phrase(text, rng.pick(spec.topics[other].phrases), rng);
            }
            if (rng.unit() < 0.4) text += rng.pick(kPunct);
            if (rng.unit() < spec.noise_rate) {
                switch (rng.below(4)) {
                    case 0: text += " " + random_url(rng); break;
                    case 1: text += " " + rng.pick(kMentions); break;
                    case 2: {
                        // hashtag built from one of the topic's own words
                        const std::string& phrase = rng.pick(spec.topics[topic].phrases);
                        text += " #" + phrase.substr(0, phrase.find(' '));
                        break;
                    }
                    default: text += " " + rng.pick(kEmoji);
                }
            }
            doc.text = std::move(text);
        }

        const double src = rng.unit();
        doc.source = src < 0.6 ? Source::twitter_like
                               : (src < 0.85 ? Source::facebook_like : Source::generic);
        if (rng.unit() < 0.9) doc.timestamp = make_timestamp(rng);
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

void generate_corpus_file(const CorpusGeneratorSpec& spec, const std::filesystem::path& path) {
    save_corpus(generate_corpus(spec), path, CorpusFormat::jsonl);
}

std::map<std::string, int> planted_topics(const CorpusGeneratorSpec& spec,
                                          const PreprocessConfig& config) {
    std::map<std::string, int> planted;
    for (std::size_t t = 0; t < spec.topics.size(); ++t) {
        for (const auto& phrase : spec.topics[t].phrases) {
            for (const auto& token : tokenize(normalize(phrase), config)) {
                auto [it, inserted] = planted.emplace(token, static_cast<int>(t));
                if (!inserted && it->second != static_cast<int>(t))
                    throw Error("topics share token '" + token + "': " +
                                spec.topics[static_cast<std::size_t>(it->second)].name + " and " +
                                spec.topics[t].name);
            }
        }
    }
    return planted;
}

}  // namespace nettext
