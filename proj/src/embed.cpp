#include "geolex/embed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "geolex/text.hpp"

namespace geolex::embed {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// The literal uppercase marker Twitter prepends to retweets; a lowercase
// "rt" mid-sentence is ordinary text and stays.
std::string strip_leading_rt(const std::string& raw) {
    std::size_t i = 0;
    while (i < raw.size() && is_space(raw[i])) ++i;
    if (i + 1 < raw.size() && raw[i] == 'R' && raw[i + 1] == 'T') {
        const std::size_t j = i + 2;
        if (j == raw.size() || is_space(raw[j])) return raw.substr(j);
    }
    return raw;
}

bool url_scheme_at(const std::string& s, std::size_t i) {
    auto lower_is = [&](std::size_t k, char c) {
        return k < s.size() && (static_cast<char>(s[k] | 0x20)) == c;
    };
    if (!(lower_is(i, 'h') && lower_is(i + 1, 't') && lower_is(i + 2, 't') && lower_is(i + 3, 'p')))
        return false;
    std::size_t j = i + 4;
    if (lower_is(j, 's')) ++j;
    return j + 2 < s.size() && s[j] == ':' && s[j + 1] == '/' && s[j + 2] == '/';
}

std::string strip_urls(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (url_scheme_at(s, i)) {
            while (i < s.size() && !is_space(s[i])) ++i;
            continue;
        }
        out += s[i++];
    }
    return out;
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double t = std::exp(x);
    return t / (1.0 + t);
}

// ln sigma(x), stable on both tails.
double log_sigmoid(double x) {
    return x < 0.0 ? x - std::log1p(std::exp(x)) : -std::log1p(std::exp(-x));
}

}  // namespace

LemmaDict load_lemma_dict(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    LemmaDict dict;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
            line.find('\t', tab + 1) != std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected surface<TAB>lemma");
        const std::string surface = text::lower_copy(line.substr(0, tab));
        const std::string lemma = text::lower_copy(line.substr(tab + 1));
        auto [it, inserted] = dict.emplace(surface, lemma);
        if (!inserted && it->second != lemma)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": conflicting lemma for '" + surface + "'");
    }
    return dict;
}

std::vector<std::string> preprocess_text(const std::string& raw, const LemmaDict* lemmas) {
    auto tokens = text::word_tokens(strip_urls(strip_leading_rt(raw)));
    if (lemmas) {
        for (auto& tok : tokens) {
            auto it = lemmas->find(tok);
            if (it != lemmas->end()) tok = it->second;
        }
    }
    return tokens;
}

void TrainConfig::validate() const {
    if (dim <= 0) throw std::invalid_argument("dim must be positive");
    if (window <= 0) throw std::invalid_argument("window must be positive");
    if (min_count == 0) throw std::invalid_argument("min_count must be positive");
    if (negatives <= 0) throw std::invalid_argument("negatives must be positive");
    if (epochs <= 0) throw std::invalid_argument("epochs must be positive");
    if (!(initial_lr > 0.0)) throw std::invalid_argument("initial_lr must be positive");
    if (subsample_t < 0.0) throw std::invalid_argument("subsample_t must be non-negative");
    if (threads <= 0) throw std::invalid_argument("threads must be positive");
}

std::vector<VocabEntry> build_vocab(const std::vector<std::vector<std::string>>& sequences,
                                    std::uint64_t min_count) {
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& seq : sequences)
        for (const auto& tok : seq) ++counts[tok];

    std::vector<VocabEntry> vocab;
    for (auto& [tok, count] : counts)
        if (count >= min_count) vocab.push_back({tok, count});
    if (vocab.empty()) throw std::invalid_argument("no token reaches min_count");

    std::sort(vocab.begin(), vocab.end(), [](const VocabEntry& a, const VocabEntry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.token < b.token;
    });
    return vocab;
}

void EmbeddingModel::rebuild_index() {
    index.clear();
    index.reserve(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) index.emplace(vocab[i].token, i);
}

double cbow_step(EmbeddingModel& model, const std::vector<std::size_t>& context_indices,
                 std::size_t target_index, const std::vector<std::size_t>& negative_indices,
                 double lr) {
    if (context_indices.empty()) throw std::invalid_argument("cbow_step: empty context");
    const int dim = model.dim;

    std::vector<double> h(static_cast<std::size_t>(dim), 0.0);
    for (const std::size_t c : context_indices) {
        const double* row = model.input_row(c);
        for (int d = 0; d < dim; ++d) h[d] += row[d];
    }
    const double inv_ctx = 1.0 / static_cast<double>(context_indices.size());
    for (int d = 0; d < dim; ++d) h[d] *= inv_ctx;

    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    double loss = 0.0;
    const auto update_output = [&](std::size_t out_index, double label) {
        double* w = model.output_row(out_index);
        double dot = 0.0;
        for (int d = 0; d < dim; ++d) dot += h[d] * w[d];
        loss -= label > 0.5 ? log_sigmoid(dot) : log_sigmoid(-dot);
        const double g = sigmoid(dot) - label;
        for (int d = 0; d < dim; ++d) e[d] += g * w[d];
        for (int d = 0; d < dim; ++d) w[d] -= lr * g * h[d];
    };
    update_output(target_index, 1.0);
    for (const std::size_t neg : negative_indices) update_output(neg, 0.0);

    // d loss / d context_row = e / |context|, with e taken at pre-update
    // output values; this is what makes the step finite-difference exact.
    const double scale = lr * inv_ctx;
    for (const std::size_t c : context_indices) {
        double* row = model.input_row(c);
        for (int d = 0; d < dim; ++d) row[d] -= scale * e[d];
    }
    return loss;
}

UnigramSampler::UnigramSampler(const std::vector<VocabEntry>& vocab, double power) {
    if (vocab.empty()) throw std::invalid_argument("UnigramSampler: empty vocabulary");
    const std::size_t n = vocab.size();
    prob_.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        prob_[i] = std::pow(static_cast<double>(vocab[i].count), power);
        total += prob_[i];
    }
    if (!(total > 0.0)) throw std::invalid_argument("UnigramSampler: all counts are zero");
    for (auto& p : prob_) p /= total;

    // Walker/Vose alias construction.
    accept_.assign(n, 1.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = prob_[i] * static_cast<double>(n);
    std::vector<std::size_t> small, large;
    for (std::size_t i = 0; i < n; ++i) (scaled[i] < 1.0 ? small : large).push_back(i);
    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        small.pop_back();
        const std::size_t l = large.back();
        large.pop_back();
        accept_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] += scaled[s] - 1.0;
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    // Leftovers are exactly 1 up to rounding; both loops settle them at 1.
}

std::size_t UnigramSampler::sample(rng::Rng& rng) const {
    const std::size_t i = static_cast<std::size_t>(rng.next_below(accept_.size()));
    return rng.next_double() < accept_[i] ? i : alias_[i];
}

TrainResult train_cbow(const std::vector<std::vector<std::string>>& sequences,
                       const TrainConfig& config) {
    config.validate();
    if (sequences.empty()) throw std::invalid_argument("train_cbow: empty corpus");

    TrainResult result;
    EmbeddingModel& model = result.model;
    model.vocab = build_vocab(sequences, config.min_count);
    model.dim = config.dim;
    model.config = config;
    model.rebuild_index();

    const std::size_t vocab_size = model.vocab.size();
    const std::size_t dim = static_cast<std::size_t>(config.dim);
    model.input_vectors.resize(vocab_size * dim);
    model.output_vectors.assign(vocab_size * dim, 0.0);
    {
        rng::Rng init_rng(config.seed);
        const double span = 1.0 / static_cast<double>(config.dim);
        for (auto& v : model.input_vectors) v = (init_rng.next_double() - 0.5) * span;
    }

    // Sequences mapped to vocabulary ids once; OOV tokens vanish here.
    std::vector<std::vector<std::size_t>> id_seqs;
    id_seqs.reserve(sequences.size());
    std::uint64_t train_words = 0;
    for (const auto& seq : sequences) {
        std::vector<std::size_t> ids;
        ids.reserve(seq.size());
        for (const auto& tok : seq)
            if (auto id = model.find(tok)) ids.push_back(*id);
        train_words += ids.size();
        id_seqs.push_back(std::move(ids));
    }

    std::vector<double> keep_prob(vocab_size, 1.0);
    if (config.subsample_t > 0.0) {
        for (std::size_t i = 0; i < vocab_size; ++i) {
            const double freq =
                static_cast<double>(model.vocab[i].count) / static_cast<double>(train_words);
            if (freq > config.subsample_t) keep_prob[i] = std::sqrt(config.subsample_t / freq);
        }
    }

    const UnigramSampler sampler(model.vocab);
    const std::uint64_t total_words =
        static_cast<std::uint64_t>(config.epochs) * train_words;
    const double lr_floor = config.initial_lr * 1e-4;
    std::atomic<std::uint64_t> processed{0};

    const int threads = config.threads;
    result.epoch_mean_loss.assign(static_cast<std::size_t>(config.epochs), 0.0);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::vector<double> worker_loss(static_cast<std::size_t>(threads), 0.0);
        std::vector<std::uint64_t> worker_steps(static_cast<std::size_t>(threads), 0);

        // Workers write to disjoint context/output rows only by luck; the
        // races on shared vectors are accepted for threads > 1 and absent
        // for threads = 1, which is the reproducible configuration.
        const auto worker = [&](int w) {
            rng::Rng rng(rng::derive_seed(rng::derive_seed(config.seed, static_cast<std::uint64_t>(epoch) + 1),
                                          static_cast<std::uint64_t>(w)));
            const std::size_t begin = id_seqs.size() * static_cast<std::size_t>(w) / static_cast<std::size_t>(threads);
            const std::size_t end =
                id_seqs.size() * (static_cast<std::size_t>(w) + 1) / static_cast<std::size_t>(threads);
            double loss_sum = 0.0;
            std::uint64_t steps = 0;
            std::vector<std::size_t> kept, context, negatives;
            for (std::size_t si = begin; si < end; ++si) {
                const auto& ids = id_seqs[si];
                if (ids.empty()) continue;
                const std::uint64_t before = processed.fetch_add(ids.size(), std::memory_order_relaxed);
                double lr = config.initial_lr *
                            (1.0 - static_cast<double>(before) / static_cast<double>(total_words + 1));
                if (lr < lr_floor) lr = lr_floor;

                kept.clear();
                for (const std::size_t id : ids)
                    if (keep_prob[id] >= 1.0 || rng.next_double() < keep_prob[id]) kept.push_back(id);

                for (std::size_t i = 0; i < kept.size(); ++i) {
                    const auto reach =
                        static_cast<std::size_t>(1 + rng.next_below(static_cast<std::uint64_t>(config.window)));
                    context.clear();
                    const std::size_t lo = i > reach ? i - reach : 0;
                    const std::size_t hi = std::min(kept.size() - 1, i + reach);
                    for (std::size_t j = lo; j <= hi; ++j)
                        if (j != i) context.push_back(kept[j]);
                    if (context.empty()) continue;

                    negatives.clear();
                    // Redraws avoid the target; the attempt cap keeps a
                    // degenerate one-token-dominated vocabulary from spinning.
                    int attempts = 16 * config.negatives;
                    while (negatives.size() < static_cast<std::size_t>(config.negatives) && attempts-- > 0) {
                        const std::size_t n = sampler.sample(rng);
                        if (n == kept[i]) continue;
                        negatives.push_back(n);
                    }
                    if (negatives.empty()) continue;

                    loss_sum += cbow_step(model, context, kept[i], negatives, lr);
                    ++steps;
                }
            }
            worker_loss[static_cast<std::size_t>(w)] = loss_sum;
            worker_steps[static_cast<std::size_t>(w)] = steps;
        };

        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(threads));
            for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
            for (auto& t : pool) t.join();
        }

        double epoch_loss = 0.0;
        std::uint64_t epoch_steps = 0;
        for (int w = 0; w < threads; ++w) {
            epoch_loss += worker_loss[static_cast<std::size_t>(w)];
            epoch_steps += worker_steps[static_cast<std::size_t>(w)];
        }
        result.epoch_mean_loss[static_cast<std::size_t>(epoch)] =
            epoch_steps > 0 ? epoch_loss / static_cast<double>(epoch_steps) : 0.0;
    }
    return result;
}

void save_model(const EmbeddingModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << model.vocab.size() << ' ' << model.dim << "\n";
    char buf[32];
    for (std::size_t i = 0; i < model.vocab.size(); ++i) {
        out << model.vocab[i].token;
        const double* row = model.input_row(i);
        for (int d = 0; d < model.dim; ++d) {
            std::snprintf(buf, sizeof(buf), " %.6f", row[d]);
            out << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

EmbeddingModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty model file");
    char* cursor = nullptr;
    const long long vocab_size = std::strtoll(line.c_str(), &cursor, 10);
    const long long dim = std::strtoll(cursor, &cursor, 10);
    while (*cursor == ' ') ++cursor;
    if (vocab_size <= 0 || dim <= 0 || *cursor != '\0')
        throw std::runtime_error(path + ":1: expected '<vocab_size> <dim>' header");

    EmbeddingModel model;
    model.dim = static_cast<int>(dim);
    model.config.dim = model.dim;
    model.config.min_count = 1;  // counts are not stored; nothing to enforce
    model.vocab.reserve(static_cast<std::size_t>(vocab_size));
    model.input_vectors.reserve(static_cast<std::size_t>(vocab_size * dim));

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fail = [&](const std::string& what) -> std::runtime_error {
            return std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
        };
        const std::size_t space = line.find(' ');
        if (space == std::string::npos || space == 0) throw fail("expected 'token v1 .. vd'");
        const std::string token = line.substr(0, space);
        const char* p = line.c_str() + space;
        for (long long d = 0; d < dim; ++d) {
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p) throw fail("expected " + std::to_string(dim) + " vector components");
            model.input_vectors.push_back(v);
            p = end;
        }
        while (*p == ' ') ++p;
        if (*p != '\0') throw fail("trailing data after " + std::to_string(dim) + " components");
        model.vocab.push_back({token, 0});
    }
    if (model.vocab.size() != static_cast<std::size_t>(vocab_size))
        throw std::runtime_error(path + ": header promises " + std::to_string(vocab_size) +
                                 " rows, file has " + std::to_string(model.vocab.size()));
    model.rebuild_index();
    if (model.index.size() != model.vocab.size())
        throw std::runtime_error(path + ": duplicate token in vocabulary");
    return model;
}

}  // namespace geolex::embed
