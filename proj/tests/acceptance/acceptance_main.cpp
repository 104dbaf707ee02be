// Acceptance gate for the pipeline: ten scripted criteria, one PASS/FAIL
// line each, exit code = number of failures. Every tolerance and runtime
// budget is pinned here on purpose; loosening them is a behavior change.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <unistd.h>

#include "geolex/corpus.hpp"
#include "geolex/embed.hpp"
#include "geolex/geolabel.hpp"
#include "geolex/lexspec.hpp"
#include "geolex/nbclassifier.hpp"
#include "geolex/phrasing.hpp"
#include "geolex/query.hpp"
#include "geolex/rng.hpp"
#include "geolex/synth.hpp"

#ifndef GEOLEX_CLI_PATH
#error "GEOLEX_CLI_PATH must point at the pipeline binary"
#endif
#ifndef GEOLEX_SYNTH_PATH
#error "GEOLEX_SYNTH_PATH must point at the corpus generator binary"
#endif

namespace {

using namespace geolex;
namespace fs = std::filesystem;

// A criterion body returns "" on success, a one-line reason otherwise.
using CriterionBody = std::function<std::string()>;

int run_criterion(int number, const std::string& name, double budget_seconds,
                  const CriterionBody& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
        detail = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && elapsed > budget_seconds) {
        std::ostringstream over;
        over << "exceeded the " << budget_seconds << " s budget";
        detail = over.str();
    }
    char timing[32];
    std::snprintf(timing, sizeof(timing), "%.2fs", elapsed);
    if (detail.empty()) {
        std::cout << "PASS criterion " << number << ": " << name << " (" << timing << ")\n";
        return 0;
    }
    std::cout << "FAIL criterion " << number << ": " << name << ": " << detail << " (" << timing
              << ")\n";
    return 1;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

std::string metrics_identity() {
    rng::Rng rng(17);
    for (const std::size_t n : {4u, 100u, 2000u}) {
        std::vector<Region> gold;
        for (std::size_t i = 0; i < n; ++i)
            gold.push_back(i < n / 2 ? Region::European : Region::NonEuropean);
        rng::shuffle(gold, rng);
        const std::vector<Region> preds(n, Region::European);
        const auto m = nb::evaluate(preds, gold);

        if (std::abs(m.macro_precision - 0.25) > 0.005)
            return "macro precision " + fmt(m.macro_precision) + " != 0.25 on n=" + fmt(double(n));
        if (std::abs(m.macro_recall - 0.50) > 0.005)
            return "macro recall " + fmt(m.macro_recall) + " != 0.50";
        if (std::abs(m.accuracy - 0.50) > 0.005) return "accuracy " + fmt(m.accuracy) + " != 0.50";
        if (std::abs(m.macro_f1 - 0.33) > 0.005) return "macro F1 " + fmt(m.macro_f1) + " != 0.33";
        // the first three are exact rational identities, not approximations
        if (m.macro_precision != 0.25 || m.macro_recall != 0.5 || m.accuracy != 0.5)
            return "baseline metrics are not exact on a balanced set";
        if (std::abs(m.macro_f1 - 1.0 / 3.0) > 1e-12)
            return "macro F1 " + fmt(m.macro_f1) + " != 1/3";
    }
    return "";
}

// ---------------------------------------------------------------- criterion 2

std::string specificity_oracle() {
    constexpr std::uint64_t kMaxT = 60;
    // Pascal triangle in u64. C(60,30) ~ 1.18e17 fits, and by Vandermonde
    // every partial tail numerator is bounded by C(T,t), so no sum overflows.
    std::vector<std::array<std::uint64_t, kMaxT + 1>> choose(kMaxT + 1);
    for (std::uint64_t n = 0; n <= kMaxT; ++n) {
        choose[n].fill(0);
        choose[n][0] = choose[n][n] = 1;
        for (std::uint64_t k = 1; k < n; ++k)
            choose[n][k] = choose[n - 1][k - 1] + choose[n - 1][k];
    }

    std::vector<std::uint64_t> terms;
    for (std::uint64_t T = 1; T <= kMaxT; ++T) {
        for (std::uint64_t F = 0; F <= T; ++F) {
            for (std::uint64_t t = 1; t <= T; ++t) {
                const std::uint64_t hi = std::min(F, t);
                terms.assign(hi + 1, 0);
                for (std::uint64_t k = 0; k <= hi; ++k)
                    terms[k] = choose[F][k] * choose[T - F][t - k];
                const double denom = static_cast<double>(choose[T][t]);

                std::uint64_t suffix = 0;
                std::vector<double> oracles(hi + 2, 0.0);
                for (std::uint64_t k = hi + 1; k-- > 0;) {
                    suffix += terms[k];
                    oracles[k] = static_cast<double>(suffix) / denom;
                }

                double prev_score = -1.0;
                for (std::uint64_t f = 0; f <= hi; ++f) {
                    const lex::SpecificityQuery q{T, F, t, f};
                    const double got = lex::hypergeom_tail(q);
                    if (std::abs(got - oracles[f]) > 1e-9) {
                        return "tail off at T=" + fmt(double(T)) + " F=" + fmt(double(F)) +
                               " t=" + fmt(double(t)) + " f=" + fmt(double(f)) + ": got " +
                               fmt(got) + ", oracle " + fmt(oracles[f]);
                    }
                    const double score = lex::specificity_score(q);
                    if (score < prev_score - 1e-12) {
                        return "specificity not monotone in f at T=" + fmt(double(T)) +
                               " F=" + fmt(double(F)) + " t=" + fmt(double(t));
                    }
                    prev_score = score;
                }
            }
        }
    }
    return "";
}

// ---------------------------------------------------------------- criterion 3

std::string nb_correctness() {
    const auto example = [](std::vector<std::string> tokens, Region label) {
        nb::LabeledExample ex;
        ex.doc.tokens = std::move(tokens);
        ex.label = label;
        return ex;
    };
    const auto toy = nb::train_nb({example({"london"}, Region::European),
                                   example({"paris"}, Region::European),
                                   example({"usa"}, Region::NonEuropean),
                                   example({"york"}, Region::NonEuropean)});
    nb::FeatureDoc probe;
    probe.tokens = {"usa"};
    const auto pred = nb::predict(toy, probe);
    if (pred.label != Region::NonEuropean) return "toy model mislabels the [usa] document";
    if (std::abs(pred.posterior - 2.0 / 3.0) > 1e-9)
        return "toy posterior " + fmt(pred.posterior) + " != 2/3";

    const auto records = synth::make_separable_profiles(33, 2000);
    std::vector<nb::LabeledExample> examples;
    std::vector<Region> labels;
    for (const auto& rec : records) {
        const auto gold = geo::assign_region_label(rec);
        if (!gold) return "separable corpus record without a gold label";
        examples.push_back({nb::build_features(rec), *gold});
        labels.push_back(*gold);
    }
    geo::SplitSpec spec;
    spec.seed = 5;
    const auto idx = geo::stratified_split(labels, spec);

    std::vector<nb::LabeledExample> train_set;
    for (const std::size_t i : idx.train) train_set.push_back(examples[i]);
    const auto model = nb::train_nb(train_set);

    std::vector<Region> preds, gold;
    for (const std::size_t i : idx.test) {
        preds.push_back(nb::predict(model, examples[i].doc).label);
        gold.push_back(examples[i].label);
    }
    const double accuracy = nb::evaluate(preds, gold).accuracy;
    if (accuracy < 0.95) return "test accuracy " + fmt(accuracy) + " < 0.95";
    if (!(accuracy > 0.50)) return "test accuracy does not beat the 0.50 baseline";
    return "";
}

// ---------------------------------------------------------------- criterion 4

std::string split_properties() {
    const std::array<std::array<double, 3>, 3> ratio_presets{{
        {0.8, 0.1, 0.1},
        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
        {0.6, 0.2, 0.2},
    }};
    rng::Rng rng(1234);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_below(400));
        std::vector<Region> labels;
        labels.push_back(Region::European);
        labels.push_back(Region::NonEuropean);
        for (std::size_t i = 2; i < n; ++i)
            labels.push_back(rng.next_below(2) == 0 ? Region::European : Region::NonEuropean);

        geo::SplitSpec spec;
        spec.ratios = ratio_presets[static_cast<std::size_t>(round % 3)];
        spec.seed = rng.next_u64();
        const auto split = geo::stratified_split(labels, spec);
        const auto again = geo::stratified_split(labels, spec);
        if (split.train != again.train || split.validation != again.validation ||
            split.test != again.test)
            return "split is not deterministic for one seed (round " + fmt(double(round)) + ")";

        std::set<std::size_t> seen;
        for (const auto* part : {&split.train, &split.validation, &split.test}) {
            for (const std::size_t i : *part) {
                if (i >= n) return "split emitted an out-of-range index";
                if (!seen.insert(i).second) return "split parts are not disjoint";
            }
        }
        if (seen.size() != n) return "split parts are not exhaustive";

        std::size_t class_total[2] = {0, 0};
        for (const auto label : labels) ++class_total[label == Region::European ? 0 : 1];
        const std::array<const std::vector<std::size_t>*, 3> parts{
            &split.train, &split.validation, &split.test};
        for (std::size_t p = 0; p < 3; ++p) {
            std::size_t class_count[2] = {0, 0};
            for (const std::size_t i : *parts[p])
                ++class_count[labels[i] == Region::European ? 0 : 1];
            for (int c = 0; c < 2; ++c) {
                const double exact =
                    spec.ratios[p] * static_cast<double>(class_total[c]);
                if (std::abs(static_cast<double>(class_count[c]) - exact) > 1.0 + 1e-9)
                    return "per-class allocation off by more than one item (round " +
                           fmt(double(round)) + ")";
            }
        }
    }
    return "";
}

// ---------------------------------------------------------------- criterion 5

std::string gradient_check() {
    rng::Rng rng(90125);
    for (int round = 0; round < 100; ++round) {
        const std::size_t vocab_size = 3 + rng.next_below(8);
        const int dim = static_cast<int>(2 + rng.next_below(7));

        embed::EmbeddingModel model;
        for (std::size_t i = 0; i < vocab_size; ++i)
            model.vocab.push_back({"w" + std::to_string(i), 1});
        model.dim = dim;
        model.input_vectors.resize(vocab_size * static_cast<std::size_t>(dim));
        model.output_vectors.resize(vocab_size * static_cast<std::size_t>(dim));
        for (auto& v : model.input_vectors) v = rng.next_double() - 0.5;
        for (auto& v : model.output_vectors) v = rng.next_double() - 0.5;
        model.rebuild_index();

        const std::size_t target = rng.next_below(vocab_size);
        std::vector<std::size_t> context;
        for (std::size_t i = 0; i < vocab_size; ++i)
            if (i != target && rng.next_below(2) == 0) context.push_back(i);
        if (context.empty()) context.push_back((target + 1) % vocab_size);
        std::vector<std::size_t> negatives;
        for (std::size_t i = 0; i < vocab_size && negatives.size() < 3; ++i)
            if (i != target) negatives.push_back(i);

        auto updated = model;
        embed::cbow_step(updated, context, target, negatives, 1.0);

        const double eps = 1e-4;
        const std::size_t n_params = model.input_vectors.size() + model.output_vectors.size();
        for (std::size_t k = 0; k < n_params; ++k) {
            const auto param = [&](embed::EmbeddingModel& m) -> double& {
                return k < m.input_vectors.size()
                           ? m.input_vectors[k]
                           : m.output_vectors[k - m.input_vectors.size()];
            };
            const double analytic = param(model) - param(updated);
            auto plus = model;
            param(plus) += eps;
            auto minus = model;
            param(minus) -= eps;
            const double numeric = (embed::cbow_step(plus, context, target, negatives, 0.0) -
                                    embed::cbow_step(minus, context, target, negatives, 0.0)) /
                                   (2.0 * eps);
            const double scale = std::max({1.0, std::abs(analytic), std::abs(numeric)});
            if (std::abs(analytic - numeric) > 1e-4 * scale) {
                return "gradient mismatch on round " + fmt(double(round)) + ": analytic " +
                       fmt(analytic) + ", numeric " + fmt(numeric);
            }
        }
    }
    return "";
}

// ---------------------------------------------------------------- criterion 6

embed::TrainConfig sanity_config() {
    embed::TrainConfig config;
    config.dim = 32;
    config.window = 5;
    config.min_count = 5;
    config.negatives = 5;
    config.epochs = 10;
    config.initial_lr = 0.05;
    config.subsample_t = 0.0;  // uniform synthetic vocabularies defeat the 1e-4 default
    config.seed = 9;
    config.threads = 1;
    return config;
}

std::string embedding_sanity() {
    const auto corpus = synth::make_topic_corpus(5, 4200);  // ~50k tokens
    const auto run = embed::train_cbow(corpus.sequences, sanity_config());
    const auto& model = run.model;

    if (run.epoch_mean_loss.size() < 5) return "fewer than five epochs recorded";
    if (!(run.epoch_mean_loss[4] < run.epoch_mean_loss[0]))
        return "epoch-5 mean loss " + fmt(run.epoch_mean_loss[4]) +
               " not below epoch-1 loss " + fmt(run.epoch_mean_loss[0]);
    for (const double v : model.input_vectors)
        if (!std::isfinite(v)) return "non-finite component in the trained vectors";

    const auto rows_for = [&](const std::vector<std::string>& words,
                              std::vector<std::size_t>& rows) -> std::string {
        for (const auto& word : words) {
            const auto id = model.find(word);
            if (!id) return "token '" + word + "' missing from the vocabulary";
            rows.push_back(*id);
        }
        return "";
    };
    std::vector<std::size_t> rows_a, rows_b;
    if (auto err = rows_for(corpus.topic_a, rows_a); !err.empty()) return err;
    if (auto err = rows_for(corpus.topic_b, rows_b); !err.empty()) return err;

    double intra = 0.0, inter = 0.0;
    std::size_t intra_n = 0, inter_n = 0;
    const auto accumulate = [&](const std::vector<std::size_t>& xs,
                                const std::vector<std::size_t>& ys, bool same, double& sum,
                                std::size_t& n) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = same ? i + 1 : 0; j < ys.size(); ++j) {
                sum += query::cosine(model.input_row(xs[i]), model.input_row(ys[j]), model.dim);
                ++n;
            }
        }
    };
    accumulate(rows_a, rows_a, true, intra, intra_n);
    accumulate(rows_b, rows_b, true, intra, intra_n);
    accumulate(rows_a, rows_b, false, inter, inter_n);
    const double gap = intra / static_cast<double>(intra_n) -
                       inter / static_cast<double>(inter_n);
    if (gap < 0.2) return "intra-inter cosine gap " + fmt(gap) + " < 0.2";
    return "";
}

// ---------------------------------------------------------------- criterion 7

std::string analogy_recovery() {
    const auto corpus = synth::make_relation_corpus(7, 400);
    auto config = sanity_config();
    config.epochs = 25;  // four-token sentences need more passes to align
    const auto run = embed::train_cbow(corpus.sequences, config);

    std::size_t hits = 0, queries = 0;
    for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
        for (std::size_t j = 0; j < corpus.pairs.size(); ++j) {
            if (i == j) continue;
            const auto& [city_i, country_i] = corpus.pairs[i];
            const auto& [city_j, country_j] = corpus.pairs[j];
            // v(city_i) + v(country_j) - v(country_i) should land on city_j
            const auto list = query::analogy(run.model, {country_j, city_i, country_i}, 1);
            if (list.entries.empty()) return "analogy returned an empty ranking";
            ++queries;
            if (list.entries[0].token == city_j) ++hits;
        }
    }
    if (queries != 56) return "expected 56 analogy queries, ran " + fmt(double(queries));
    const double rate = static_cast<double>(hits) / static_cast<double>(queries);
    if (rate < 0.8)
        return "top-1 recovery " + fmt(double(hits)) + "/56 (" + fmt(rate) + ") < 0.8";
    return "";
}

// ---------------------------------------------------------------- criterion 8

std::string phrase_detection() {
    // count(a)=60, count(b)=80, count(ab)=50 in 10000 tokens:
    // (50-5)*10000/(60*80) = 93.75 exactly
    std::vector<std::vector<std::string>> fixture;
    for (int i = 0; i < 50; ++i) fixture.push_back({"a", "b"});
    for (int i = 0; i < 10; ++i) fixture.push_back({"a"});
    for (int i = 0; i < 30; ++i) fixture.push_back({"b"});
    for (int i = 0; i < 9860; ++i) fixture.push_back({"fill"});
    const auto fixture_model = phrase::learn_phrases(fixture);
    const auto it = fixture_model.scores.find(phrase::PhraseModel::key("a", "b"));
    if (it == fixture_model.scores.end()) return "fixture pair not stored";
    if (std::abs(it->second - 93.75) > 1e-12)
        return "fixture score " + fmt(it->second) + " != 93.75";

    // greedy application rule
    phrase::PhraseModel chain;
    chain.scores[phrase::PhraseModel::key("a", "b")] = 99.0;
    chain.scores[phrase::PhraseModel::key("b", "c")] = 99.0;
    const auto merged = phrase::apply_phrases({"a", "b", "c"}, chain);
    if (merged != std::vector<std::string>{"a_b", "c"})
        return "greedy merge of [a,b,c] did not yield [a_b,c]";

    // planted collocation on the synthetic tweet corpus
    const auto records = synth::make_tweet_corpus({});
    std::vector<std::vector<std::string>> sequences;
    for (const auto& rec : records)
        if (rec.lang == "en") sequences.push_back(embed::preprocess_text(rec.text));
    const auto model = phrase::learn_phrases(sequences);

    const auto planted_it = model.scores.find(phrase::PhraseModel::key("new", "york"));
    if (planted_it == model.scores.end()) return "planted pair (new, york) not detected";
    const double planted = planted_it->second;

    // the generator plants these collocations and multi-word terms by design
    const std::unordered_set<std::string> allowed{
        phrase::PhraseModel::key("new", "york"), phrase::PhraseModel::key("bill", "gates"),
        phrase::PhraseModel::key("active", "measures"), phrase::PhraseModel::key("deep", "state"),
        phrase::PhraseModel::key("fake", "news")};
    for (const auto& [key, score] : model.scores) {
        if (allowed.count(key)) continue;
        if (score >= planted) {
            std::string label = key;
            std::replace(label.begin(), label.end(), '\t', '+');
            return "background pair " + label + " scores " + fmt(score) +
                   " >= planted " + fmt(planted);
        }
    }
    return "";
}

// ---------------------------------------------------------------- criterion 9

std::string round_trips() {
    const fs::path dir =
        fs::temp_directory_path() / ("geolex-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    struct Cleanup {
        fs::path p;
        ~Cleanup() {
            std::error_code ec;
            fs::remove_all(p, ec);
        }
    } cleanup{dir};

    // embedding vectors: text format carries 6 decimals
    const auto topic = synth::make_topic_corpus(2, 300);
    embed::TrainConfig config;
    config.dim = 12;
    config.epochs = 2;
    config.subsample_t = 0.0;
    config.seed = 3;
    const auto trained = embed::train_cbow(topic.sequences, config).model;
    const auto vec_path = (dir / "vectors.txt").string();
    embed::save_model(trained, vec_path);
    const auto loaded = embed::load_model(vec_path);
    if (loaded.vocab.size() != trained.vocab.size()) return "embedding vocabulary size changed";
    for (std::size_t i = 0; i < trained.vocab.size(); ++i)
        if (loaded.vocab[i].token != trained.vocab[i].token)
            return "embedding vocabulary order changed";
    for (std::size_t k = 0; k < trained.input_vectors.size(); ++k) {
        if (std::abs(loaded.input_vectors[k] - trained.input_vectors[k]) > 5e-7)
            return "vector component drifted beyond 5e-7 after reload";
    }

    // classifier: predictions must be bitwise identical
    const auto profiles = synth::make_separable_profiles(21, 1000);
    std::vector<nb::LabeledExample> examples;
    for (const auto& rec : profiles) {
        const auto gold = geo::assign_region_label(rec);
        if (!gold) return "profile record without a gold label";
        examples.push_back({nb::build_features(rec), *gold});
    }
    const auto nb_model = nb::train_nb(examples);
    const auto nb_path = (dir / "nb.tsv").string();
    nb::save_model(nb_model, nb_path);
    const auto nb_loaded = nb::load_model(nb_path);
    for (const auto& ex : examples) {
        const auto a = nb::predict(nb_model, ex.doc);
        const auto b = nb::predict(nb_loaded, ex.doc);
        if (a.label != b.label || a.posterior != b.posterior)
            return "classifier prediction changed after reload (doc " + ex.doc.id + ")";
    }

    // slice files
    synth::TweetCorpusParams params;
    params.seed = 13;
    params.records = 400;
    corpus::CorpusSlice slice;
    slice.name = "roundtrip";
    slice.language = "en";
    slice.period = corpus::parse_date_range("2019-04-17:2019-06-30");
    slice.region = Region::European;
    slice.records = synth::make_tweet_corpus(params);
    const auto slice_path = (dir / "slice.jsonl").string();
    corpus::save_slice(slice, slice_path);
    const auto slice_loaded = corpus::load_slice(slice_path);
    if (slice_loaded.name != slice.name || slice_loaded.language != slice.language)
        return "slice metadata changed after reload";
    if (!slice_loaded.region || *slice_loaded.region != Region::European)
        return "slice region changed after reload";
    if (slice_loaded.records.size() != slice.records.size())
        return "slice record count changed after reload";
    for (std::size_t i = 0; i < slice.records.size(); ++i)
        if (!(slice_loaded.records[i] == slice.records[i]))
            return "slice record " + slice.records[i].id + " changed after reload";
    return "";
}

// --------------------------------------------------------------- criterion 10

struct PipelineError {
    std::string message;
};

void run_cmd(const fs::path& dir, const std::string& cmd, const std::string& stdout_file) {
    const std::string redirect = stdout_file.empty() ? "/dev/null" : stdout_file;
    const std::string full = "cd '" + dir.string() + "' && " + cmd + " > '" + redirect +
                             "' 2>> cmd.log";
    const int rc = std::system(full.c_str());
    if (rc != 0) {
        throw std::runtime_error("command failed (status " + std::to_string(rc) +
                                 "): " + cmd);
    }
}

void run_pipeline(const fs::path& dir) {
    fs::create_directories(dir);
    const std::string cli = std::string("'") + GEOLEX_CLI_PATH + "' --threads 1";
    const std::string synth_bin = std::string("'") + GEOLEX_SYNTH_PATH + "'";

    run_cmd(dir, synth_bin + " --output tweets.jsonl --seed 42 --records 10000", "");
    run_cmd(dir,
            cli + " ingest --input tweets.jsonl --lang en --name en2019 --terms-builtin"
                  " --period 2019-04-17:2019-06-30 --output en2019.slice",
            "");
    run_cmd(dir,
            cli + " ingest --input tweets.jsonl --lang en --name en2020 --terms-builtin"
                  " --period 2020-04-17:2020-06-30 --output en2020.slice",
            "");
    run_cmd(dir, cli + " ingest --input tweets.jsonl --lang en --name enall --output enall.slice",
            "");
    run_cmd(dir, cli + " label --input enall.slice --geotagged-only --output gold.slice", "");
    run_cmd(dir,
            cli + " split --input gold.slice --train train.slice --validation val.slice"
                  " --test test.slice --seed 7",
            "");
    run_cmd(dir, cli + " train-clf --train train.slice --output nb.tsv", "");
    run_cmd(dir, cli + " classify --model nb.tsv --input enall.slice --output pred.tsv", "");
    run_cmd(dir, cli + " eval-clf --train train.slice --test test.slice", "metrics.txt");
    run_cmd(dir, cli + " eval-clf --baseline --test test.slice", "baseline.txt");
    run_cmd(dir,
            cli + " import-labels --input enall.slice --labels pred.tsv --region E"
                  " --output european.slice",
            "");
    run_cmd(dir, cli + " specificity --ref enall.slice --sub en2020.slice --top 10",
            "spec2020.tsv");
    run_cmd(dir, cli + " build-phrases --input enall.slice --output phrases.tsv", "");
    run_cmd(dir,
            cli + " apply-phrases --input en2019.slice --phrases phrases.tsv"
                  " --output tokens2019.txt",
            "");
    const std::string train_flags =
        " --dim 32 --window 5 --min-count 5 --negatives 5 --epochs 8 --lr 0.05"
        " --subsample 0 --seed 11 --phrases phrases.tsv";
    run_cmd(dir, cli + " train-embeddings --slice en2019.slice --output vec2019.txt" + train_flags,
            "");
    run_cmd(dir, cli + " train-embeddings --slice en2020.slice --output vec2020.txt" + train_flags,
            "");
    run_cmd(dir, cli + " neighbors --model vec2020.txt --query propaganda --top 5",
            "neighbors.txt");
    run_cmd(dir, cli + " analogy --model vec2020.txt --a media --b truth --c people --top 5",
            "analogy.txt");
    run_cmd(dir, cli + " compare --model-a vec2019.txt --model-b vec2020.txt --query laboratory",
            "compare.txt");
    run_cmd(dir, cli + " report --ref enall.slice --slices en2019.slice en2020.slice --top 5",
            "report.tsv");
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing pipeline artifact: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string end_to_end() {
    const fs::path base =
        fs::temp_directory_path() / ("geolex-e2e-" + std::to_string(::getpid()));
    struct Cleanup {
        fs::path p;
        ~Cleanup() {
            std::error_code ec;
            fs::remove_all(p, ec);
        }
    } cleanup{base};

    const fs::path run1 = base / "run1";
    const fs::path run2 = base / "run2";
    try {
        run_pipeline(run1);
        run_pipeline(run2);
    } catch (const std::exception& e) {
        return e.what();
    }

    const std::vector<std::string> artifacts{
        "tweets.jsonl",    "en2019.slice",  "en2019.slice.meta", "en2020.slice",
        "en2020.slice.meta", "enall.slice", "enall.slice.meta",  "gold.slice",
        "gold.slice.meta", "train.slice",   "train.slice.meta",  "val.slice",
        "val.slice.meta",  "test.slice",    "test.slice.meta",   "nb.tsv",
        "pred.tsv",        "metrics.txt",   "baseline.txt",      "european.slice",
        "european.slice.meta", "spec2020.tsv", "phrases.tsv",    "tokens2019.txt",
        "vec2019.txt",     "vec2020.txt",   "neighbors.txt",     "analogy.txt",
        "compare.txt",     "report.tsv"};
    for (const auto& name : artifacts) {
        if (read_bytes(run1 / name) != read_bytes(run2 / name))
            return "artifact differs between runs: " + name;
    }
    return "";
}

}  // namespace

int main() {
    int failures = 0;
    failures += run_criterion(1, "baseline metrics identity", 1.0, metrics_identity);
    failures += run_criterion(2, "specificity vs rational oracle", 60.0, specificity_oracle);
    failures += run_criterion(3, "classifier correctness", 10.0, nb_correctness);
    failures += run_criterion(4, "stratified split properties", 5.0, split_properties);
    failures += run_criterion(5, "cbow gradient check", 10.0, gradient_check);
    failures += run_criterion(6, "embedding topic separation", 120.0, embedding_sanity);
    failures += run_criterion(7, "analogy recovery", 120.0, analogy_recovery);
    failures += run_criterion(8, "phrase detection", 10.0, phrase_detection);
    failures += run_criterion(9, "model and slice round-trips", 10.0, round_trips);
    failures += run_criterion(10, "end-to-end pipeline determinism", 300.0, end_to_end);

    if (failures == 0) {
        std::cout << "all 10 acceptance criteria passed\n";
    } else {
        std::cout << failures << " acceptance criteria failed\n";
    }
    return failures;
}
