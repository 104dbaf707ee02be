// geolex: regional/temporal corpus slicing, profile-based region
// classification, lexical specificity, phrase detection, CBOW embeddings and
// embedding queries, one subcommand per pipeline stage.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geolex/corpus.hpp"
#include "geolex/embed.hpp"
#include "geolex/geolabel.hpp"
#include "geolex/lexspec.hpp"
#include "geolex/nbclassifier.hpp"
#include "geolex/phrasing.hpp"
#include "geolex/query.hpp"
#include "geolex/region.hpp"
#include "geolex/text.hpp"

namespace {

using namespace geolex;

std::string fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

Region parse_region_flag(const std::string& s) {
    const auto region = region_from_string(s);
    if (!region) throw std::runtime_error("unknown region '" + s + "' (expected E or NE)");
    return *region;
}

std::array<double, 3> parse_ratios(const std::string& s) {
    std::array<double, 3> ratios{};
    char trailing = '\0';
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &ratios[0], &ratios[1], &ratios[2], &trailing) != 3)
        throw std::runtime_error("ratios must be three comma-separated numbers, e.g. 0.8,0.1,0.1");
    return ratios;
}

// Gold labels for every record; throws naming the first unlabeled one.
std::vector<Region> require_labels(const corpus::CorpusSlice& slice) {
    std::vector<Region> labels;
    labels.reserve(slice.records.size());
    for (const auto& rec : slice.records) {
        if (!rec.region)
            throw std::runtime_error("record " + rec.id +
                                     " has no region label; run label or import-labels first");
        labels.push_back(*rec.region);
    }
    if (labels.empty()) throw std::runtime_error(slice.name + " has no records");
    return labels;
}

std::vector<nb::LabeledExample> labeled_examples(const corpus::CorpusSlice& slice) {
    const auto labels = require_labels(slice);
    std::vector<nb::LabeledExample> examples;
    examples.reserve(slice.records.size());
    for (std::size_t i = 0; i < slice.records.size(); ++i)
        examples.push_back({nb::build_features(slice.records[i]), labels[i]});
    return examples;
}

void print_metrics(const nb::EvalMetrics& m) {
    std::cout << "accuracy\t" << fixed6(m.accuracy) << "\n"
              << "macro_precision\t" << fixed6(m.macro_precision) << "\n"
              << "macro_recall\t" << fixed6(m.macro_recall) << "\n"
              << "macro_f1\t" << fixed6(m.macro_f1) << "\n";
    for (int gold = 0; gold < 2; ++gold)
        for (int pred = 0; pred < 2; ++pred)
            std::cout << "confusion\t" << to_string(nb::region_at(gold)) << "\t"
                      << to_string(nb::region_at(pred)) << "\t"
                      << m.confusion[static_cast<std::size_t>(gold)][static_cast<std::size_t>(pred)]
                      << "\n";
}

void print_neighbor_rows(const query::NeighborList& list, const std::string& prefix) {
    std::size_t rank = 1;
    for (const auto& n : list.entries) {
        if (!prefix.empty()) std::cout << prefix << "\t";
        std::cout << rank++ << "\t" << n.token << "\t" << fixed6(n.similarity) << "\n";
    }
}

// Embedding-ready token sequences for a slice: cleaning, optional lemma
// mapping, optional phrase merging.
std::vector<std::vector<std::string>> sequences_for(const corpus::CorpusSlice& slice,
                                                    const std::string& lemma_path,
                                                    const std::string& phrase_path) {
    embed::LemmaDict lemmas;
    if (!lemma_path.empty()) lemmas = embed::load_lemma_dict(lemma_path);
    phrase::PhraseModel phrases;
    if (!phrase_path.empty()) phrases = phrase::load_phrases(phrase_path);

    std::vector<std::vector<std::string>> sequences;
    sequences.reserve(slice.records.size());
    for (const auto& rec : slice.records) {
        auto tokens = embed::preprocess_text(rec.text, lemma_path.empty() ? nullptr : &lemmas);
        if (!phrase_path.empty()) tokens = phrase::apply_phrases(tokens, phrases);
        sequences.push_back(std::move(tokens));
    }
    return sequences;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regional disinformation-corpus analysis pipeline"};
    app.require_subcommand(1);
    app.set_config("--config", "", "file of key = value defaults, overridden by flags");
    app.allow_config_extras(CLI::config_extras_mode::error);

    int threads = 1;
    app.add_option("--threads", threads, "worker threads for ingest and training")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // ---- ingest ----
    auto* ingest = app.add_subcommand("ingest", "read JSONL tweet files into a slice");
    std::vector<std::string> in_patterns;
    std::string in_output, in_lang, in_name, in_terms, in_period;
    bool in_terms_builtin = false;
    ingest->add_option("--input", in_patterns, "JSONL files (glob allowed)")->required();
    ingest->add_option("--output", in_output, "slice file to write")->required();
    ingest->add_option("--lang", in_lang, "keep only this language");
    ingest->add_option("--name", in_name, "slice name (default: output stem)");
    ingest->add_option("--terms", in_terms, "term file; keep only records containing a term")
        ->check(CLI::ExistingFile);
    ingest->add_flag("--terms-builtin", in_terms_builtin, "use the bundled term list for --lang");
    ingest->add_option("--period", in_period, "keep only records in YYYY-MM-DD:YYYY-MM-DD");
    ingest->callback([&] {
        std::vector<std::string> files;
        for (const auto& pattern : in_patterns) {
            auto expanded = corpus::expand_glob(pattern);
            files.insert(files.end(), expanded.begin(), expanded.end());
        }
        if (files.empty()) throw std::runtime_error("no input files match");
        std::set<std::string> allow;
        if (!in_lang.empty()) allow.insert(in_lang);
        auto [slice, stats] = corpus::ingest_files(files, allow, static_cast<unsigned>(threads));
        slice.language = in_lang;
        slice.name = in_name.empty() ? std::filesystem::path(in_output).stem().string() : in_name;

        if (in_terms_builtin && !in_terms.empty())
            throw std::runtime_error("--terms and --terms-builtin are mutually exclusive");
        if (in_terms_builtin || !in_terms.empty()) {
            if (in_lang.empty()) throw std::runtime_error("term filtering requires --lang");
            const auto terms = in_terms_builtin ? corpus::builtin_term_list(in_lang)
                                                : corpus::load_term_list(in_terms, in_lang);
            slice = corpus::filter_disinfo_terms(slice, terms);
        }
        std::size_t out_of_period = 0;
        if (!in_period.empty()) {
            auto partition = corpus::partition_corpus(slice, {corpus::parse_date_range(in_period)});
            out_of_period = partition.dropped;
            slice = std::move(partition.slices[0]);
        }
        corpus::save_slice(slice, in_output);
        std::cerr << "read " << stats.lines_read << " lines: kept " << stats.kept << ", malformed "
                  << stats.skipped_malformed << ", other-language " << stats.skipped_language
                  << "; wrote " << slice.records.size() << " records";
        if (!in_period.empty()) std::cerr << " (" << out_of_period << " outside period)";
        std::cerr << "\n";
    });

    // ---- label ----
    auto* label = app.add_subcommand("label", "derive gold region labels from geotags");
    std::string lb_input, lb_output;
    bool lb_geotagged_only = false;
    label->add_option("--input", lb_input, "slice file")->required()->check(CLI::ExistingFile);
    label->add_option("--output", lb_output, "labeled slice to write")->required();
    label->add_flag("--geotagged-only", lb_geotagged_only, "drop records without a country code");
    label->callback([&] {
        auto slice = corpus::load_slice(lb_input);
        std::size_t labeled = 0;
        for (auto& rec : slice.records) {
            if (const auto region = geo::assign_region_label(rec)) {
                rec.region = region;
                ++labeled;
            }
        }
        if (lb_geotagged_only) {
            std::erase_if(slice.records, [](const corpus::TweetRecord& r) { return !r.region; });
        }
        corpus::save_slice(slice, lb_output);
        std::cerr << "labeled " << labeled << " of " << slice.records.size() << " kept records\n";
    });

    // ---- split ----
    auto* split = app.add_subcommand("split", "stratified train/validation/test split");
    std::string sp_input, sp_train, sp_validation, sp_test, sp_ratios = "0.8,0.1,0.1";
    std::uint64_t sp_seed = 0;
    split->add_option("--input", sp_input, "labeled slice")->required()->check(CLI::ExistingFile);
    split->add_option("--train", sp_train, "train slice to write")->required();
    split->add_option("--validation", sp_validation, "validation slice to write")->required();
    split->add_option("--test", sp_test, "test slice to write")->required();
    split->add_option("--ratios", sp_ratios, "train,validation,test fractions")->capture_default_str();
    split->add_option("--seed", sp_seed, "shuffle seed")->capture_default_str();
    split->callback([&] {
        const auto slice = corpus::load_slice(sp_input);
        const auto labels = require_labels(slice);
        const auto indices = geo::stratified_split(labels, {parse_ratios(sp_ratios), sp_seed});

        const auto materialize = [&](const std::vector<std::size_t>& idx, const std::string& part,
                                     const std::string& path) {
            corpus::CorpusSlice out;
            out.name = slice.name + "-" + part;
            out.language = slice.language;
            out.period = slice.period;
            out.region = slice.region;
            out.records.reserve(idx.size());
            for (const std::size_t i : idx) out.records.push_back(slice.records[i]);
            corpus::save_slice(out, path);
        };
        materialize(indices.train, "train", sp_train);
        materialize(indices.validation, "validation", sp_validation);
        materialize(indices.test, "test", sp_test);
        std::cerr << "split " << slice.records.size() << " records into " << indices.train.size()
                  << "/" << indices.validation.size() << "/" << indices.test.size() << "\n";
    });

    // ---- train-clf ----
    auto* train_clf = app.add_subcommand("train-clf", "train the profile-metadata region classifier");
    std::string tc_train, tc_output;
    double tc_alpha = 1.0;
    train_clf->add_option("--train", tc_train, "labeled slice")->required()->check(CLI::ExistingFile);
    train_clf->add_option("--output", tc_output, "model file to write")->required();
    train_clf->add_option("--alpha", tc_alpha, "smoothing constant")->capture_default_str();
    train_clf->callback([&] {
        const auto slice = corpus::load_slice(tc_train);
        const auto model = nb::train_nb(labeled_examples(slice), tc_alpha);
        nb::save_model(model, tc_output);
        std::cerr << "trained on " << slice.records.size() << " records, vocabulary "
                  << model.vocabulary.size() << "\n";
    });

    // ---- classify ----
    auto* classify = app.add_subcommand("classify", "predict region labels for a slice");
    std::string cl_model, cl_input, cl_output;
    classify->add_option("--model", cl_model, "classifier model")->required()->check(CLI::ExistingFile);
    classify->add_option("--input", cl_input, "slice file")->required()->check(CLI::ExistingFile);
    classify->add_option("--output", cl_output, "label TSV to write")->required();
    classify->callback([&] {
        const auto model = nb::load_model(cl_model);
        const auto slice = corpus::load_slice(cl_input);
        std::vector<std::pair<std::string, Region>> rows;
        rows.reserve(slice.records.size());
        for (const auto& rec : slice.records)
            rows.emplace_back(rec.id, nb::predict(model, nb::build_features(rec)).label);
        geo::write_label_file(cl_output, rows);
        std::cerr << "classified " << rows.size() << " records\n";
    });

    // ---- eval-clf ----
    auto* eval_clf = app.add_subcommand(
        "eval-clf", "train/evaluate; same --train and --test path means an internal split");
    std::string ec_train, ec_test, ec_ratios = "0.8,0.1,0.1";
    double ec_alpha = 1.0;
    std::uint64_t ec_seed = 0;
    bool ec_baseline = false;
    eval_clf->add_option("--train", ec_train, "labeled training slice")->check(CLI::ExistingFile);
    eval_clf->add_option("--test", ec_test, "labeled evaluation slice")
        ->required()
        ->check(CLI::ExistingFile);
    eval_clf->add_option("--ratios", ec_ratios, "fractions for the internal split")
        ->capture_default_str();
    eval_clf->add_option("--alpha", ec_alpha, "smoothing constant")->capture_default_str();
    eval_clf->add_option("--seed", ec_seed, "internal split seed")->capture_default_str();
    eval_clf->add_flag("--baseline", ec_baseline,
                       "score the all-European predictor instead of training");
    eval_clf->callback([&] {
        if (ec_baseline) {
            const auto gold = require_labels(corpus::load_slice(ec_test));
            const std::vector<Region> preds(gold.size(), Region::European);
            print_metrics(nb::evaluate(preds, gold));
            return;
        }
        if (ec_train.empty()) throw std::runtime_error("--train is required unless --baseline");

        std::vector<nb::LabeledExample> train_set, test_set;
        if (ec_train == ec_test) {
            const auto slice = corpus::load_slice(ec_train);
            auto examples = labeled_examples(slice);
            std::vector<Region> labels;
            labels.reserve(examples.size());
            for (const auto& ex : examples) labels.push_back(ex.label);
            const auto idx = geo::stratified_split(labels, {parse_ratios(ec_ratios), ec_seed});
            for (const std::size_t i : idx.train) train_set.push_back(examples[i]);
            for (const std::size_t i : idx.test) test_set.push_back(examples[i]);
        } else {
            train_set = labeled_examples(corpus::load_slice(ec_train));
            test_set = labeled_examples(corpus::load_slice(ec_test));
        }
        const auto model = nb::train_nb(train_set, ec_alpha);
        std::vector<Region> preds, gold;
        preds.reserve(test_set.size());
        gold.reserve(test_set.size());
        for (const auto& ex : test_set) {
            preds.push_back(nb::predict(model, ex.doc).label);
            gold.push_back(ex.label);
        }
        print_metrics(nb::evaluate(preds, gold));
    });

    // ---- import-labels ----
    auto* import_labels = app.add_subcommand("import-labels", "merge a label TSV into a slice");
    std::string il_input, il_labels, il_output, il_region;
    import_labels->add_option("--input", il_input, "slice file")->required()->check(CLI::ExistingFile);
    import_labels->add_option("--labels", il_labels, "TSV of id<TAB>E|NE")
        ->required()
        ->check(CLI::ExistingFile);
    import_labels->add_option("--output", il_output, "slice to write")->required();
    import_labels->add_option("--region", il_region, "keep only this region after merging")
        ->check(CLI::IsMember({"E", "NE"}));
    import_labels->callback([&] {
        const auto slice = corpus::load_slice(il_input);
        auto [merged, stats] = nb::import_labels(slice, il_labels);
        if (!il_region.empty()) merged = nb::filter_by_region(merged, parse_region_flag(il_region));
        corpus::save_slice(merged, il_output);
        std::cerr << "rows " << stats.rows_read << ": applied " << stats.applied << ", unmatched "
                  << stats.unmatched << ", malformed " << stats.malformed << "; wrote "
                  << merged.records.size() << " records\n";
    });

    // ---- specificity ----
    auto* specificity = app.add_subcommand("specificity", "top subcorpus terms vs. a reference");
    std::string sc_ref, sc_sub, sc_wordlist;
    std::size_t sc_top = 5;
    specificity->add_option("--ref", sc_ref, "reference slice")->required()->check(CLI::ExistingFile);
    specificity->add_option("--sub", sc_sub, "subcorpus slice")->required()->check(CLI::ExistingFile);
    specificity->add_option("--top", sc_top, "rows to emit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    specificity->add_option("--wordlist", sc_wordlist, "keep only terms from this file")
        ->check(CLI::ExistingFile);
    specificity->callback([&] {
        const auto ref = lex::count_slice(corpus::load_slice(sc_ref));
        const auto sub = lex::count_slice(corpus::load_slice(sc_sub));
        std::unordered_set<std::string> wordlist;
        if (!sc_wordlist.empty()) wordlist = lex::load_wordlist(sc_wordlist);
        const auto rows =
            lex::top_terms(ref, sub, sc_top, sc_wordlist.empty() ? nullptr : &wordlist);
        std::size_t rank = 1;
        for (const auto& row : rows)
            std::cout << rank++ << "\t" << row.term << "\t" << row.sub_count << "\t" << row.ref_count
                      << "\t" << fixed6(row.score) << "\n";
    });

    // ---- build-phrases ----
    auto* build_phrases = app.add_subcommand("build-phrases", "learn significant bigrams");
    std::string bp_input, bp_output, bp_lemmas;
    double bp_delta = 5.0, bp_threshold = 10.0;
    std::uint64_t bp_min_count = 5;
    build_phrases->add_option("--input", bp_input, "slice file")->required()->check(CLI::ExistingFile);
    build_phrases->add_option("--output", bp_output, "phrase TSV to write")->required();
    build_phrases->add_option("--delta", bp_delta, "score discount")->capture_default_str();
    build_phrases->add_option("--threshold", bp_threshold, "minimum kept score")
        ->capture_default_str();
    build_phrases->add_option("--min-count", bp_min_count, "minimum bigram count")
        ->capture_default_str();
    build_phrases->add_option("--lemmas", bp_lemmas, "lemma TSV applied before counting")
        ->check(CLI::ExistingFile);
    build_phrases->callback([&] {
        const auto slice = corpus::load_slice(bp_input);
        const auto model = phrase::learn_phrases(sequences_for(slice, bp_lemmas, ""), bp_delta,
                                                 bp_threshold, bp_min_count);
        phrase::save_phrases(model, bp_output);
        std::cerr << "kept " << model.scores.size() << " phrases over " << model.token_total
                  << " tokens\n";
    });

    // ---- apply-phrases ----
    auto* apply_phrases = app.add_subcommand(
        "apply-phrases", "emit phrase-merged token lines, one per record");
    std::string ap_input, ap_phrases, ap_output, ap_lemmas;
    apply_phrases->add_option("--input", ap_input, "slice file")->required()->check(CLI::ExistingFile);
    apply_phrases->add_option("--phrases", ap_phrases, "phrase TSV")
        ->required()
        ->check(CLI::ExistingFile);
    apply_phrases->add_option("--output", ap_output, "token text file to write")->required();
    apply_phrases->add_option("--lemmas", ap_lemmas, "lemma TSV applied before merging")
        ->check(CLI::ExistingFile);
    apply_phrases->callback([&] {
        const auto slice = corpus::load_slice(ap_input);
        const auto sequences = sequences_for(slice, ap_lemmas, ap_phrases);
        std::ofstream out(ap_output);
        if (!out) throw std::runtime_error("cannot write " + ap_output);
        for (const auto& tokens : sequences) {
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                if (i) out << ' ';
                out << tokens[i];
            }
            out << "\n";
        }
        if (!out) throw std::runtime_error("write failed for " + ap_output);
        std::cerr << "wrote " << sequences.size() << " token lines\n";
    });

    // ---- train-embeddings ----
    auto* train_embeddings = app.add_subcommand("train-embeddings", "train CBOW word vectors");
    std::string te_slice, te_output, te_lemmas, te_phrases;
    embed::TrainConfig te_config;
    train_embeddings->add_option("--slice", te_slice, "slice file")
        ->required()
        ->check(CLI::ExistingFile);
    train_embeddings->add_option("--output", te_output, "vector file to write")->required();
    train_embeddings->add_option("--dim", te_config.dim, "vector dimensionality")
        ->capture_default_str();
    train_embeddings->add_option("--window", te_config.window, "max context radius")
        ->capture_default_str();
    train_embeddings->add_option("--min-count", te_config.min_count, "vocabulary floor")
        ->capture_default_str();
    train_embeddings->add_option("--negatives", te_config.negatives, "negative samples per step")
        ->capture_default_str();
    train_embeddings->add_option("--epochs", te_config.epochs, "training passes")
        ->capture_default_str();
    train_embeddings->add_option("--lr", te_config.initial_lr, "initial learning rate")
        ->capture_default_str();
    train_embeddings->add_option("--subsample", te_config.subsample_t,
                                 "frequent-word subsampling threshold, 0 disables")
        ->capture_default_str();
    train_embeddings->add_option("--seed", te_config.seed, "RNG seed")->capture_default_str();
    train_embeddings->add_option("--lemmas", te_lemmas, "lemma TSV")->check(CLI::ExistingFile);
    train_embeddings->add_option("--phrases", te_phrases, "phrase TSV applied before training")
        ->check(CLI::ExistingFile);
    train_embeddings->callback([&] {
        const auto slice = corpus::load_slice(te_slice);
        te_config.threads = threads;
        const auto result = train_cbow(sequences_for(slice, te_lemmas, te_phrases), te_config);
        embed::save_model(result.model, te_output);
        std::cerr << "vocabulary " << result.model.vocab.size() << ", dim " << result.model.dim
                  << "\n";
        for (std::size_t e = 0; e < result.epoch_mean_loss.size(); ++e)
            std::cerr << "epoch " << e + 1 << " mean loss " << fixed6(result.epoch_mean_loss[e])
                      << "\n";
    });

    // ---- neighbors ----
    auto* neighbors = app.add_subcommand("neighbors", "nearest vocabulary tokens by cosine");
    std::string nb_model, nb_query;
    std::size_t nb_top = 10;
    neighbors->add_option("--model", nb_model, "vector file")->required()->check(CLI::ExistingFile);
    neighbors->add_option("--query", nb_query, "query token")->required();
    neighbors->add_option("--top", nb_top, "neighbors to emit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    neighbors->callback([&] {
        const auto model = embed::load_model(nb_model);
        print_neighbor_rows(query::nearest_neighbors(model, nb_query, nb_top), "");
    });

    // ---- analogy ----
    auto* analogy = app.add_subcommand("analogy", "rank tokens by cosine to v(b) + v(a) - v(c)");
    std::string an_model, an_a, an_b, an_c;
    std::size_t an_top = 10;
    analogy->add_option("--model", an_model, "vector file")->required()->check(CLI::ExistingFile);
    analogy->add_option("--a", an_a, "added token")->required();
    analogy->add_option("--b", an_b, "base token")->required();
    analogy->add_option("--c", an_c, "subtracted token")->required();
    analogy->add_option("--top", an_top, "results to emit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analogy->callback([&] {
        const auto model = embed::load_model(an_model);
        print_neighbor_rows(query::analogy(model, {an_a, an_b, an_c}, an_top), "");
    });

    // ---- compare ----
    auto* compare = app.add_subcommand("compare", "neighborhoods of one query in two models");
    std::string cp_model_a, cp_model_b, cp_query;
    std::size_t cp_top = 5;
    compare->add_option("--model-a", cp_model_a, "first vector file")
        ->required()
        ->check(CLI::ExistingFile);
    compare->add_option("--model-b", cp_model_b, "second vector file")
        ->required()
        ->check(CLI::ExistingFile);
    compare->add_option("--query", cp_query, "query token")->required();
    compare->add_option("--top", cp_top, "neighborhood size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare->callback([&] {
        const auto model_a = embed::load_model(cp_model_a);
        const auto model_b = embed::load_model(cp_model_b);
        const auto cmp = query::compare_neighborhoods(model_a, model_b, cp_query, cp_top);
        print_neighbor_rows(cmp.first, "a");
        print_neighbor_rows(cmp.second, "b");
        std::cout << "jaccard\t" << fixed6(cmp.jaccard) << "\n";
    });

    // ---- report ----
    auto* report = app.add_subcommand(
        "report", "top specificity terms of several slices against one reference");
    std::string rp_ref, rp_wordlist;
    std::vector<std::string> rp_slices;
    std::size_t rp_top = 5;
    report->add_option("--ref", rp_ref, "reference slice")->required()->check(CLI::ExistingFile);
    report->add_option("--slices", rp_slices, "subcorpus slices")->required();
    report->add_option("--top", rp_top, "rows per slice")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    report->add_option("--wordlist", rp_wordlist, "keep only terms from this file")
        ->check(CLI::ExistingFile);
    report->callback([&] {
        const auto ref = lex::count_slice(corpus::load_slice(rp_ref));
        std::unordered_set<std::string> wordlist;
        if (!rp_wordlist.empty()) wordlist = lex::load_wordlist(rp_wordlist);
        for (const auto& path : rp_slices) {
            const auto slice = corpus::load_slice(path);
            const auto rows = lex::top_terms(ref, lex::count_slice(slice), rp_top,
                                             rp_wordlist.empty() ? nullptr : &wordlist);
            std::size_t rank = 1;
            for (const auto& row : rows)
                std::cout << slice.name << "\t" << rank++ << "\t" << row.term << "\t"
                          << row.sub_count << "\t" << row.ref_count << "\t" << fixed6(row.score)
                          << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
