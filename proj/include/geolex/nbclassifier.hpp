#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "geolex/corpus.hpp"
#include "geolex/geolabel.hpp"
#include "geolex/region.hpp"

namespace geolex::nb {

// Bag of profile-metadata tokens for one record. Description words are kept
// as-is; the whole user location collapses to one underscore-joined token.
struct FeatureDoc {
    std::string id;
    std::vector<std::string> tokens;
};

FeatureDoc build_features(const corpus::TweetRecord& record);

struct LabeledExample {
    FeatureDoc doc;
    Region label;
};

constexpr int region_index(Region r) { return r == Region::European ? 0 : 1; }
constexpr Region region_at(int i) { return i == 0 ? Region::European : Region::NonEuropean; }

// Multinomial Naive Bayes with add-alpha smoothing, log-space throughout.
struct NBModel {
    double alpha = 1.0;
    std::array<double, 2> log_prior{};  // [European, NonEuropean]
    std::vector<std::string> vocabulary;  // ascending
    std::unordered_map<std::string, std::array<double, 2>> token_log_likelihood;
};

// likelihood(token|c) = (count(token,c) + alpha) / (total_tokens(c) + alpha*|V|).
// Throws std::invalid_argument when a class is absent or alpha <= 0.
NBModel train_nb(const std::vector<LabeledExample>& docs, double alpha = 1.0);

struct Prediction {
    Region label;
    double posterior;  // of the predicted class; the two posteriors sum to 1
};

// Argmax of log prior + sum of in-vocabulary token log likelihoods.
// Out-of-vocabulary tokens are ignored; exact score ties go to European.
Prediction predict(const NBModel& model, const FeatureDoc& doc);

struct EvalMetrics {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    // confusion[gold][predicted], index 0 = European.
    std::array<std::array<std::size_t, 2>, 2> confusion{};
};

// Macro values are unweighted means over the two classes; a class with zero
// predicted positives contributes precision 0. Throws on empty or
// length-mismatched inputs.
EvalMetrics evaluate(const std::vector<Region>& predictions, const std::vector<Region>& gold);

// Versioned TSV: "nbmodel v1 alpha=<a>" header, then prior and tok rows.
// Log probabilities are written with full precision, so a loaded model
// predicts identically.
void save_model(const NBModel& model, const std::string& path);
NBModel load_model(const std::string& path);

struct ImportStats {
    std::size_t rows_read = 0;
    std::size_t applied = 0;    // records that acquired a label
    std::size_t unmatched = 0;  // label rows with no record
    std::size_t malformed = 0;  // skipped rows
};

struct ImportResult {
    corpus::CorpusSlice slice;
    ImportStats stats;
};

// Merges a TSV label file into a slice by record id. Unmatched rows are
// tallied; records without a row keep their previous label state.
// Conflicting duplicate rows throw.
ImportResult import_labels(const corpus::CorpusSlice& slice, const std::string& tsv_path);

// Records carrying the given region label, as a new slice with the region
// field stamped on it.
corpus::CorpusSlice filter_by_region(const corpus::CorpusSlice& slice, Region region);

}  // namespace geolex::nb
