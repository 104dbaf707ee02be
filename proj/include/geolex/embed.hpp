#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "geolex/rng.hpp"

namespace geolex::embed {

using LemmaDict = std::unordered_map<std::string, std::string>;

// TSV rows `surface<TAB>lemma`; tokens are lowercased on load.
LemmaDict load_lemma_dict(const std::string& path);

// Tweet-text cleaning in order: drop a leading "RT" token, cut URL substrings
// (http:// or https:// through the next whitespace), then tokenize with the
// corpus rules and map through the lemma dictionary when one is given.
std::vector<std::string> preprocess_text(const std::string& raw,
                                         const LemmaDict* lemmas = nullptr);

struct TrainConfig {
    int dim = 100;
    int window = 5;
    std::uint64_t min_count = 5;
    int negatives = 5;
    int epochs = 5;
    double initial_lr = 0.025;
    double subsample_t = 1e-4;
    std::uint64_t seed = 1;
    int threads = 1;

    // Throws std::invalid_argument on any non-positive field.
    void validate() const;
};

struct VocabEntry {
    std::string token;
    std::uint64_t count = 0;
};

// Tokens with corpus count >= min_count, ordered by count descending then
// token ascending. Throws std::invalid_argument when nothing survives.
std::vector<VocabEntry> build_vocab(const std::vector<std::vector<std::string>>& sequences,
                                    std::uint64_t min_count);

struct EmbeddingModel {
    std::vector<VocabEntry> vocab;
    int dim = 0;
    // Row-major |V| x dim. output_vectors exist only on freshly trained
    // models; the file format keeps input vectors alone and queries never
    // need more.
    std::vector<double> input_vectors;
    std::vector<double> output_vectors;
    TrainConfig config;
    std::unordered_map<std::string, std::size_t> index;

    double* input_row(std::size_t i) { return input_vectors.data() + i * static_cast<std::size_t>(dim); }
    const double* input_row(std::size_t i) const {
        return input_vectors.data() + i * static_cast<std::size_t>(dim);
    }
    double* output_row(std::size_t i) { return output_vectors.data() + i * static_cast<std::size_t>(dim); }

    std::optional<std::size_t> find(const std::string& token) const {
        auto it = index.find(token);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    void rebuild_index();
};

// One negative-sampling CBOW update against the mean of the context input
// vectors. Gradients follow the logistic loss exactly (context update is
// scaled by 1/|context|, matching the derivative of the mean), so the step
// passes a finite-difference check. Returns the loss BEFORE the update;
// lr = 0 evaluates the loss without touching the model.
double cbow_step(EmbeddingModel& model, const std::vector<std::size_t>& context_indices,
                 std::size_t target_index, const std::vector<std::size_t>& negative_indices,
                 double lr);

// Walker alias sampler over the unigram distribution raised to 0.75.
class UnigramSampler {
public:
    explicit UnigramSampler(const std::vector<VocabEntry>& vocab, double power = 0.75);

    std::size_t sample(rng::Rng& rng) const;
    const std::vector<double>& probabilities() const { return prob_; }

private:
    std::vector<double> prob_;      // normalized p_i, kept for tests
    std::vector<double> accept_;    // alias acceptance thresholds
    std::vector<std::size_t> alias_;
};

struct TrainResult {
    EmbeddingModel model;
    std::vector<double> epoch_mean_loss;  // one entry per epoch
};

// Full CBOW training run: vocabulary build, per-occurrence subsampling with
// discard probability 1 - sqrt(subsample_t/freq), dynamic window uniform in
// 1..window, negatives from unigram^0.75 (redrawn when equal to the target),
// linear lr decay to initial_lr * 1e-4. Deterministic for threads = 1.
TrainResult train_cbow(const std::vector<std::vector<std::string>>& sequences,
                       const TrainConfig& config);

// First line "<vocab_size> <dim>", then per token: token and dim "%.6f"
// values, space-separated, in vocabulary order.
void save_model(const EmbeddingModel& model, const std::string& path);
// Loaded models carry input vectors only; counts are not part of the format
// and come back as zero.
EmbeddingModel load_model(const std::string& path);

}  // namespace geolex::embed
