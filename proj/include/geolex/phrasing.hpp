#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace geolex::phrase {

// Significant-bigram model. Pairs are keyed "a\tb"; tokens themselves can
// never contain a tab, they come out of whitespace tokenization.
struct PhraseModel {
    std::unordered_map<std::string, double> scores;
    double delta = 5.0;
    double threshold = 10.0;
    std::uint64_t token_total = 0;

    static std::string key(const std::string& a, const std::string& b) { return a + '\t' + b; }
    bool contains(const std::string& a, const std::string& b) const {
        return scores.count(key(a, b)) != 0;
    }
};

// score(a,b) = (count(ab) - delta) * token_total / (count(a) * count(b)).
// Pairs are adjacent tokens within one sequence; only pairs with
// count(ab) >= min_count and score >= threshold are kept.
PhraseModel learn_phrases(const std::vector<std::vector<std::string>>& sequences,
                          double delta = 5.0, double threshold = 10.0,
                          std::uint64_t min_count = 5);

// Single greedy left-to-right pass: a pair found in the model becomes one
// "a_b" token and the scan advances past both, so merges never overlap.
std::vector<std::string> apply_phrases(const std::vector<std::string>& tokens,
                                       const PhraseModel& model);

// TSV rows tokenA<TAB>tokenB<TAB>score under a "# phrases v1 ..." header
// line that carries delta, threshold and token_total.
void save_phrases(const PhraseModel& model, const std::string& path);
PhraseModel load_phrases(const std::string& path);

}  // namespace geolex::phrase
