#include "geolex/lexspec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "geolex/text.hpp"

namespace geolex::lex {

FreqTable count_tokens(const std::vector<std::string>& tokens) {
    FreqTable table;
    for (const auto& tok : tokens) table.add(tok);
    return table;
}

FreqTable count_slice(const corpus::CorpusSlice& slice) {
    FreqTable table;
    for (const auto& record : slice.records)
        for (auto& tok : text::word_tokens(record.text)) table.add(tok);
    return table;
}

namespace {

double dbl(std::uint64_t v) { return static_cast<double>(v); }

// log C(n, k) via lgamma.
double log_choose(std::uint64_t n, std::uint64_t k) {
    return std::lgamma(dbl(n) + 1.0) - std::lgamma(dbl(k) + 1.0) - std::lgamma(dbl(n - k) + 1.0);
}

void validate(const SpecificityQuery& q) {
    if (q.F > q.T || q.t > q.T || q.f > q.F || q.f > q.t)
        throw std::invalid_argument("hypergeometric query out of domain");
}

}  // namespace

double log_hypergeom_tail(const SpecificityQuery& q) {
    validate(q);
    if (q.f == 0) return 0.0;  // P(X >= 0) = 1

    // P(X = k) for k = f..min(F,t), summed in log space. Masses below the
    // support lower bound max(0, t+F-T) are exactly zero, so the sum starts
    // at the bound; under it the u64 arguments of log_choose and the ratio
    // denominator would wrap. The first mass is
    // log C(F,k0) + log C(T-F, t-k0) - log C(T,t); each successive one follows
    // from the ratio P(k+1)/P(k) = (F-k)(t-k) / ((k+1)(T-F-t+k+1)).
    const std::uint64_t k_max = std::min(q.F, q.t);
    const std::uint64_t k_support = q.t + q.F > q.T ? q.t + q.F - q.T : 0;
    const std::uint64_t k0 = std::max(q.f, k_support);
    std::vector<double> log_terms;
    log_terms.reserve(static_cast<std::size_t>(k_max - k0) + 1);

    double log_pk = log_choose(q.F, k0) + log_choose(q.T - q.F, q.t - k0) - log_choose(q.T, q.t);
    log_terms.push_back(log_pk);
    for (std::uint64_t k = k0; k < k_max; ++k) {
        const double log_ratio = std::log(dbl(q.F - k)) + std::log(dbl(q.t - k)) -
                                 std::log(dbl(k + 1)) - std::log(dbl(q.T - q.F - q.t + k + 1));
        log_pk += log_ratio;
        log_terms.push_back(log_pk);
    }

    const double shift = *std::max_element(log_terms.begin(), log_terms.end());
    double sum = 0.0;
    for (const double lt : log_terms) sum += std::exp(lt - shift);
    // The tail is a probability; rounding can nudge the sum past 1.
    return std::min(shift + std::log(sum), 0.0);
}

double hypergeom_tail(const SpecificityQuery& q) { return std::exp(log_hypergeom_tail(q)); }

double specificity_score(const SpecificityQuery& q) {
    if (q.f == 0) {
        validate(q);
        return 0.0;
    }
    constexpr double ln10 = 2.302585092994045684;
    const double score = -log_hypergeom_tail(q) / ln10;
    return score < 0.0 ? 0.0 : score;
}

double specificity(const FreqTable& ref, const FreqTable& sub, const std::string& term) {
    if (sub.total > ref.total)
        throw std::invalid_argument("subcorpus has more tokens than reference");
    const std::uint64_t f = sub.count(term);
    const std::uint64_t F = ref.count(term);
    if (f > F)
        throw std::invalid_argument("term '" + term + "' occurs more often in subcorpus than reference");
    return specificity_score({ref.total, F, sub.total, f});
}

std::vector<SpecificityRow> top_terms(const FreqTable& ref, const FreqTable& sub, std::size_t k,
                                      const std::unordered_set<std::string>* wordlist) {
    if (k == 0) throw std::invalid_argument("top_terms: k must be >= 1");

    std::vector<SpecificityRow> rows;
    rows.reserve(sub.counts.size());
    for (const auto& [term, f] : sub.counts) {
        if (wordlist && wordlist->count(term) == 0) continue;
        SpecificityRow row;
        row.term = term;
        row.sub_count = f;
        row.ref_count = ref.count(term);
        row.score = specificity(ref, sub, term);
        rows.push_back(std::move(row));
    }

    std::sort(rows.begin(), rows.end(), [](const SpecificityRow& a, const SpecificityRow& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.term < b.term;
    });
    if (rows.size() > k) rows.resize(k);
    return rows;
}

std::unordered_set<std::string> load_wordlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        words.insert(text::lower_copy(line));
    }
    return words;
}

}  // namespace geolex::lex
