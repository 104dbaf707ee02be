#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "geolex/corpus.hpp"

namespace geolex::lex {

// Token occurrence counts. No zero-count entries; total is the sum.
struct FreqTable {
    std::unordered_map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;

    std::uint64_t count(const std::string& term) const {
        auto it = counts.find(term);
        return it == counts.end() ? 0 : it->second;
    }
    void add(const std::string& term, std::uint64_t n = 1) {
        if (n == 0) return;
        counts[term] += n;
        total += n;
    }
};

FreqTable count_tokens(const std::vector<std::string>& tokens);
// Surface-form counts over a slice, using the tweet tokenizer.
FreqTable count_slice(const corpus::CorpusSlice& slice);

// T: reference token total, F: term count in reference,
// t: subcorpus token total, f: term count in subcorpus.
struct SpecificityQuery {
    std::uint64_t T = 0;
    std::uint64_t F = 0;
    std::uint64_t t = 0;
    std::uint64_t f = 0;
};

// log P(X >= f) for X ~ Hypergeometric(T, F, t). Evaluated entirely in log
// space (log-gamma for the first term, a multiplicative recurrence for the
// rest), so it stays usable where the plain tail underflows double range.
// Throws std::invalid_argument when the query invariants are violated.
double log_hypergeom_tail(const SpecificityQuery& q);

double hypergeom_tail(const SpecificityQuery& q);

// Lexical specificity: -log10 of the upper tail. 0 when f = 0.
double specificity_score(const SpecificityQuery& q);

// Throws std::invalid_argument when the term occurs in sub but not in ref,
// or when sub is not a sub-collection of ref.
double specificity(const FreqTable& ref, const FreqTable& sub, const std::string& term);

struct SpecificityRow {
    std::string term;
    std::uint64_t sub_count = 0;  // f
    std::uint64_t ref_count = 0;  // F
    double score = 0.0;
};

// Every subcorpus term scored, optionally filtered to a wordlist, top k by
// score (ties by term ascending). Fewer than k candidates yields a shorter
// table.
std::vector<SpecificityRow> top_terms(const FreqTable& ref, const FreqTable& sub,
                                      std::size_t k,
                                      const std::unordered_set<std::string>* wordlist = nullptr);

// Newline-delimited token file; blank lines skipped, tokens lowercased.
std::unordered_set<std::string> load_wordlist(const std::string& path);

}  // namespace geolex::lex
