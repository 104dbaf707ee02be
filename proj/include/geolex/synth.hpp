#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geolex/corpus.hpp"

namespace geolex::synth {

// Deterministic fake-tweet corpus exercising every pipeline stage: three
// languages, two collection periods plus out-of-period noise, geotags on a
// ~35% subset, retweet markers, URLs, planted collocations ("new york",
// "bill gates") and a year-dependent context shift for "laboratory".
struct TweetCorpusParams {
    std::uint64_t seed = 42;
    std::size_t records = 10000;
};

std::vector<corpus::TweetRecord> make_tweet_corpus(const TweetCorpusParams& params);

// Writes records in the ingest JSONL shape (full_text, user.location,
// user.description, place.country_code).
void write_jsonl(const std::vector<corpus::TweetRecord>& records, const std::string& path);

// Balanced, cleanly separable classifier corpus: every record is geotagged
// and carries a class-exclusive location token.
std::vector<corpus::TweetRecord> make_separable_profiles(std::uint64_t seed, std::size_t count);

// Two fully disjoint topic vocabularies, one topic per sentence.
struct TopicCorpus {
    std::vector<std::vector<std::string>> sequences;
    std::vector<std::string> topic_a;
    std::vector<std::string> topic_b;
};

TopicCorpus make_topic_corpus(std::uint64_t seed, std::size_t sentences = 4200);

// Eight (city, country) pairs with per-pair theme words and shared
// city-class / country-class words, so v(city) - v(country) is roughly the
// same direction for every pair and 3CosAdd can recover held-out terms.
struct RelationCorpus {
    std::vector<std::vector<std::string>> sequences;
    std::vector<std::pair<std::string, std::string>> pairs;
};

RelationCorpus make_relation_corpus(std::uint64_t seed, std::size_t sentences_per_relation = 400);

}  // namespace geolex::synth
