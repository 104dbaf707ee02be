#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "geolex/corpus.hpp"
#include "geolex/geolabel.hpp"
#include "geolex/synth.hpp"
#include "test_util.hpp"

using namespace geolex;
using test_util::TempDir;

TEST_CASE("the tweet generator is deterministic in the seed") {
    synth::TweetCorpusParams params;
    params.seed = 5;
    params.records = 300;
    const auto first = synth::make_tweet_corpus(params);
    const auto second = synth::make_tweet_corpus(params);
    REQUIRE(first.size() == 300);
    CHECK(first == second);

    params.seed = 6;
    const auto reseeded = synth::make_tweet_corpus(params);
    CHECK(first != reseeded);

    std::set<std::string> ids;
    for (const auto& rec : first) ids.insert(rec.id);
    CHECK(ids.size() == first.size());
}

TEST_CASE("generated corpus composition stays near the configured mix") {
    synth::TweetCorpusParams params;  // seed 42, 10000 records
    const auto records = synth::make_tweet_corpus(params);
    REQUIRE(records.size() == 10000);

    std::size_t en = 0, es = 0, fr = 0, geotagged = 0, in_period = 0;
    const auto period_2019 = corpus::parse_date_range("2019-04-17:2019-06-30");
    const auto period_2020 = corpus::parse_date_range("2020-04-17:2020-06-30");
    for (const auto& rec : records) {
        if (rec.lang == "en") ++en;
        else if (rec.lang == "es") ++es;
        else if (rec.lang == "fr") ++fr;
        if (rec.country_code) {
            ++geotagged;
            CHECK(geo::classify_code(*rec.country_code).has_value());
        }
        if (period_2019.contains(rec.created_at) || period_2020.contains(rec.created_at))
            ++in_period;
    }
    CHECK(en + es + fr == records.size());
    CHECK(en > 4600);
    CHECK(en < 5400);
    CHECK(es > 2100);
    CHECK(es < 2900);
    CHECK(fr > 2100);
    CHECK(fr < 2900);
    CHECK(geotagged > 3100);
    CHECK(geotagged < 3900);
    CHECK(in_period > 9300);   // 95% nominal
    CHECK(in_period < 10000);  // straddling noise must exist

    // both label classes appear among the geotags
    std::size_t european = 0;
    for (const auto& rec : records) {
        if (rec.country_code && geo::classify_code(*rec.country_code) == Region::European)
            ++european;
    }
    CHECK(european > geotagged / 3);
    CHECK(european < 2 * geotagged / 3);
}

TEST_CASE("planted material shows up at usable rates") {
    synth::TweetCorpusParams params;
    const auto records = synth::make_tweet_corpus(params);

    std::size_t with_term = 0, with_url = 0, with_rt = 0, new_york = 0, laboratory = 0;
    const auto en_terms = corpus::builtin_term_list("en");
    const auto es_terms = corpus::builtin_term_list("es");
    const auto fr_terms = corpus::builtin_term_list("fr");
    for (const auto& rec : records) {
        const auto& terms = rec.lang == "en"   ? en_terms
                            : rec.lang == "es" ? es_terms
                                               : fr_terms;
        for (const auto& term : terms.terms) {
            if (corpus::contains_term(rec.text, term)) {
                ++with_term;
                break;
            }
        }
        if (rec.text.find("https://t.co/") != std::string::npos) ++with_url;
        if (rec.text.rfind("RT @", 0) == 0) ++with_rt;
        if (corpus::contains_term(rec.text, "new york")) ++new_york;
        if (corpus::contains_term(rec.text, "laboratory")) ++laboratory;
    }
    CHECK(with_term > 7600);  // 80% nominal
    CHECK(with_term < 8600);
    CHECK(with_url > 2600);  // 30% nominal
    CHECK(with_url < 3400);
    CHECK(with_rt > 1700);  // 20% nominal
    CHECK(with_rt < 2300);
    CHECK(new_york > 250);  // 8% of the English half
    CHECK(laboratory > 250);
}

TEST_CASE("jsonl output ingests back to the identical records") {
    TempDir dir;
    synth::TweetCorpusParams params;
    params.seed = 9;
    params.records = 200;
    const auto records = synth::make_tweet_corpus(params);

    const auto path = dir.file("corpus.jsonl");
    synth::write_jsonl(records, path);
    const auto result = corpus::ingest_records(path, {});
    CHECK(result.stats.lines_read == 200);
    CHECK(result.stats.kept == 200);
    CHECK(result.stats.skipped_malformed == 0);
    REQUIRE(result.slice.records.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(result.slice.records[i] == records[i]);
    }
}

TEST_CASE("separable profiles are balanced, geotagged, and class-exclusive") {
    const auto records = synth::make_separable_profiles(11, 500);
    REQUIRE(records.size() == 500);

    std::unordered_set<std::string> eu_locations, non_eu_locations;
    std::size_t european = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        REQUIRE(rec.country_code.has_value());
        const auto gold = geo::assign_region_label(rec);
        REQUIRE(gold.has_value());
        CHECK(*gold == (i % 2 == 0 ? Region::European : Region::NonEuropean));
        if (*gold == Region::European) {
            ++european;
            eu_locations.insert(rec.user_location);
        } else {
            non_eu_locations.insert(rec.user_location);
        }
        CHECK_FALSE(rec.user_location.empty());
    }
    CHECK(european == 250);
    for (const auto& loc : eu_locations) CHECK(non_eu_locations.count(loc) == 0);
}

TEST_CASE("topic corpus sentences never mix the two vocabularies") {
    const auto corpus = synth::make_topic_corpus(4, 100);
    REQUIRE(corpus.sequences.size() == 100);
    CHECK(corpus.topic_a.size() == 20);
    CHECK(corpus.topic_b.size() == 20);

    const std::unordered_set<std::string> set_a(corpus.topic_a.begin(), corpus.topic_a.end());
    const std::unordered_set<std::string> set_b(corpus.topic_b.begin(), corpus.topic_b.end());
    for (const auto& word : set_a) CHECK(set_b.count(word) == 0);

    for (const auto& sentence : corpus.sequences) {
        CHECK(sentence.size() >= 10);
        CHECK(sentence.size() <= 14);
        const bool first_in_a = set_a.count(sentence.front()) == 1;
        for (const auto& word : sentence) {
            CHECK((first_in_a ? set_a : set_b).count(word) == 1);
        }
    }
}

TEST_CASE("relation corpus pairs each city with its country") {
    const auto corpus = synth::make_relation_corpus(4, 50);
    REQUIRE(corpus.pairs.size() == 8);
    CHECK(corpus.sequences.size() == 8 * 2 * 50);

    std::unordered_set<std::string> heads;
    for (const auto& [city, country] : corpus.pairs) {
        heads.insert(city);
        heads.insert(country);
    }
    CHECK(heads.size() == 16);
    for (const auto& sentence : corpus.sequences) {
        REQUIRE(sentence.size() == 4);
        CHECK(heads.count(sentence.front()) == 1);
    }
}
