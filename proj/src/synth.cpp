#include "geolex/synth.hpp"

#include <array>
#include <chrono>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "geolex/rng.hpp"

namespace geolex::synth {

namespace {

using rng::Rng;

template <std::size_t N>
const char* pick(Rng& rng, const std::array<const char*, N>& pool) {
    return pool[static_cast<std::size_t>(rng.next_below(N))];
}

// Everyday vocabulary per language. "new" and "york" appear only through
// the planted collocation below, never on their own.
const std::array<const char*, 28> kEnBase = {
    "the",     "media",   "report",  "story",    "people",  "today",   "truth",   "claims",
    "evidence","article", "watch",   "read",     "share",   "public",  "press",   "sources",
    "channel", "network", "campaign","statement","coverage","facts",   "agenda",  "narrative",
    "headline","broadcast","журналист","breaking"};
const std::array<const char*, 24> kEsBase = {
    "los",      "medios",   "noticia",  "historia", "gente",    "hoy",     "verdad",  "afirma",
    "evidencia","artículo", "mira",     "lee",      "comparte", "público", "prensa",  "fuentes",
    "canal",    "cadena",   "campaña",  "cobertura","hechos",   "agenda",  "titular", "según"};
const std::array<const char*, 24> kFrBase = {
    "les",      "médias",  "rapport",  "histoire", "gens",     "aujourdhui", "vérité", "affirme",
    "preuve",   "article", "regarde",  "lis",      "partage",  "public",     "presse", "sources",
    "chaîne",   "réseau",  "campagne", "couverture","faits",    "agenda",     "titre",  "selon"};

const std::array<const char*, 8> kYear2019En = {"brexit",   "election", "parliament", "borders",
                                                "referendum","tariffs",  "summit",     "protests"};
const std::array<const char*, 8> kYear2020En = {"pandemic", "virus",   "lockdown", "vaccine",
                                                "masks",    "quarantine","5g",      "outbreak"};
const std::array<const char*, 8> kYear2019Es = {"elecciones", "parlamento", "frontera", "cumbre",
                                                "protestas",  "huelga",     "tratado",  "censura"};
const std::array<const char*, 8> kYear2020Es = {"pandemia",   "virus",      "cuarentena", "vacuna",
                                                "mascarillas","confinamiento","5g",       "brote"};
const std::array<const char*, 8> kYear2019Fr = {"élections", "parlement", "frontière", "sommet",
                                                "grève",     "manifestation","traité",  "censure"};
const std::array<const char*, 8> kYear2020Fr = {"pandémie",  "virus",     "confinement", "vaccin",
                                                "masques",   "quarantaine","5g",          "épidémie"};

const std::array<const char*, 6> kRegionEu = {"europe", "bruxelles", "union", "continent", "euro", "schengen"};
const std::array<const char*, 6> kRegionNonEu = {"washington", "congress", "dollar", "overseas", "federal", "states"};

const std::array<const char*, 5> kLab2019 = {"furniture", "equipment", "microscope", "samples", "chemistry"};
const std::array<const char*, 5> kLab2020 = {"wuhan", "lab", "leak", "scientists", "origin"};

const std::array<const char*, 10> kLocEu = {"London",  "Paris, France", "Berlin",   "Madrid", "Roma",
                                            "Wien",    "Stockholm",     "Warszawa", "Lisboa", "Dublin"};
const std::array<const char*, 10> kLocNonEu = {"New York, USA", "Texas",  "Boston MA", "Toronto",
                                               "São Paulo",     "Sydney", "Mumbai",    "Chicago",
                                               "Buenos Aires",  "Tokyo"};

const std::array<const char*, 8> kDescEu = {"european", "londoner", "parisian", "berliner",
                                            "eu",       "erasmus",  "remainer", "continental"};
const std::array<const char*, 8> kDescNonEu = {"american", "texan",   "yankee", "canadian",
                                               "aussie",   "patriot", "liberty", "homeland"};
const std::array<const char*, 12> kDescNeutral = {"writer", "parent",   "coffee", "music",
                                                  "opinions","own",     "retweets","endorsement",
                                                  "politics","news",    "lover",  "fan"};

const std::array<const char*, 10> kCodesEu = {"GB", "FR", "DE", "ES", "IT", "SE", "PL", "NL", "IE", "PT"};
const std::array<const char*, 8> kCodesNonEu = {"US", "CA", "BR", "AU", "IN", "JP", "MX", "AR"};

corpus::Timestamp period_timestamp(Rng& rng, int year, bool in_period) {
    using namespace std::chrono;
    const sys_days anchor = sys_days{std::chrono::year{year} / April / 17};
    long long day_offset;
    if (in_period) {
        day_offset = static_cast<long long>(rng.next_below(75));  // Apr 17 .. Jun 30
    } else {
        const auto off = static_cast<long long>(rng.next_below(80));
        day_offset = off < 40 ? off - 40 : 75 + (off - 40);  // straddles the period
    }
    const auto second = static_cast<long long>(rng.next_below(86400));
    return sys_seconds{anchor + days{day_offset} + seconds{second}};
}

std::vector<std::string> term_pool(const std::string& lang) {
    const auto list = corpus::builtin_term_list(lang);
    return {list.terms.begin(), list.terms.end()};
}

void append_words(std::string& text, const std::string& words) {
    if (!text.empty()) text += ' ';
    text += words;
}

// Inserts `words` (split on single spaces) as a contiguous run at a random
// position, so multi-word terms stay matchable on word boundaries.
void insert_run(Rng& rng, std::vector<std::string>& sentence, const std::string& words) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t space = words.find(' ', start);
        if (space == std::string::npos) {
            parts.push_back(words.substr(start));
            break;
        }
        parts.push_back(words.substr(start, space - start));
        start = space + 1;
    }
    const auto at = static_cast<std::size_t>(rng.next_below(sentence.size() + 1));
    sentence.insert(sentence.begin() + static_cast<std::ptrdiff_t>(at), parts.begin(), parts.end());
}

}  // namespace

std::vector<corpus::TweetRecord> make_tweet_corpus(const TweetCorpusParams& params) {
    Rng rng(params.seed);
    const std::array<std::vector<std::string>, 3> terms = {term_pool("en"), term_pool("es"),
                                                           term_pool("fr")};

    std::vector<corpus::TweetRecord> records;
    records.reserve(params.records);
    for (std::size_t i = 0; i < params.records; ++i) {
        corpus::TweetRecord rec;
        rec.id = std::to_string(900000000ULL + i);

        const std::uint64_t lang_draw = rng.next_below(4);
        const std::size_t lang_idx = lang_draw < 2 ? 0 : (lang_draw == 2 ? 1 : 2);
        rec.lang = lang_idx == 0 ? "en" : (lang_idx == 1 ? "es" : "fr");

        const int year = rng.next_below(2) == 0 ? 2019 : 2020;
        const bool in_period = rng.next_below(100) < 95;
        rec.created_at = period_timestamp(rng, year, in_period);

        const bool european = rng.next_below(2) == 0;

        std::vector<std::string> sentence;
        const std::size_t base_words = 6 + static_cast<std::size_t>(rng.next_below(6));
        sentence.reserve(base_words + 8);
        for (std::size_t w = 0; w < base_words; ++w) {
            const char* word;
            const std::uint64_t kind = rng.next_below(10);
            if (kind < 6) {
                word = lang_idx == 0 ? pick(rng, kEnBase) : lang_idx == 1 ? pick(rng, kEsBase)
                                                                          : pick(rng, kFrBase);
            } else if (kind < 8) {
                if (lang_idx == 0) word = year == 2019 ? pick(rng, kYear2019En) : pick(rng, kYear2020En);
                else if (lang_idx == 1) word = year == 2019 ? pick(rng, kYear2019Es) : pick(rng, kYear2020Es);
                else word = year == 2019 ? pick(rng, kYear2019Fr) : pick(rng, kYear2020Fr);
            } else {
                word = european ? pick(rng, kRegionEu) : pick(rng, kRegionNonEu);
            }
            sentence.emplace_back(word);
        }

        if (rng.next_below(100) < 80) {
            const auto& pool = terms[lang_idx];
            insert_run(rng, sentence, pool[static_cast<std::size_t>(rng.next_below(pool.size()))]);
        }
        if (lang_idx == 0) {
            if (rng.next_below(100) < 8) insert_run(rng, sentence, "new york");
            if (year == 2020 && rng.next_below(100) < 10) insert_run(rng, sentence, "bill gates");
            if (rng.next_below(100) < 8) {
                // Context words land at independent positions: the shift is
                // a co-occurrence signal, never a fixed collocation.
                insert_run(rng, sentence, "laboratory");
                for (int w = 0; w < 3; ++w)
                    insert_run(rng, sentence,
                               year == 2019 ? pick(rng, kLab2019) : pick(rng, kLab2020));
            }
        }

        std::string text;
        for (const auto& word : sentence) append_words(text, word);
        if (rng.next_below(100) < 30) {
            std::string token = "https://t.co/";
            for (int c = 0; c < 8; ++c)
                token += "abcdefghijklmnopqrstuvwxyz0123456789"[rng.next_below(36)];
            append_words(text, token);
        }
        if (rng.next_below(100) < 30 && !text.empty() && text[0] >= 'a' && text[0] <= 'z')
            text[0] = static_cast<char>(text[0] - 0x20);
        if (rng.next_below(100) < 20)
            text = "RT @u" + std::to_string(rng.next_below(10000)) + ": " + text;
        rec.text = std::move(text);

        if (rng.next_below(100) < 85)
            rec.user_location = european ? pick(rng, kLocEu) : pick(rng, kLocNonEu);
        if (rng.next_below(100) < 90) {
            std::string desc;
            const std::size_t n_neutral = 2 + static_cast<std::size_t>(rng.next_below(3));
            for (std::size_t w = 0; w < n_neutral; ++w) append_words(desc, pick(rng, kDescNeutral));
            if (rng.next_below(100) < 80)
                append_words(desc, european ? pick(rng, kDescEu) : pick(rng, kDescNonEu));
            rec.user_description = std::move(desc);
        }
        if (rng.next_below(100) < 35)
            rec.country_code = european ? pick(rng, kCodesEu) : pick(rng, kCodesNonEu);

        records.push_back(std::move(rec));
    }
    return records;
}

void write_jsonl(const std::vector<corpus::TweetRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& rec : records) {
        nlohmann::json line{
            {"id", rec.id},
            {"full_text", rec.text},
            {"lang", rec.lang},
            {"created_at", corpus::format_timestamp(rec.created_at)},
            {"user", {{"location", rec.user_location}, {"description", rec.user_description}}},
        };
        if (rec.country_code) line["place"] = {{"country_code", *rec.country_code}};
        out << line.dump() << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<corpus::TweetRecord> make_separable_profiles(std::uint64_t seed, std::size_t count) {
    static const std::array<const char*, 8> kLocTokensEu = {"london", "paris",  "berlin", "madrid",
                                                            "roma",   "wien",   "lisboa", "dublin"};
    static const std::array<const char*, 8> kLocTokensNonEu = {"texas",  "boston", "toronto", "sydney",
                                                               "mumbai", "chicago","denver",  "seattle"};
    Rng rng(seed);
    std::vector<corpus::TweetRecord> records;
    records.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const bool european = i % 2 == 0;
        corpus::TweetRecord rec;
        rec.id = "p" + std::to_string(i);
        rec.lang = "en";
        rec.text = "hello world";
        rec.created_at = period_timestamp(rng, 2019, true);
        rec.user_location = european ? pick(rng, kLocTokensEu) : pick(rng, kLocTokensNonEu);
        std::string desc;
        const std::size_t n_neutral = 2 + static_cast<std::size_t>(rng.next_below(3));
        for (std::size_t w = 0; w < n_neutral; ++w) append_words(desc, pick(rng, kDescNeutral));
        if (rng.next_below(100) < 60)
            append_words(desc, european ? pick(rng, kDescEu) : pick(rng, kDescNonEu));
        rec.user_description = std::move(desc);
        rec.country_code = european ? pick(rng, kCodesEu) : pick(rng, kCodesNonEu);
        records.push_back(std::move(rec));
    }
    return records;
}

TopicCorpus make_topic_corpus(std::uint64_t seed, std::size_t sentences) {
    static const std::array<const char*, 20> kTopicA = {
        "telescope", "nebula",  "galaxy",  "orbit",   "comet",  "photon", "quasar",  "eclipse",
        "lunar",     "stellar", "cosmic",  "planet",  "meteor", "gravity","spectrum","aurora",
        "zenith",    "pulsar",  "horizon", "redshift"};
    static const std::array<const char*, 20> kTopicB = {
        "recipe", "flour",   "butter",  "oven",    "simmer", "garlic", "onion",   "pepper",
        "basil",  "roast",   "dough",   "yeast",   "vinegar","skillet","braise",  "marinade",
        "zest",   "caramel", "saucepan","whisk"};

    Rng rng(seed);
    TopicCorpus out;
    out.topic_a.assign(kTopicA.begin(), kTopicA.end());
    out.topic_b.assign(kTopicB.begin(), kTopicB.end());
    out.sequences.reserve(sentences);
    for (std::size_t i = 0; i < sentences; ++i) {
        const bool topic_a = i % 2 == 0;
        const std::size_t length = 10 + static_cast<std::size_t>(rng.next_below(5));
        std::vector<std::string> sentence;
        sentence.reserve(length);
        for (std::size_t w = 0; w < length; ++w)
            sentence.push_back(topic_a ? pick(rng, kTopicA) : pick(rng, kTopicB));
        out.sequences.push_back(std::move(sentence));
    }
    return out;
}

RelationCorpus make_relation_corpus(std::uint64_t seed, std::size_t sentences_per_relation) {
    struct Relation {
        const char* city;
        const char* country;
        std::array<const char*, 4> themes;
    };
    static const std::array<Relation, 8> kRelations = {{
        {"paris", "france", {"seine", "louvre", "baguette", "champagne"}},
        {"london", "britain", {"thames", "westminster", "tea", "pound"}},
        {"berlin", "germany", {"rhine", "bavaria", "pretzel", "autobahn"}},
        {"madrid", "spain", {"flamenco", "tapas", "prado", "siesta"}},
        {"rome", "italy", {"colosseum", "pasta", "opera", "espresso"}},
        {"moscow", "russia", {"volga", "kremlin", "ballet", "samovar"}},
        {"vienna", "austria", {"danube", "waltz", "schnitzel", "alps"}},
        {"athens", "greece", {"aegean", "olive", "acropolis", "mythos"}},
    }};
    static const std::array<const char*, 6> kCityClass = {"city",     "mayor", "streets",
                                                          "downtown", "metro", "boulevard"};
    static const std::array<const char*, 6> kCountryClass = {"nation",  "borders",  "anthem",
                                                             "republic","flag",     "minister"};

    Rng rng(seed);
    RelationCorpus out;
    out.sequences.reserve(kRelations.size() * sentences_per_relation * 2);
    for (const auto& rel : kRelations) out.pairs.emplace_back(rel.city, rel.country);

    // Interleaved across relations so early-training lr is not spent on a
    // single relation.
    for (std::size_t s = 0; s < sentences_per_relation; ++s) {
        for (const auto& rel : kRelations) {
            const auto theme = [&] { return rel.themes[rng.next_below(4)]; };
            out.sequences.push_back({rel.city, theme(), pick(rng, kCityClass), theme()});
            out.sequences.push_back({rel.country, theme(), pick(rng, kCountryClass), theme()});
        }
    }
    return out;
}

}  // namespace geolex::synth
