#include "geolex/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "geolex/text.hpp"

namespace geolex::corpus {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

bool parse_fixed_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

}  // namespace

std::optional<Date> parse_date(std::string_view s) {
    int y = 0, m = 0, d = 0;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_fixed_int(s, 0, 4, y) || !parse_fixed_int(s, 5, 2, m) ||
        !parse_fixed_int(s, 8, 2, d)) {
        return std::nullopt;
    }
    const Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

std::optional<Timestamp> parse_timestamp(std::string_view s) {
    if (s.size() < 10) return std::nullopt;
    const auto date = parse_date(s.substr(0, 10));
    if (!date) return std::nullopt;
    auto t = Timestamp{std::chrono::sys_days{*date}};
    if (s.size() == 10) return t;

    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    int hh = 0, mm = 0, ss = 0;
    if (s.size() < 19 || s[13] != ':' || s[16] != ':') return std::nullopt;
    if (!parse_fixed_int(s, 11, 2, hh) || !parse_fixed_int(s, 14, 2, mm) ||
        !parse_fixed_int(s, 17, 2, ss)) {
        return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
    const auto rest = s.substr(19);
    if (!rest.empty() && rest != "Z" && rest != "+00:00") return std::nullopt;
    t += std::chrono::hours{hh} + std::chrono::minutes{mm} + std::chrono::seconds{ss};
    return t;
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::string format_timestamp(Timestamp t) {
    const auto days = std::chrono::floor<std::chrono::days>(t);
    const Date ymd{days};
    auto rest = std::chrono::duration_cast<std::chrono::seconds>(t - days).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02lld:%02lld:%02lldZ", format_date(ymd).c_str(),
                  static_cast<long long>(rest / 3600),
                  static_cast<long long>(rest / 60 % 60),
                  static_cast<long long>(rest % 60));
    return buf;
}

bool DateRange::contains(Timestamp t) const {
    const auto day = std::chrono::floor<std::chrono::days>(t);
    return day >= std::chrono::sys_days{start} && day <= std::chrono::sys_days{end};
}

bool DateRange::overlaps(const DateRange& other) const {
    return std::chrono::sys_days{start} <= std::chrono::sys_days{other.end} &&
           std::chrono::sys_days{other.start} <= std::chrono::sys_days{end};
}

DateRange parse_date_range(std::string_view s) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("date range must be start:end, got '" + std::string(s) + "'");
    }
    const auto start = parse_date(s.substr(0, colon));
    const auto end = parse_date(s.substr(colon + 1));
    if (!start || !end) {
        throw std::invalid_argument("invalid date in range '" + std::string(s) + "'");
    }
    if (std::chrono::sys_days{*start} > std::chrono::sys_days{*end}) {
        throw std::invalid_argument("inverted date range '" + std::string(s) + "'");
    }
    return DateRange{*start, *end};
}

namespace {

// Junk geolocation values (wrong length, non-letters) are dropped rather
// than failing the record; the record stays usable for everything except
// gold labeling.
std::optional<std::string> normalize_country_code(std::string_view raw) {
    std::string code;
    for (char c : raw) {
        if (c == ' ' || c == '\t') continue;
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 0x20);
        code.push_back(c);
    }
    if (code.size() != 2 || code[0] < 'A' || code[0] > 'Z' || code[1] < 'A' || code[1] > 'Z') {
        return std::nullopt;
    }
    return code;
}

const json* find_string(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return nullptr;
    return &*it;
}

// Returns nullopt when the line is not a usable record.
std::optional<TweetRecord> parse_record_line(const std::string& line) {
    const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!j.is_object()) return std::nullopt;

    TweetRecord rec;
    if (const auto it = j.find("id"); it != j.end()) {
        if (it->is_string()) {
            rec.id = it->get<std::string>();
        } else if (it->is_number_integer()) {
            rec.id = std::to_string(it->get<std::int64_t>());
        }
    }
    if (rec.id.empty()) return std::nullopt;

    if (const auto* s = find_string(j, "full_text")) {
        rec.text = s->get<std::string>();
    } else if (const auto* s2 = find_string(j, "text")) {
        rec.text = s2->get<std::string>();
    }

    if (const auto* s = find_string(j, "lang")) rec.lang = s->get<std::string>();
    if (rec.lang.empty()) return std::nullopt;

    const auto* created = find_string(j, "created_at");
    if (!created) return std::nullopt;
    const auto ts = parse_timestamp(created->get<std::string>());
    if (!ts) return std::nullopt;
    rec.created_at = *ts;

    if (const auto user = j.find("user"); user != j.end() && user->is_object()) {
        if (const auto* s = find_string(*user, "location")) rec.user_location = s->get<std::string>();
        if (const auto* s = find_string(*user, "description")) rec.user_description = s->get<std::string>();
    }
    if (const auto place = j.find("place"); place != j.end() && place->is_object()) {
        if (const auto* s = find_string(*place, "country_code")) {
            rec.country_code = normalize_country_code(s->get<std::string>());
        }
    }
    if (const auto* s = find_string(j, "region")) {
        rec.region = region_from_string(s->get<std::string>());
    }
    return rec;
}

json record_to_json(const TweetRecord& rec) {
    json j;
    j["id"] = rec.id;
    j["full_text"] = rec.text;
    j["lang"] = rec.lang;
    j["created_at"] = format_timestamp(rec.created_at);
    j["user"] = {{"location", rec.user_location}, {"description", rec.user_description}};
    if (rec.country_code) j["place"] = {{"country_code", *rec.country_code}};
    if (rec.region) j["region"] = std::string(to_string(*rec.region));
    return j;
}

}  // namespace

IngestResult ingest_records(const std::string& path,
                            const std::set<std::string>& lang_allowlist) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);

    IngestResult out;
    out.slice.name = fs::path(path).stem().string();
    if (lang_allowlist.size() == 1) out.slice.language = *lang_allowlist.begin();

    std::string line;
    while (std::getline(in, line)) {
        ++out.stats.lines_read;
        auto rec = parse_record_line(line);
        if (!rec) {
            ++out.stats.skipped_malformed;
            continue;
        }
        if (!lang_allowlist.empty() && !lang_allowlist.count(rec->lang)) {
            ++out.stats.skipped_language;
            continue;
        }
        ++out.stats.kept;
        out.slice.records.push_back(std::move(*rec));
    }
    return out;
}

IngestResult ingest_files(const std::vector<std::string>& paths,
                          const std::set<std::string>& lang_allowlist,
                          unsigned threads) {
    std::vector<IngestResult> parts(paths.size());
    if (threads <= 1 || paths.size() <= 1) {
        for (std::size_t i = 0; i < paths.size(); ++i) {
            parts[i] = ingest_records(paths[i], lang_allowlist);
        }
    } else {
        std::vector<std::future<IngestResult>> futures;
        futures.reserve(paths.size());
        for (const auto& p : paths) {
            futures.push_back(std::async(std::launch::async, ingest_records, p, lang_allowlist));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) parts[i] = futures[i].get();
    }

    IngestResult merged;
    if (lang_allowlist.size() == 1) merged.slice.language = *lang_allowlist.begin();
    if (!paths.empty()) merged.slice.name = fs::path(paths.front()).stem().string();
    for (auto& part : parts) {
        merged.stats += part.stats;
        auto& dst = merged.slice.records;
        dst.insert(dst.end(), std::make_move_iterator(part.slice.records.begin()),
                   std::make_move_iterator(part.slice.records.end()));
    }
    return merged;
}

namespace {

bool is_word_char(char32_t cp) {
    return text::is_latin_letter(cp) || text::is_ascii_digit(cp) || cp == '_';
}

bool is_space(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v';
}

// Lowercase codepoints with whitespace runs collapsed to single spaces.
std::u32string normalize_for_matching(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    bool pending_space = false;
    while (i < s.size()) {
        const char32_t cp = text::decode_utf8(s, i);
        if (is_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(text::to_lower(cp));
    }
    return out;
}

bool contains_normalized_term(const std::u32string& hay, const std::u32string& needle) {
    if (needle.empty() || needle.size() > hay.size()) return false;
    for (std::size_t pos = 0; pos + needle.size() <= hay.size(); ++pos) {
        if (hay.compare(pos, needle.size(), needle) != 0) continue;
        const bool left_ok = pos == 0 || !is_word_char(hay[pos - 1]);
        const std::size_t end = pos + needle.size();
        const bool right_ok = end == hay.size() || !is_word_char(hay[end]);
        if (left_ok && right_ok) return true;
    }
    return false;
}

}  // namespace

bool contains_term(std::string_view txt, std::string_view term) {
    return contains_normalized_term(normalize_for_matching(txt), normalize_for_matching(term));
}

CorpusSlice filter_disinfo_terms(const CorpusSlice& slice, const TermList& terms) {
    if (terms.terms.empty()) {
        throw std::invalid_argument("term list is empty; filtering would drop every record");
    }
    if (slice.language != terms.language) {
        throw std::invalid_argument("term list language '" + terms.language +
                                    "' does not match slice language '" + slice.language + "'");
    }
    std::vector<std::u32string> needles;
    needles.reserve(terms.terms.size());
    for (const auto& t : terms.terms) needles.push_back(normalize_for_matching(t));

    CorpusSlice out = slice;
    out.records.clear();
    for (const auto& rec : slice.records) {
        const auto hay = normalize_for_matching(rec.text);
        for (const auto& needle : needles) {
            if (contains_normalized_term(hay, needle)) {
                out.records.push_back(rec);
                break;
            }
        }
    }
    return out;
}

PartitionResult partition_corpus(const CorpusSlice& slice,
                                 const std::vector<DateRange>& periods) {
    for (std::size_t i = 0; i < periods.size(); ++i) {
        for (std::size_t j = i + 1; j < periods.size(); ++j) {
            if (periods[i].overlaps(periods[j])) {
                throw std::invalid_argument("periods overlap: " + format_date(periods[i].start) +
                                            ":" + format_date(periods[i].end) + " and " +
                                            format_date(periods[j].start) + ":" +
                                            format_date(periods[j].end));
            }
        }
    }

    PartitionResult out;
    out.slices.reserve(periods.size());
    for (const auto& p : periods) {
        CorpusSlice s;
        s.name = slice.name + "-" + format_date(p.start) + ":" + format_date(p.end);
        s.language = slice.language;
        s.region = slice.region;
        s.period = p;
        out.slices.push_back(std::move(s));
    }
    for (const auto& rec : slice.records) {
        bool assigned = false;
        for (std::size_t i = 0; i < periods.size(); ++i) {
            if (periods[i].contains(rec.created_at)) {
                out.slices[i].records.push_back(rec);
                assigned = true;
                break;
            }
        }
        if (!assigned) ++out.dropped;
    }
    return out;
}

namespace {

const TermList kEnglishTerms{
    "en",
    {"active measures", "conspiracy", "deceive", "deep state", "disinformation",
     "fabrication", "fake news", "influence", "interference", "manipulate",
     "misinformation", "propaganda", "subversion"}};

const TermList kSpanishTerms{
    "es",
    {"medidas activas", "conspiración", "engañar", "estado profundo", "desinformación",
     "invención", "noticias falsas", "influencia", "interferencia", "manipular",
     "propaganda", "subversión"}};

const TermList kFrenchTerms{
    "fr",
    {"mesures actives", "complot", "tromper", "état profond", "désinformation",
     "invention", "fausse nouvelle", "influence", "ingérence", "manipuler",
     "propagande", "subversion"}};

}  // namespace

TermList builtin_term_list(const std::string& language) {
    if (language == "en") return kEnglishTerms;
    if (language == "es") return kSpanishTerms;
    if (language == "fr") return kFrenchTerms;
    throw std::invalid_argument("no builtin term list for language '" + language + "'");
}

TermList load_term_list(const std::string& path, std::string language) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open term list: " + path);
    TermList out;
    out.language = std::move(language);
    std::string line;
    while (std::getline(in, line)) {
        // normalize: lowercase, collapse internal whitespace, trim
        const auto norm = normalize_for_matching(line);
        std::u32string trimmed = norm;
        while (!trimmed.empty() && trimmed.back() == U' ') trimmed.pop_back();
        while (!trimmed.empty() && trimmed.front() == U' ') trimmed.erase(trimmed.begin());
        if (trimmed.empty()) continue;
        out.terms.insert(text::encode(trimmed));
    }
    if (out.terms.empty()) throw std::runtime_error("term list is empty: " + path);
    return out;
}

void save_slice(const CorpusSlice& slice, const std::string& path) {
    std::ofstream data(path);
    if (!data) throw std::runtime_error("cannot write slice file: " + path);
    for (const auto& rec : slice.records) data << record_to_json(rec).dump() << '\n';
    data.close();
    if (!data) throw std::runtime_error("failed writing slice file: " + path);

    json meta;
    meta["name"] = slice.name;
    meta["language"] = slice.language;
    if (slice.period) {
        meta["period"] = {{"start", format_date(slice.period->start)},
                          {"end", format_date(slice.period->end)}};
    } else {
        meta["period"] = nullptr;
    }
    meta["region"] = slice.region ? json(std::string(to_string(*slice.region))) : json(nullptr);
    meta["records"] = slice.records.size();

    std::ofstream hdr(path + ".meta");
    if (!hdr) throw std::runtime_error("cannot write slice header: " + path + ".meta");
    hdr << meta.dump(2) << '\n';
}

CorpusSlice load_slice(const std::string& path) {
    std::ifstream hdr(path + ".meta");
    if (!hdr) throw std::runtime_error("cannot open slice header: " + path + ".meta");
    json meta = json::parse(hdr, nullptr, /*allow_exceptions=*/false);
    if (!meta.is_object()) throw std::runtime_error("malformed slice header: " + path + ".meta");

    CorpusSlice slice;
    slice.name = meta.value("name", "");
    slice.language = meta.value("language", "");
    if (const auto p = meta.find("period"); p != meta.end() && p->is_object()) {
        const auto start = parse_date(p->value("start", ""));
        const auto end = parse_date(p->value("end", ""));
        if (!start || !end) throw std::runtime_error("malformed period in slice header: " + path);
        slice.period = DateRange{*start, *end};
    }
    if (const auto r = meta.find("region"); r != meta.end() && r->is_string()) {
        slice.region = region_from_string(r->get<std::string>());
    }

    std::ifstream data(path);
    if (!data) throw std::runtime_error("cannot open slice file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(data, line)) {
        ++lineno;
        auto rec = parse_record_line(line);
        if (!rec) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed slice record");
        }
        slice.records.push_back(std::move(*rec));
    }
    if (meta.contains("records") && meta["records"].is_number_unsigned() &&
        meta["records"].get<std::size_t>() != slice.records.size()) {
        throw std::runtime_error("slice header record count does not match " + path);
    }
    return slice;
}

namespace {

bool glob_match(std::string_view pattern, std::string_view name) {
    std::size_t p = 0, n = 0, star_p = std::string_view::npos, star_n = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == name[n] || pattern[p] == '?')) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star_p = p++;
            star_n = n;
        } else if (star_p != std::string_view::npos) {
            p = star_p + 1;
            n = ++star_n;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

}  // namespace

std::vector<std::string> expand_glob(const std::string& pattern) {
    const fs::path pat(pattern);
    const auto filename = pat.filename().string();
    if (filename.find('*') == std::string::npos && filename.find('?') == std::string::npos) {
        return {pattern};
    }
    const fs::path dir = pat.parent_path().empty() ? fs::path(".") : pat.parent_path();
    std::vector<std::string> matches;
    if (!fs::is_directory(dir)) return matches;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (glob_match(filename, entry.path().filename().string())) {
            matches.push_back(entry.path().string());
        }
    }
    std::sort(matches.begin(), matches.end());
    return matches;
}

}  // namespace geolex::corpus
