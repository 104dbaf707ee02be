#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "geolex/region.hpp"

namespace geolex::corpus {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::year_month_day;

// Accepts "YYYY-MM-DD" and "YYYY-MM-DD[T ]HH:MM:SS" with an optional
// trailing "Z" or "+00:00". All timestamps are UTC.
std::optional<Timestamp> parse_timestamp(std::string_view s);
std::optional<Date> parse_date(std::string_view s);
std::string format_timestamp(Timestamp t);
std::string format_date(Date d);

// Closed date range: both endpoint days belong to the range.
struct DateRange {
    Date start{};
    Date end{};

    bool contains(Timestamp t) const;
    bool overlaps(const DateRange& other) const;
};

// Parses "YYYY-MM-DD:YYYY-MM-DD"; throws std::invalid_argument on bad input
// or an inverted range.
DateRange parse_date_range(std::string_view s);

struct TweetRecord {
    std::string id;
    std::string text;
    std::string lang;
    Timestamp created_at{};
    std::string user_location;
    std::string user_description;
    std::optional<std::string> country_code;  // 2 ASCII uppercase letters
    std::optional<Region> region;             // filled in by labeling stages

    bool operator==(const TweetRecord&) const = default;
};

struct CorpusSlice {
    std::string name;
    std::string language;  // empty when records span several languages
    std::optional<DateRange> period;
    std::optional<Region> region;
    std::vector<TweetRecord> records;
};

struct TermList {
    std::string language;
    std::set<std::string> terms;  // lowercase; multi-word terms use single spaces
};

struct IngestStats {
    std::size_t lines_read = 0;
    std::size_t kept = 0;
    std::size_t skipped_malformed = 0;
    std::size_t skipped_language = 0;

    IngestStats& operator+=(const IngestStats& o) {
        lines_read += o.lines_read;
        kept += o.kept;
        skipped_malformed += o.skipped_malformed;
        skipped_language += o.skipped_language;
        return *this;
    }
};

struct IngestResult {
    CorpusSlice slice;
    IngestStats stats;
};

// Streams one-JSON-object-per-line records from `path`. Expected fields:
// id, full_text (falling back to text), lang, created_at, user.location,
// user.description, place.country_code. Records whose lang is not in the
// allowlist are tallied and dropped; an empty allowlist keeps every
// language. Malformed lines are tallied, never fatal. Kept records stay in
// file order. An unreadable path throws std::runtime_error.
IngestResult ingest_records(const std::string& path,
                            const std::set<std::string>& lang_allowlist);

// Ingests several files and concatenates the results in the order given.
// Files are independent, so they may be read on up to `threads` workers.
IngestResult ingest_files(const std::vector<std::string>& paths,
                          const std::set<std::string>& lang_allowlist,
                          unsigned threads = 1);

// Keeps exactly the records whose text contains at least one term,
// case-insensitively and on word boundaries. Throws std::invalid_argument
// on an empty term list or a slice/term-list language mismatch.
CorpusSlice filter_disinfo_terms(const CorpusSlice& slice, const TermList& terms);

struct PartitionResult {
    std::vector<CorpusSlice> slices;  // one per period, in period order
    std::size_t dropped = 0;          // records outside every period
};

// Splits by created_at into the given pairwise-disjoint closed date ranges.
// Overlapping ranges throw std::invalid_argument.
PartitionResult partition_corpus(const CorpusSlice& slice,
                                 const std::vector<DateRange>& periods);

// True when lowercased `text` contains `term` on word boundaries; whitespace
// runs in the text count as a single space, so multi-word terms match across
// line breaks. Word characters are Latin letters, ASCII digits, underscore.
bool contains_term(std::string_view text, std::string_view term);

// The bundled disinformation term lists ("en", "es", "fr"). Translations
// that coincide across rows are deduplicated by the set representation.
TermList builtin_term_list(const std::string& language);

// One lowercase term per line; blank lines ignored. Throws on unreadable
// path or empty result.
TermList load_term_list(const std::string& path, std::string language);

// A slice on disk is a JSONL record file at `path` plus a small JSON header
// at `path.meta` holding name, language, period, region and record count.
void save_slice(const CorpusSlice& slice, const std::string& path);
CorpusSlice load_slice(const std::string& path);

// Shell-style expansion of * and ? in the final path component. A pattern
// without wildcards is returned as-is. Matches are sorted.
std::vector<std::string> expand_glob(const std::string& pattern);

}  // namespace geolex::corpus
