#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geolex/corpus.hpp"
#include "geolex/region.hpp"

namespace geolex::geo {

// The 56 ISO 3166 alpha-2 codes whose records are treated as European when
// deriving gold labels.
const std::set<std::string>& european_codes();

// European iff the (uppercased) code is in european_codes(); any other
// present code is NonEuropean; nullopt input stays unlabeled.
std::optional<Region> classify_code(std::string_view country_code);
std::optional<Region> assign_region_label(const corpus::TweetRecord& record);

struct SplitSpec {
    std::array<double, 3> ratios{0.8, 0.1, 0.1};  // train / validation / test
    std::uint64_t seed = 0;

    // Ratios must be non-negative and sum to 1 within 1e-9.
    void validate() const;
};

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
    std::vector<std::size_t> test;
};

// Stratified three-way split over item indices. Within each class, items are
// shuffled with a seed-pinned Fisher-Yates pass and allotted by largest
// remainder, so per-class counts differ from exact proportionality by at
// most one item. Throws std::invalid_argument on empty input or when either
// region class is absent. Index lists come back sorted.
SplitIndices stratified_split(const std::vector<Region>& labels, const SplitSpec& spec);

// Label files are TSV: id<TAB>E|NE.
struct LabelFile {
    std::unordered_map<std::string, Region> by_id;
    std::size_t rows_read = 0;
    std::size_t malformed = 0;  // skipped rows, never fatal
};

// Duplicate ids with conflicting labels throw; consistent duplicates collapse.
LabelFile read_label_file(const std::string& path);

void write_label_file(const std::string& path,
                      const std::vector<std::pair<std::string, Region>>& rows);

}  // namespace geolex::geo
