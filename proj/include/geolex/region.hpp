#pragma once

#include <optional>
#include <string_view>

namespace geolex {

// Binary geographic class used throughout the pipeline.
// Serialized as "E" / "NE" in label files and slice records.
enum class Region { European, NonEuropean };

constexpr std::string_view to_string(Region r) {
    return r == Region::European ? "E" : "NE";
}

inline std::optional<Region> region_from_string(std::string_view s) {
    if (s == "E") return Region::European;
    if (s == "NE") return Region::NonEuropean;
    return std::nullopt;
}

}  // namespace geolex
