#include "geolex/geolabel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "geolex/rng.hpp"

namespace geolex::geo {

const std::set<std::string>& european_codes() {
    static const std::set<std::string> codes{
        "AD", "AL", "AM", "AT", "AX", "AZ", "BA", "BE", "BG", "BY", "CH", "CY",
        "CZ", "DE", "DK", "EE", "ES", "FI", "FO", "FR", "GB", "GE", "GG", "GI",
        "GR", "HR", "HU", "IE", "IM", "IS", "IT", "JE", "KZ", "LI", "LT", "LU",
        "LV", "MC", "MD", "ME", "MK", "MT", "NL", "NO", "PL", "PT", "RO", "RS",
        "RU", "SE", "SI", "SK", "SM", "TR", "UA", "VA"};
    return codes;
}

std::optional<Region> classify_code(std::string_view country_code) {
    std::string code;
    code.reserve(country_code.size());
    for (char c : country_code) {
        code.push_back(c >= 'a' && c <= 'z' ? static_cast<char>(c - 0x20) : c);
    }
    if (code.size() != 2) return std::nullopt;
    return european_codes().count(code) ? Region::European : Region::NonEuropean;
}

std::optional<Region> assign_region_label(const corpus::TweetRecord& record) {
    if (!record.country_code) return std::nullopt;
    return classify_code(*record.country_code);
}

void SplitSpec::validate() const {
    double sum = 0.0;
    for (double r : ratios) {
        if (r < 0.0) throw std::invalid_argument("split ratios must be non-negative");
        sum += r;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("split ratios must sum to 1");
    }
}

namespace {

// Largest-remainder allocation of n items over the three ratios. Remainder
// ties resolve toward the earlier split so the result is total-ordered.
std::array<std::size_t, 3> allot(std::size_t n, const std::array<double, 3>& ratios) {
    std::array<std::size_t, 3> base{};
    std::array<double, 3> remainder{};
    std::size_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
        const double quota = ratios[i] * static_cast<double>(n);
        base[i] = static_cast<std::size_t>(quota);
        remainder[i] = quota - static_cast<double>(base[i]);
        assigned += base[i];
    }
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return remainder[a] > remainder[b]; });
    for (std::size_t left = n - assigned, k = 0; left > 0; --left, ++k) {
        ++base[order[k % 3]];
    }
    return base;
}

}  // namespace

SplitIndices stratified_split(const std::vector<Region>& labels, const SplitSpec& spec) {
    spec.validate();
    if (labels.empty()) throw std::invalid_argument("cannot split an empty example list");

    std::vector<std::size_t> europe, elsewhere;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        (labels[i] == Region::European ? europe : elsewhere).push_back(i);
    }
    if (europe.empty() || elsewhere.empty()) {
        throw std::invalid_argument("stratified split needs at least one example per class");
    }

    rng::Rng rng(spec.seed);
    SplitIndices out;
    for (auto* cls : {&europe, &elsewhere}) {
        rng::shuffle(*cls, rng);
        const auto counts = allot(cls->size(), spec.ratios);
        std::size_t pos = 0;
        for (std::size_t i = 0; i < counts[0]; ++i) out.train.push_back((*cls)[pos++]);
        for (std::size_t i = 0; i < counts[1]; ++i) out.validation.push_back((*cls)[pos++]);
        for (std::size_t i = 0; i < counts[2]; ++i) out.test.push_back((*cls)[pos++]);
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.validation.begin(), out.validation.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

LabelFile read_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label file: " + path);
    LabelFile out;
    std::string line;
    while (std::getline(in, line)) {
        ++out.rows_read;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            ++out.malformed;
            continue;
        }
        const std::string id = line.substr(0, tab);
        const auto label = region_from_string(line.substr(tab + 1));
        if (id.empty() || !label) {
            ++out.malformed;
            continue;
        }
        const auto [it, inserted] = out.by_id.emplace(id, *label);
        if (!inserted && it->second != *label) {
            throw std::runtime_error("conflicting labels for id '" + id + "' in " + path);
        }
    }
    return out;
}

void write_label_file(const std::string& path,
                      const std::vector<std::pair<std::string, Region>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write label file: " + path);
    for (const auto& [id, label] : rows) out << id << '\t' << to_string(label) << '\n';
    if (!out) throw std::runtime_error("failed writing label file: " + path);
}

}  // namespace geolex::geo
