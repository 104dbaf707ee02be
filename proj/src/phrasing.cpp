#include "geolex/phrasing.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace geolex::phrase {

PhraseModel learn_phrases(const std::vector<std::vector<std::string>>& sequences, double delta,
                          double threshold, std::uint64_t min_count) {
    if (sequences.empty()) throw std::invalid_argument("learn_phrases: empty corpus");
    if (!(threshold > 0.0)) throw std::invalid_argument("learn_phrases: threshold must be positive");
    if (delta < 0.0) throw std::invalid_argument("learn_phrases: delta must be non-negative");

    std::unordered_map<std::string, std::uint64_t> unigram;
    std::unordered_map<std::string, std::uint64_t> bigram;
    std::uint64_t token_total = 0;
    for (const auto& seq : sequences) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            ++unigram[seq[i]];
            ++token_total;
            if (i + 1 < seq.size()) ++bigram[PhraseModel::key(seq[i], seq[i + 1])];
        }
    }

    PhraseModel model;
    model.delta = delta;
    model.threshold = threshold;
    model.token_total = token_total;
    for (const auto& [key, count_ab] : bigram) {
        if (count_ab < min_count) continue;
        const std::size_t tab = key.find('\t');
        const double count_a = static_cast<double>(unigram.at(key.substr(0, tab)));
        const double count_b = static_cast<double>(unigram.at(key.substr(tab + 1)));
        const double score = (static_cast<double>(count_ab) - delta) *
                             static_cast<double>(token_total) / (count_a * count_b);
        if (score >= threshold) model.scores.emplace(key, score);
    }
    return model;
}

std::vector<std::string> apply_phrases(const std::vector<std::string>& tokens,
                                       const PhraseModel& model) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (i + 1 < tokens.size() && model.contains(tokens[i], tokens[i + 1])) {
            out.push_back(tokens[i] + '_' + tokens[i + 1]);
            i += 2;
        } else {
            out.push_back(tokens[i]);
            ++i;
        }
    }
    return out;
}

void save_phrases(const PhraseModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);

    char header[160];
    std::snprintf(header, sizeof(header), "# phrases v1 delta=%.17g threshold=%.17g token_total=%llu",
                  model.delta, model.threshold,
                  static_cast<unsigned long long>(model.token_total));
    out << header << "\n";

    // Sorted rows keep the file diffable across runs.
    std::vector<std::pair<std::string, double>> rows(model.scores.begin(), model.scores.end());
    std::sort(rows.begin(), rows.end());
    char value[40];
    for (const auto& [key, score] : rows) {
        std::snprintf(value, sizeof(value), "%.17g", score);
        out << key << '\t' << value << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

double parse_field_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw std::runtime_error(context + ": bad number '" + s + "'");
    return v;
}

}  // namespace

PhraseModel load_phrases(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty phrase file");

    PhraseModel model;
    static const std::string kPrefix = "# phrases v1 ";
    if (line.rfind(kPrefix, 0) != 0)
        throw std::runtime_error(path + ":1: expected '" + kPrefix + "' header");
    std::size_t pos = kPrefix.size();
    while (pos < line.size()) {
        const std::size_t eq = line.find('=', pos);
        const std::size_t sp = line.find(' ', pos);
        if (eq == std::string::npos || (sp != std::string::npos && sp < eq))
            throw std::runtime_error(path + ":1: malformed header field");
        const std::string name = line.substr(pos, eq - pos);
        const std::size_t end = sp == std::string::npos ? line.size() : sp;
        const std::string value = line.substr(eq + 1, end - eq - 1);
        if (name == "delta") {
            model.delta = parse_field_double(value, path + ":1");
        } else if (name == "threshold") {
            model.threshold = parse_field_double(value, path + ":1");
        } else if (name == "token_total") {
            model.token_total = std::strtoull(value.c_str(), nullptr, 10);
        } else {
            throw std::runtime_error(path + ":1: unknown header field '" + name + "'");
        }
        pos = end == line.size() ? end : end + 1;
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::size_t tab1 = line.find('\t');
        const std::size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos || line.find('\t', tab2 + 1) != std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 3 tab-separated fields");
        const std::string a = line.substr(0, tab1);
        const std::string b = line.substr(tab1 + 1, tab2 - tab1 - 1);
        if (a.empty() || b.empty())
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty token");
        const double score =
            parse_field_double(line.substr(tab2 + 1), path + ":" + std::to_string(line_no));
        model.scores.emplace(PhraseModel::key(a, b), score);
    }
    return model;
}

}  // namespace geolex::phrase
