#include "geolex/nbclassifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "geolex/text.hpp"

namespace geolex::nb {

FeatureDoc build_features(const corpus::TweetRecord& record) {
    FeatureDoc doc;
    doc.id = record.id;
    doc.tokens = text::letter_words(record.user_description);
    auto location_words = text::letter_words(record.user_location);
    if (!location_words.empty()) {
        std::string joined = location_words[0];
        for (std::size_t i = 1; i < location_words.size(); ++i) {
            joined += '_';
            joined += location_words[i];
        }
        doc.tokens.push_back(std::move(joined));
    }
    return doc;
}

NBModel train_nb(const std::vector<LabeledExample>& docs, double alpha) {
    if (docs.empty()) throw std::invalid_argument("train_nb: no training documents");
    if (!(alpha > 0.0)) throw std::invalid_argument("train_nb: alpha must be positive");

    std::array<std::size_t, 2> doc_count{};
    std::array<std::size_t, 2> token_total{};
    std::unordered_map<std::string, std::array<std::size_t, 2>> token_count;
    for (const auto& ex : docs) {
        const int c = region_index(ex.label);
        ++doc_count[c];
        for (const auto& tok : ex.doc.tokens) {
            ++token_count[tok][c];
            ++token_total[c];
        }
    }
    if (doc_count[0] == 0 || doc_count[1] == 0)
        throw std::invalid_argument("train_nb: both classes must be present");

    NBModel model;
    model.alpha = alpha;
    const double total_docs = static_cast<double>(docs.size());
    for (int c = 0; c < 2; ++c)
        model.log_prior[c] = std::log(static_cast<double>(doc_count[c]) / total_docs);

    model.vocabulary.reserve(token_count.size());
    for (const auto& [tok, counts] : token_count) model.vocabulary.push_back(tok);
    std::sort(model.vocabulary.begin(), model.vocabulary.end());

    const double vocab_size = static_cast<double>(model.vocabulary.size());
    for (const auto& tok : model.vocabulary) {
        const auto& counts = token_count[tok];
        std::array<double, 2> logp;
        for (int c = 0; c < 2; ++c) {
            logp[c] = std::log((static_cast<double>(counts[c]) + alpha) /
                               (static_cast<double>(token_total[c]) + alpha * vocab_size));
        }
        model.token_log_likelihood.emplace(tok, logp);
    }
    return model;
}

Prediction predict(const NBModel& model, const FeatureDoc& doc) {
    std::array<double, 2> score = model.log_prior;
    for (const auto& tok : doc.tokens) {
        auto it = model.token_log_likelihood.find(tok);
        if (it == model.token_log_likelihood.end()) continue;  // OOV tokens carry no evidence
        score[0] += it->second[0];
        score[1] += it->second[1];
    }
    const int winner = score[0] >= score[1] ? 0 : 1;
    const double max_score = std::max(score[0], score[1]);
    const double z = std::exp(score[0] - max_score) + std::exp(score[1] - max_score);
    Prediction pred;
    pred.label = region_at(winner);
    pred.posterior = std::exp(score[winner] - max_score) / z;
    return pred;
}

EvalMetrics evaluate(const std::vector<Region>& predictions, const std::vector<Region>& gold) {
    if (gold.empty()) throw std::invalid_argument("evaluate: empty gold labels");
    if (predictions.size() != gold.size())
        throw std::invalid_argument("evaluate: prediction/gold size mismatch");

    EvalMetrics m;
    for (std::size_t i = 0; i < gold.size(); ++i)
        ++m.confusion[region_index(gold[i])][region_index(predictions[i])];

    const double n = static_cast<double>(gold.size());
    m.accuracy = static_cast<double>(m.confusion[0][0] + m.confusion[1][1]) / n;

    double precision_sum = 0.0;
    double recall_sum = 0.0;
    double f1_sum = 0.0;
    for (int c = 0; c < 2; ++c) {
        const double tp = static_cast<double>(m.confusion[c][c]);
        const double fp = static_cast<double>(m.confusion[1 - c][c]);
        const double fn = static_cast<double>(m.confusion[c][1 - c]);
        const double precision = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
        const double recall = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
        const double f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        precision_sum += precision;
        recall_sum += recall;
        f1_sum += f1;
    }
    m.macro_precision = precision_sum / 2.0;
    m.macro_recall = recall_sum / 2.0;
    m.macro_f1 = f1_sum / 2.0;
    return m;
}

namespace {

std::string format_logp(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

double parse_logp(const std::string& field, std::size_t line_no, const std::string& path) {
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad log probability '" + field + "'");
    return value;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

}  // namespace

void save_model(const NBModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "nbmodel v1 alpha=" << format_logp(model.alpha) << "\n";
    for (int c = 0; c < 2; ++c)
        out << "prior\t" << to_string(region_at(c)) << "\t" << format_logp(model.log_prior[c]) << "\n";
    for (const auto& tok : model.vocabulary) {
        const auto& logp = model.token_log_likelihood.at(tok);
        for (int c = 0; c < 2; ++c)
            out << "tok\t" << to_string(region_at(c)) << "\t" << tok << "\t" << format_logp(logp[c]) << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

NBModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty model file");
    static const std::string kHeaderPrefix = "nbmodel v1 alpha=";
    if (line.rfind(kHeaderPrefix, 0) != 0)
        throw std::runtime_error(path + ":1: expected '" + kHeaderPrefix + "<a>' header");

    NBModel model;
    model.alpha = parse_logp(line.substr(kHeaderPrefix.size()), 1, path);
    if (!(model.alpha > 0.0)) throw std::runtime_error(path + ":1: alpha must be positive");

    std::array<bool, 2> prior_seen{};
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        const auto fail = [&](const std::string& what) -> std::runtime_error {
            return std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
        };
        if (fields[0] == "prior") {
            if (fields.size() != 3) throw fail("prior row needs 3 fields");
            const auto region = region_from_string(fields[1]);
            if (!region) throw fail("unknown class '" + fields[1] + "'");
            const int c = region_index(*region);
            if (prior_seen[c]) throw fail("duplicate prior for class " + fields[1]);
            prior_seen[c] = true;
            model.log_prior[c] = parse_logp(fields[2], line_no, path);
        } else if (fields[0] == "tok") {
            if (fields.size() != 4) throw fail("tok row needs 4 fields");
            const auto region = region_from_string(fields[1]);
            if (!region) throw fail("unknown class '" + fields[1] + "'");
            if (fields[2].empty()) throw fail("empty token");
            model.token_log_likelihood[fields[2]][region_index(*region)] =
                parse_logp(fields[3], line_no, path);
        } else {
            throw fail("unknown row kind '" + fields[0] + "'");
        }
    }
    if (!prior_seen[0] || !prior_seen[1]) throw std::runtime_error(path + ": missing prior row");

    model.vocabulary.reserve(model.token_log_likelihood.size());
    for (const auto& [tok, logp] : model.token_log_likelihood) model.vocabulary.push_back(tok);
    std::sort(model.vocabulary.begin(), model.vocabulary.end());
    return model;
}

ImportResult import_labels(const corpus::CorpusSlice& slice, const std::string& tsv_path) {
    const auto labels = geo::read_label_file(tsv_path);

    ImportResult result;
    result.slice = slice;
    result.stats.rows_read = labels.rows_read;
    result.stats.malformed = labels.malformed;

    std::set<std::string> matched;
    for (auto& record : result.slice.records) {
        auto it = labels.by_id.find(record.id);
        if (it == labels.by_id.end()) continue;
        record.region = it->second;
        ++result.stats.applied;
        matched.insert(record.id);
    }
    result.stats.unmatched = labels.by_id.size() - matched.size();
    return result;
}

corpus::CorpusSlice filter_by_region(const corpus::CorpusSlice& slice, Region region) {
    corpus::CorpusSlice out;
    out.name = slice.name + "-" + std::string(to_string(region));
    out.language = slice.language;
    out.period = slice.period;
    out.region = region;
    for (const auto& record : slice.records)
        if (record.region && *record.region == region) out.records.push_back(record);
    return out;
}

}  // namespace geolex::nb
