#include "geolex/query.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace geolex::query {

double cosine(const double* u, const double* v, int dim) {
    double dot = 0.0, uu = 0.0, vv = 0.0;
    for (int d = 0; d < dim; ++d) {
        dot += u[d] * v[d];
        uu += u[d] * u[d];
        vv += v[d] * v[d];
    }
    if (uu == 0.0 || vv == 0.0) return 0.0;
    return dot / (std::sqrt(uu) * std::sqrt(vv));
}

namespace {

std::size_t require_token(const embed::EmbeddingModel& model, const std::string& token,
                          const std::string& where) {
    const auto id = model.find(token);
    if (!id) {
        const std::string suffix = where.empty() ? "" : " in " + where;
        throw std::runtime_error("token '" + token + "' not in vocabulary" + suffix);
    }
    return *id;
}

// Ranks every vocabulary row against `direction`, skipping `excluded` rows.
NeighborList rank_by_cosine(const embed::EmbeddingModel& model, const std::vector<double>& direction,
                            const std::unordered_set<std::size_t>& excluded, std::size_t k,
                            std::string query_label) {
    NeighborList list;
    list.query = std::move(query_label);
    list.entries.reserve(model.vocab.size());
    for (std::size_t i = 0; i < model.vocab.size(); ++i) {
        if (excluded.count(i)) continue;
        list.entries.push_back(
            {model.vocab[i].token, cosine(direction.data(), model.input_row(i), model.dim)});
    }
    std::sort(list.entries.begin(), list.entries.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.token < b.token;
    });
    if (list.entries.size() > k) list.entries.resize(k);
    return list;
}

}  // namespace

NeighborList nearest_neighbors(const embed::EmbeddingModel& model, const std::string& token,
                               std::size_t k) {
    const std::size_t id = require_token(model, token, "");
    const double* row = model.input_row(id);
    std::vector<double> direction(row, row + model.dim);
    return rank_by_cosine(model, direction, {id}, k, token);
}

NeighborList analogy(const embed::EmbeddingModel& model, const AnalogyQuery& q, std::size_t k) {
    const std::size_t ia = require_token(model, q.a, "");
    const std::size_t ib = require_token(model, q.b, "");
    const std::size_t ic = require_token(model, q.c, "");

    std::vector<double> direction(static_cast<std::size_t>(model.dim));
    const double* va = model.input_row(ia);
    const double* vb = model.input_row(ib);
    const double* vc = model.input_row(ic);
    for (int d = 0; d < model.dim; ++d) direction[static_cast<std::size_t>(d)] = vb[d] + va[d] - vc[d];

    return rank_by_cosine(model, direction, {ia, ib, ic}, k, q.b + "+" + q.a + "-" + q.c);
}

NeighborhoodComparison compare_neighborhoods(const embed::EmbeddingModel& first,
                                             const embed::EmbeddingModel& second,
                                             const std::string& token, std::size_t k) {
    require_token(first, token, "the first model");
    require_token(second, token, "the second model");

    NeighborhoodComparison cmp;
    cmp.first = nearest_neighbors(first, token, k);
    cmp.second = nearest_neighbors(second, token, k);

    std::unordered_set<std::string> set_a;
    for (const auto& n : cmp.first.entries) set_a.insert(n.token);
    std::unordered_set<std::string> set_b;
    for (const auto& n : cmp.second.entries) set_b.insert(n.token);

    std::size_t intersection = 0;
    for (const auto& tok : set_a) intersection += set_b.count(tok);
    const std::size_t unions = set_a.size() + set_b.size() - intersection;
    cmp.jaccard = unions == 0 ? 1.0 : static_cast<double>(intersection) / static_cast<double>(unions);
    return cmp;
}

}  // namespace geolex::query
