#pragma once

#include <string>
#include <vector>

#include "geolex/embed.hpp"

namespace geolex::query {

// Zero vectors (never-updated tokens) compare as 0 to everything.
double cosine(const double* u, const double* v, int dim);

struct Neighbor {
    std::string token;
    double similarity = 0.0;
};

// Sorted by cosine descending, ties by token ascending; never contains the
// query token(s).
struct NeighborList {
    std::string query;
    std::vector<Neighbor> entries;
};

// Cosine over input vectors against every other vocabulary token, top k.
// Throws std::runtime_error naming the token when it is out of vocabulary.
NeighborList nearest_neighbors(const embed::EmbeddingModel& model, const std::string& token,
                               std::size_t k);

// Reading "b is to a as d is to c": d maximizes cosine to v(b) + v(a) - v(c).
struct AnalogyQuery {
    std::string a;
    std::string b;
    std::string c;
};

// a, b, c are excluded from the ranking. Throws naming the first
// out-of-vocabulary term.
NeighborList analogy(const embed::EmbeddingModel& model, const AnalogyQuery& q, std::size_t k);

struct NeighborhoodComparison {
    NeighborList first;
    NeighborList second;
    double jaccard = 0.0;  // overlap of the two neighbor token sets
};

// Top-k neighborhoods of the same query in two models plus their Jaccard
// overlap. Throws naming which model lacks the query. Two empty
// neighborhoods count as identical (jaccard 1).
NeighborhoodComparison compare_neighborhoods(const embed::EmbeddingModel& first,
                                             const embed::EmbeddingModel& second,
                                             const std::string& token, std::size_t k);

}  // namespace geolex::query
