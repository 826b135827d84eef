#pragma once

#include "sievekit/classifiers/common.hpp"

#include <cstdint>
#include <vector>

namespace sievekit {

struct TfIdfExample {
    TermCounts tf;
    Label y;
};

/// tf * ln(n / df). Zero when tf == 0 or df == n; df must be positive.
double tfidf_weight(std::uint32_t tf, std::uint32_t n_docs, std::uint32_t doc_freq);

/// Rocchio classifier over tf-idf vectors. Each class is represented by the
/// mean of its L2-normalized training vectors; a query scores
/// cos(q, spam centroid) - cos(q, legit centroid).
struct TfIdfModel {
    std::vector<double> idf;
    std::vector<double> spam_centroid;
    std::vector<double> legit_centroid;

    /// Dense tf-idf vector of a message (not normalized).
    std::vector<double> weigh(const TermCounts& tf) const;
    double score(const TermCounts& tf) const;
};

/// Cosine similarity; 0 when either vector is zero.
double cosine(const std::vector<double>& a, const std::vector<double>& b);

/// Features that never occur in training get idf 0 and trigger a warning.
TfIdfModel train_tfidf(std::span<const TfIdfExample> data, std::size_t dimension);

} // namespace sievekit
