#pragma once

#include "sievekit/classifiers/common.hpp"

#include <cstdint>
#include <vector>

namespace sievekit {

struct KnnParams {
    std::uint32_t k = 5;
    /// Votes are 1 / distance^exponent.
    double vote_exponent = 1.0;
};

struct Neighbor {
    std::size_t index;
    double distance;
    Label label;
};

/// Distance-weighted k-nearest-neighbour classifier over binary vectors.
///
/// distance(q, x) = sum_f w_f [q_f != x_f]. The k closest training vectors
/// vote with weight 1 / distance^n; distance ties go to the earlier
/// training vector. If any selected neighbour is at distance 0, only the
/// zero-distance neighbours count, one vote each.
class KnnModel {
public:
    /// Empty feature_weights means all ones. Throws UsageError on k == 0,
    /// k > training size, negative weights or a negative exponent.
    KnnModel(std::vector<Example> training, std::size_t dimension, KnnParams params,
             std::vector<double> feature_weights = {});

    const std::vector<Example>& training() const { return training_; }
    const KnnParams& params() const { return params_; }
    const std::vector<double>& feature_weights() const { return weights_; }
    std::size_t dimension() const { return dimension_; }

    double distance(const FeatureVector& q, std::size_t i) const;
    /// The k nearest, closest first.
    std::vector<Neighbor> neighbors(const FeatureVector& q) const;
    /// Vote(SPAM) - Vote(LEGITIMATE), or the zero-distance count difference.
    double score(const FeatureVector& q) const;

private:
    std::vector<std::uint64_t> pack(const FeatureVector& v) const;
    double packed_distance(const std::uint64_t* q, const std::uint64_t* x) const;

    std::vector<Example> training_;
    std::size_t dimension_;
    KnnParams params_;
    std::vector<double> weights_;
    bool unit_weights_;
    std::size_t words_;
    std::vector<std::uint64_t> rows_;
};

} // namespace sievekit
