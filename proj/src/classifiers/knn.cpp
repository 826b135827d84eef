#include "sievekit/classifiers/knn.hpp"

#include "sievekit/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace sievekit {

KnnModel::KnnModel(std::vector<Example> training, std::size_t dimension, KnnParams params,
                   std::vector<double> feature_weights)
    : training_(std::move(training)),
      dimension_(dimension),
      params_(params),
      weights_(std::move(feature_weights)),
      words_((dimension + 63) / 64)
{
    if (params_.k == 0)
        throw UsageError("k must be positive");
    if (params_.k > training_.size())
        throw UsageError("k = " + std::to_string(params_.k) + " exceeds training size " +
                         std::to_string(training_.size()));
    if (!(params_.vote_exponent >= 0.0) || !std::isfinite(params_.vote_exponent))
        throw UsageError("vote exponent must be a non-negative real");
    if (weights_.empty())
        weights_.assign(dimension_, 1.0);
    if (weights_.size() != dimension_)
        throw UsageError("feature weight vector length differs from the feature count");
    if (!std::all_of(weights_.begin(), weights_.end(),
                     [](double w) { return w >= 0.0 && std::isfinite(w); }))
        throw UsageError("feature weights must be non-negative");
    unit_weights_ = std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });

    rows_.reserve(training_.size() * words_);
    for (const auto& ex : training_) {
        for (auto j : ex.x)
            if (j >= dimension_)
                throw DataError("feature index out of range in k-NN training data");
        auto packed = pack(ex.x);
        rows_.insert(rows_.end(), packed.begin(), packed.end());
    }
}

std::vector<std::uint64_t> KnnModel::pack(const FeatureVector& v) const
{
    std::vector<std::uint64_t> bits(words_, 0);
    for (auto j : v) {
        if (j < dimension_)
            bits[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    return bits;
}

double KnnModel::packed_distance(const std::uint64_t* q, const std::uint64_t* x) const
{
    if (unit_weights_) {
        std::uint64_t d = 0;
        for (std::size_t w = 0; w < words_; ++w)
            d += static_cast<std::uint64_t>(std::popcount(q[w] ^ x[w]));
        return static_cast<double>(d);
    }
    double d = 0.0;
    for (std::size_t w = 0; w < words_; ++w) {
        for (std::uint64_t diff = q[w] ^ x[w]; diff != 0; diff &= diff - 1)
            d += weights_[w * 64 + static_cast<std::size_t>(std::countr_zero(diff))];
    }
    return d;
}

double KnnModel::distance(const FeatureVector& q, std::size_t i) const
{
    const auto packed = pack(q);
    return packed_distance(packed.data(), rows_.data() + i * words_);
}

std::vector<Neighbor> KnnModel::neighbors(const FeatureVector& q) const
{
    const auto packed = pack(q);
    std::vector<std::pair<double, std::size_t>> all(training_.size());
    for (std::size_t i = 0; i < training_.size(); ++i)
        all[i] = {packed_distance(packed.data(), rows_.data() + i * words_), i};
    // (distance, index) ordering puts earlier training vectors first on ties.
    const auto k = static_cast<std::ptrdiff_t>(params_.k);
    std::partial_sort(all.begin(), all.begin() + k, all.end());

    std::vector<Neighbor> out;
    out.reserve(params_.k);
    for (std::ptrdiff_t c = 0; c < k; ++c) {
        const auto [d, i] = all[static_cast<std::size_t>(c)];
        out.push_back({i, d, training_[i].y});
    }
    return out;
}

double KnnModel::score(const FeatureVector& q) const
{
    const auto nearest = neighbors(q);
    if (nearest.front().distance == 0.0) {
        double exact = 0.0;
        for (const auto& nb : nearest) {
            if (nb.distance == 0.0)
                exact += nb.label == Label::Spam ? 1.0 : -1.0;
        }
        return exact;
    }
    double spam_vote = 0.0, legit_vote = 0.0;
    for (const auto& nb : nearest) {
        const double vote = 1.0 / std::pow(nb.distance, params_.vote_exponent);
        (nb.label == Label::Spam ? spam_vote : legit_vote) += vote;
    }
    return spam_vote - legit_vote;
}

} // namespace sievekit
