#pragma once

#include "sievekit/classifiers/common.hpp"

#include <cstdint>
#include <vector>

namespace sievekit {

/// Naive Bayes over binary presence features, scored with the
/// present-features-only product:
///
///   argmax_y  p(y) * prod_{j : x_j = 1} p(x_j = 1 | y)
///
/// Absent features contribute nothing. Probabilities are Laplace-smoothed
/// counts, so the model is fully determined by the integer counts and alpha.
class NaiveBayesModel {
public:
    NaiveBayesModel(std::uint32_t n_spam, std::uint32_t n_legit,
                    std::vector<std::uint32_t> spam_present,
                    std::vector<std::uint32_t> legit_present, double alpha);

    std::size_t dimension() const { return spam_present_.size(); }
    double alpha() const { return alpha_; }
    std::uint32_t class_size(Label y) const { return y == Label::Spam ? n_spam_ : n_legit_; }
    const std::vector<std::uint32_t>& present_counts(Label y) const
    {
        return y == Label::Spam ? spam_present_ : legit_present_;
    }

    /// count(y) / N
    double prior(Label y) const;
    /// (count of x_j = 1 in class y + alpha) / (count(y) + 2 alpha)
    double cond(std::size_t j, Label y) const;

    /// log of the spam-side product minus log of the legitimate-side product.
    /// Exactly 0 when the two products are exactly equal.
    double score(const FeatureVector& x) const;

private:
    std::uint32_t n_spam_;
    std::uint32_t n_legit_;
    std::vector<std::uint32_t> spam_present_;
    std::vector<std::uint32_t> legit_present_;
    double alpha_;

    int exact_sign(const FeatureVector& x) const;

    double log_prior_ratio_;
    std::vector<double> log_cond_ratio_;
};

/// Needs both classes and alpha > 0.
NaiveBayesModel train_naive_bayes(std::span<const Example> data, std::size_t dimension,
                                  double alpha = 1.0);

} // namespace sievekit
