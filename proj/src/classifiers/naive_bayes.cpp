#include "sievekit/classifiers/naive_bayes.hpp"

#include "sievekit/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>

namespace sievekit {

NaiveBayesModel::NaiveBayesModel(std::uint32_t n_spam, std::uint32_t n_legit,
                                 std::vector<std::uint32_t> spam_present,
                                 std::vector<std::uint32_t> legit_present, double alpha)
    : n_spam_(n_spam),
      n_legit_(n_legit),
      spam_present_(std::move(spam_present)),
      legit_present_(std::move(legit_present)),
      alpha_(alpha)
{
    require_both_classes(n_spam_, n_legit_, "naive Bayes");
    if (!(alpha_ > 0.0) || !std::isfinite(alpha_))
        throw UsageError("naive Bayes smoothing alpha must be positive");
    if (spam_present_.size() != legit_present_.size())
        throw DataError("naive Bayes count tables differ in length");
    for (std::size_t j = 0; j < spam_present_.size(); ++j) {
        if (spam_present_[j] > n_spam_ || legit_present_[j] > n_legit_)
            throw DataError("naive Bayes presence count exceeds class size");
    }

    log_prior_ratio_ = std::log(prior(Label::Spam)) - std::log(prior(Label::Legitimate));
    log_cond_ratio_.resize(spam_present_.size());
    for (std::size_t j = 0; j < log_cond_ratio_.size(); ++j)
        log_cond_ratio_[j] = std::log(cond(j, Label::Spam)) - std::log(cond(j, Label::Legitimate));
}

double NaiveBayesModel::prior(Label y) const
{
    return static_cast<double>(class_size(y)) / (static_cast<double>(n_spam_) + n_legit_);
}

double NaiveBayesModel::cond(std::size_t j, Label y) const
{
    return (present_counts(y)[j] + alpha_) / (class_size(y) + 2.0 * alpha_);
}

double NaiveBayesModel::score(const FeatureVector& x) const
{
    double s = log_prior_ratio_;
    double magnitude = std::abs(log_prior_ratio_);
    for (auto j : x) {
        if (j < log_cond_ratio_.size()) {
            s += log_cond_ratio_[j];
            magnitude += std::abs(log_cond_ratio_[j]);
        }
    }
    // Within rounding distance of zero the sign of the log sum is not
    // trustworthy, so compare the two products exactly.
    const double slack = 64 * std::numeric_limits<double>::epsilon() * (1.0 + magnitude);
    if (std::abs(s) > slack)
        return s;
    return exact_sign(x) == 0 ? 0.0 : std::copysign(std::max(std::abs(s), slack), exact_sign(x));
}

int NaiveBayesModel::exact_sign(const FeatureVector& x) const
{
    using Rational = boost::multiprecision::cpp_rational;
    const Rational alpha(alpha_);
    // P(S) prod P(x_j|S) against P(L) prod P(x_j|L); the common 1/(n_S + n_L)
    // cancels.
    Rational spam = n_spam_;
    Rational legit = n_legit_;
    for (auto j : x) {
        if (j >= spam_present_.size())
            continue;
        spam *= (spam_present_[j] + alpha) / (n_spam_ + 2 * alpha);
        legit *= (legit_present_[j] + alpha) / (n_legit_ + 2 * alpha);
    }
    return spam > legit ? 1 : spam < legit ? -1 : 0;
}

NaiveBayesModel train_naive_bayes(std::span<const Example> data, std::size_t dimension,
                                  double alpha)
{
    std::uint32_t n_spam = 0, n_legit = 0;
    std::vector<std::uint32_t> spam(dimension, 0), legit(dimension, 0);
    for (const auto& ex : data) {
        auto& counts = ex.y == Label::Spam ? spam : legit;
        ++(ex.y == Label::Spam ? n_spam : n_legit);
        for (auto j : ex.x) {
            if (j >= dimension)
                throw DataError("feature index out of range in naive Bayes training data");
            ++counts[j];
        }
    }
    require_both_classes(n_spam, n_legit, "naive Bayes");
    return NaiveBayesModel(n_spam, n_legit, std::move(spam), std::move(legit), alpha);
}

} // namespace sievekit
