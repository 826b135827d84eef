#include "sievekit/classifiers/tfidf.hpp"

#include "sievekit/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace sievekit {

double tfidf_weight(std::uint32_t tf, std::uint32_t n_docs, std::uint32_t doc_freq)
{
    if (doc_freq == 0 || doc_freq > n_docs)
        throw UsageError("document frequency must lie in [1, n]");
    if (tf == 0 || doc_freq == n_docs)
        return 0.0;
    return tf * std::log(static_cast<double>(n_docs) / doc_freq);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b)
{
    const double na = std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
    const double nb = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0) / (na * nb);
}

std::vector<double> TfIdfModel::weigh(const TermCounts& tf) const
{
    std::vector<double> w(idf.size(), 0.0);
    for (const auto& [j, count] : tf) {
        if (j < w.size())
            w[j] = count * idf[j];
    }
    return w;
}

double TfIdfModel::score(const TermCounts& tf) const
{
    const auto q = weigh(tf);
    return cosine(q, spam_centroid) - cosine(q, legit_centroid);
}

TfIdfModel train_tfidf(std::span<const TfIdfExample> data, std::size_t dimension)
{
    std::size_t n_spam = 0;
    std::vector<std::uint32_t> df(dimension, 0);
    for (const auto& ex : data) {
        if (ex.y == Label::Spam)
            ++n_spam;
        for (const auto& [j, count] : ex.tf) {
            if (j >= dimension)
                throw DataError("feature index out of range in TF-IDF training data");
            if (count > 0)
                ++df[j];
        }
    }
    const std::size_t n_legit = data.size() - n_spam;
    require_both_classes(n_spam, n_legit, "TF-IDF");

    const auto n = static_cast<std::uint32_t>(data.size());
    TfIdfModel model;
    model.idf.assign(dimension, 0.0);
    std::size_t unused = 0;
    for (std::size_t j = 0; j < dimension; ++j) {
        if (df[j] == 0)
            ++unused;
        else
            model.idf[j] = std::log(static_cast<double>(n) / df[j]);
    }
    if (unused > 0)
        warn(std::to_string(unused) +
             " TF-IDF feature(s) never occur in training data; their weight is 0");

    model.spam_centroid.assign(dimension, 0.0);
    model.legit_centroid.assign(dimension, 0.0);
    for (const auto& ex : data) {
        auto w = model.weigh(ex.tf);
        const double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        if (norm == 0.0)
            continue;
        auto& centroid = ex.y == Label::Spam ? model.spam_centroid : model.legit_centroid;
        for (std::size_t j = 0; j < dimension; ++j)
            centroid[j] += w[j] / norm;
    }
    for (auto& c : model.spam_centroid)
        c /= static_cast<double>(n_spam);
    for (auto& c : model.legit_centroid)
        c /= static_cast<double>(n_legit);
    return model;
}

} // namespace sievekit
