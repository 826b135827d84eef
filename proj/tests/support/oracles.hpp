#pragma once

// Reference implementations used only by tests. Each one follows the
// textbook formula directly and shares no code path with the library.

#include "sievekit/classifiers/common.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using sievekit::Label;
using BigRational = boost::multiprecision::cpp_rational;

/// Naive Bayes argmax with exact rationals for integer alpha. Dense 0/1
/// inputs; returns SPAM only when the spam product is strictly larger.
inline Label naive_bayes_argmax(const std::vector<std::vector<int>>& xs,
                                const std::vector<Label>& ys, const std::vector<int>& query,
                                int alpha)
{
    const std::size_t d = query.size();
    long n_spam = 0, n_legit = 0;
    std::vector<long> c_spam(d, 0), c_legit(d, 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const bool spam = ys[i] == Label::Spam;
        (spam ? n_spam : n_legit) += 1;
        for (std::size_t j = 0; j < d; ++j)
            if (xs[i][j])
                (spam ? c_spam : c_legit)[j] += 1;
    }
    const long n = n_spam + n_legit;
    BigRational spam(n_spam, n), legit(n_legit, n);
    for (std::size_t j = 0; j < d; ++j) {
        if (!query[j])
            continue;
        spam *= BigRational(c_spam[j] + alpha, n_spam + 2 * alpha);
        legit *= BigRational(c_legit[j] + alpha, n_legit + 2 * alpha);
    }
    return spam > legit ? Label::Spam : Label::Legitimate;
}

/// Distance-weighted k-NN by computing every distance, fully sorting by
/// (distance, training position), then voting.
inline Label knn_verdict(const std::vector<std::vector<int>>& xs, const std::vector<Label>& ys,
                         const std::vector<int>& q, std::size_t k, double exponent)
{
    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double d = 0;
        for (std::size_t f = 0; f < q.size(); ++f)
            d += (q[f] == xs[i][f]) ? 0.0 : 1.0;
        dist.emplace_back(d, i);
    }
    std::sort(dist.begin(), dist.end());
    dist.resize(k);

    double zero_spam = 0, zero_legit = 0;
    for (const auto& [d, i] : dist) {
        if (d == 0)
            (ys[i] == Label::Spam ? zero_spam : zero_legit) += 1;
    }
    if (zero_spam + zero_legit > 0)
        return zero_spam > zero_legit ? Label::Spam : Label::Legitimate;

    double vote_spam = 0, vote_legit = 0;
    for (const auto& [d, i] : dist) {
        const double v = 1.0 / std::pow(d, exponent);
        (ys[i] == Label::Spam ? vote_spam : vote_legit) += v;
    }
    return vote_spam > vote_legit ? Label::Spam : Label::Legitimate;
}

/// Mutual information I(presence; label) in bits from per-message
/// observations: sum over cells p(x,y) log2(p(x,y) / (p(x) p(y))).
inline double mutual_information(const std::vector<bool>& present, const std::vector<Label>& ys)
{
    const double n = static_cast<double>(present.size());
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> px, py;
    for (std::size_t i = 0; i < present.size(); ++i) {
        const int x = present[i] ? 1 : 0;
        const int y = ys[i] == Label::Spam ? 1 : 0;
        joint[{x, y}] += 1;
        px[x] += 1;
        py[y] += 1;
    }
    double mi = 0;
    for (const auto& [cell, count] : joint) {
        const double pxy = count / n;
        mi += pxy * std::log2(pxy / ((px[cell.first] / n) * (py[cell.second] / n)));
    }
    return mi;
}

/// Count-ratio measures evaluated in plain double arithmetic.
struct PlainMetrics {
    double acc, err, fp, fn, recall, precision, f1;
    double w_acc, w_err, tcr;
};

inline PlainMetrics plain_metrics(double ll, double ls, double sl, double ss, double lambda)
{
    PlainMetrics m{};
    const double total = ll + ls + sl + ss;
    m.acc = (ll + ss) / total;
    m.err = (ls + sl) / total;
    m.fp = ls / (ll + ls);
    m.fn = sl / (sl + ss);
    m.recall = ss / (sl + ss);
    m.precision = ss / (ls + ss);
    m.f1 = 1.0 / (0.5 * (1.0 / m.precision + 1.0 / m.recall));
    const double wden = lambda * (ll + ls) + sl + ss;
    m.w_acc = (lambda * ll + ss) / wden;
    m.w_err = (lambda * ls + sl) / wden;
    m.tcr = (sl + ss) / (lambda * ls + sl);
    return m;
}

/// Exact comparison of an integer-lambda ratio a/b against c/d with 128-bit
/// cross multiplication.
inline bool same_ratio(__int128 a, __int128 b, __int128 c, __int128 d)
{
    return a * d == c * b;
}

} // namespace oracle
