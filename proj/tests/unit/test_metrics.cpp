#include "sievekit/error.hpp"
#include "sievekit/metrics.hpp"
#include "sievekit/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace sievekit;

namespace {

constexpr auto S = Label::Spam;
constexpr auto L = Label::Legitimate;

} // namespace

TEST_CASE("confusion tallies the four cells")
{
    const std::vector<Label> truth{S, S, S, L, L};
    CHECK(confusion(truth, truth) == ConfusionCounts{2, 0, 0, 3});
    const std::vector<Label> all_spam(5, S);
    CHECK(confusion(all_spam, truth) == ConfusionCounts{0, 2, 0, 3});
    const std::vector<Label> inverted{L, L, L, S, S};
    CHECK(confusion(inverted, truth) == ConfusionCounts{0, 2, 3, 0});
    CHECK_THROWS_AS(confusion(std::vector<Label>{S}, truth), UsageError);
    CHECK_THROWS_AS(confusion(std::vector<Label>{}, std::vector<Label>{}), UsageError);
}

TEST_CASE("worked example (90, 10, 5, 95)")
{
    const ConfusionCounts c{90, 10, 5, 95};
    const auto m = compute_metrics(c);
    CHECK(m.accuracy.exact() == Rational(185, 200));
    CHECK(m.error_rate.exact() == Rational(15, 200));
    CHECK(m.fp_rate.exact() == Rational(1, 10));
    CHECK(m.fn_rate.exact() == Rational(5, 100));
    CHECK(m.recall.exact() == Rational(95, 100));
    CHECK(m.precision.exact() == Rational(95, 105));
    CHECK(m.precision.value() == doctest::Approx(0.904762).epsilon(1e-6));
    CHECK(m.f1.value() == doctest::Approx(0.926829).epsilon(1e-6));

    const auto w9 = compute_weighted(c, 9);
    CHECK(w9.w_acc.exact() == Rational(905, 1000));
    CHECK(w9.w_err.exact() == Rational(95, 1000));
    CHECK(w9.tcr.exact() == Rational(100, 95));
    const auto w1 = compute_weighted(c, 1);
    CHECK(w1.tcr.exact() == Rational(100, 15));
    CHECK(w1.w_acc.exact() == m.accuracy.exact());
}

TEST_CASE("perfect filter")
{
    const ConfusionCounts c{7, 0, 0, 4};
    const auto m = compute_metrics(c);
    CHECK(m.accuracy.exact() == 1);
    CHECK(m.fp_rate.exact() == 0);
    CHECK(m.fn_rate.exact() == 0);
    CHECK(m.precision.exact() == 1);
    CHECK(m.recall.exact() == 1);
    CHECK(m.f1.exact() == 1);
    const auto w = compute_weighted(c, 999);
    CHECK(w.tcr.infinite_value());
    CHECK(w.tcr.str() == "inf");
}

TEST_CASE("undefined measures are flagged, not zero")
{
    const auto none_blocked = compute_metrics(ConfusionCounts{5, 0, 3, 0});
    CHECK_FALSE(none_blocked.precision.defined());
    CHECK_FALSE(none_blocked.f1.defined());
    CHECK(none_blocked.precision.str() == "NA");
    CHECK(std::isnan(none_blocked.precision.value()));
    CHECK(none_blocked.recall.exact() == 0);

    const auto no_spam = compute_metrics(ConfusionCounts{5, 1, 0, 0});
    CHECK_FALSE(no_spam.recall.defined());
    CHECK_FALSE(no_spam.fn_rate.defined());
    CHECK(no_spam.fp_rate.defined());

    const auto empty = compute_metrics(ConfusionCounts{});
    CHECK_FALSE(empty.accuracy.defined());

    // p = 0 and r = 0: f1 is 0/0.
    const auto all_wrong = compute_metrics(ConfusionCounts{0, 3, 2, 0});
    CHECK(all_wrong.precision.exact() == 0);
    CHECK_FALSE(all_wrong.f1.defined());
}

TEST_CASE("lambda must be positive")
{
    CHECK_THROWS_AS(compute_weighted(ConfusionCounts{1, 1, 1, 1}, 0.0), UsageError);
    CHECK_THROWS_AS(compute_weighted(ConfusionCounts{1, 1, 1, 1}, -2.0), UsageError);
    CHECK_THROWS_AS(compute_weighted(ConfusionCounts{1, 1, 1, 1}, NAN), UsageError);
}

TEST_CASE("to_rational is exact")
{
    CHECK(to_rational(0.5) == Rational(1, 2));
    CHECK(to_rational(999.0) == Rational(999));
    CHECK(to_rational(0.1) != Rational(1, 10));
    CHECK(to_rational(0.1).convert_to<double>() == 0.1);
    CHECK(to_rational(-3.25) == Rational(-13, 4));
}

TEST_CASE("metric identities hold exactly (property)")
{
    Rng rng(555);
    for (int trial = 0; trial < 500; ++trial) {
        const ConfusionCounts c{rng.below(50), rng.below(50), rng.below(50), rng.below(50) + 1};
        const auto m = compute_metrics(c);
        CHECK(m.accuracy.exact() + m.error_rate.exact() == 1);
        if (m.recall.defined())
            CHECK(m.recall.exact() == 1 - m.fn_rate.exact());
        if (c.legit() > 0)
            CHECK(m.fp_rate.exact() == 1 - Rational(c.n_ll, c.legit()));
        const double lambda = rng.uniform() * 50 + 0.01;
        const auto w = compute_weighted(c, lambda);
        CHECK(w.w_acc.exact() + w.w_err.exact() == 1);
        const auto w1 = compute_weighted(c, 1.0);
        CHECK(w1.w_acc.exact() == m.accuracy.exact());
        CHECK(w1.w_err.exact() == m.error_rate.exact());
    }
}

TEST_CASE("f1 matches the harmonic mean re-derivation (property)")
{
    Rng rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const ConfusionCounts c{rng.below(100), rng.below(100), rng.below(100), 1 + rng.below(100)};
        const auto m = compute_metrics(c);
        const auto plain = oracle::plain_metrics(c.n_ll, c.n_ls, c.n_sl, c.n_ss, 1.0);
        REQUIRE(m.f1.defined());
        CHECK(std::abs(m.f1.value() - plain.f1) <= 1e-12);
    }
}

TEST_CASE("metrics are invariant under joint permutation (property)")
{
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Label> pred, truth;
        for (std::uint64_t i = 0, n = 1 + rng.below(40); i < n; ++i) {
            pred.push_back(rng.uniform() < 0.5 ? S : L);
            truth.push_back(rng.uniform() < 0.5 ? S : L);
        }
        const auto before = confusion(pred, truth);
        std::vector<std::size_t> perm(pred.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        rng.shuffle(std::span(perm));
        std::vector<Label> p2, t2;
        for (auto i : perm) {
            p2.push_back(pred[i]);
            t2.push_back(truth[i]);
        }
        CHECK(confusion(p2, t2) == before);
    }
}

TEST_CASE("ROC on perfectly separated scores")
{
    const std::vector<double> scores{0.9, 0.8, 0.3, 0.1};
    const std::vector<Label> truth{S, S, L, L};
    const auto roc = roc_curve(scores, truth);
    CHECK(roc.auc == 1.0);
    const bool through_corner = std::any_of(roc.points.begin(), roc.points.end(), [](const RocPoint& p) {
        return p.fp_rate == 0.0 && p.tp_rate == 1.0;
    });
    CHECK(through_corner);
    CHECK(roc.points.front().fp_rate == 0.0);
    CHECK(roc.points.front().tp_rate == 0.0);
    CHECK(roc.points.back().fp_rate == 1.0);
    CHECK(roc.points.back().tp_rate == 1.0);
    CHECK(std::isinf(roc.points.front().threshold));
}

TEST_CASE("ROC collapses tied scores")
{
    const std::vector<double> scores(6, 0.4);
    const std::vector<Label> truth{S, L, S, L, L, S};
    const auto roc = roc_curve(scores, truth);
    REQUIRE(roc.points.size() == 2);
    CHECK(roc.auc == 0.5);
}

TEST_CASE("ROC points match classify's strict threshold rule")
{
    const std::vector<double> scores{2, 1, 1, 0, -1};
    const std::vector<Label> truth{S, L, S, S, L};
    const auto roc = roc_curve(scores, truth);
    for (const auto& p : roc.points) {
        double tp = 0, fp = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] > p.threshold)
                (truth[i] == S ? tp : fp) += 1;
        }
        CHECK(p.tp_rate == tp / 3);
        CHECK(p.fp_rate == fp / 2);
    }
}

TEST_CASE("ROC monotone and sign reversal complements the AUC (property)")
{
    Rng rng(64);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> scores;
        std::vector<Label> truth{S, L};
        scores.push_back(std::floor(rng.uniform() * 10));
        scores.push_back(std::floor(rng.uniform() * 10));
        for (std::uint64_t i = 0, n = rng.below(60); i < n; ++i) {
            scores.push_back(std::floor(rng.uniform() * 10));
            truth.push_back(rng.uniform() < 0.5 ? S : L);
        }
        const auto roc = roc_curve(scores, truth);
        for (std::size_t i = 1; i < roc.points.size(); ++i) {
            CHECK(roc.points[i].fp_rate >= roc.points[i - 1].fp_rate);
            CHECK(roc.points[i].tp_rate >= roc.points[i - 1].tp_rate);
            CHECK(roc.points[i].threshold < roc.points[i - 1].threshold);
        }
        CHECK(roc.auc >= 0.0);
        CHECK(roc.auc <= 1.0);
        std::vector<double> negated(scores.size());
        std::transform(scores.begin(), scores.end(), negated.begin(), [](double s) { return -s; });
        CHECK(roc_curve(negated, truth).auc == doctest::Approx(1.0 - roc.auc).epsilon(1e-12));
    }
}

TEST_CASE("ROC errors")
{
    CHECK_THROWS_AS(roc_curve(std::vector<double>{1, 2}, std::vector<Label>{S, S}), UsageError);
    CHECK_THROWS_AS(roc_curve(std::vector<double>{1}, std::vector<Label>{S, L}), UsageError);
}

TEST_CASE("metrics CSV layout")
{
    const auto report = make_report(ConfusionCounts{5, 0, 3, 0}, default_lambdas());
    std::ostringstream out;
    write_metrics_csv(report, out);
    const auto csv = out.str();
    CHECK(csv.rfind("measure,lambda,value\n", 0) == 0);
    CHECK(csv.find("precision,,NA\n") != std::string::npos);
    CHECK(csv.find("accuracy,,0.625\n") != std::string::npos);
    CHECK(csv.find("w_acc,999,") != std::string::npos);
    CHECK(csv.find("tcr,9,1\n") != std::string::npos);

    std::ostringstream roc_out;
    write_roc_csv(roc_curve(std::vector<double>{1, 0}, std::vector<Label>{S, L}), roc_out);
    CHECK(roc_out.str() == "threshold,fp_rate,tp_rate\ninf,0,0\n0,0,1\n-inf,1,1\nauc,1\n");
}
