#include "sievekit/error.hpp"
#include "sievekit/experiment.hpp"
#include "sievekit/synth.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace sievekit;

namespace {

LabeledDataset corpus()
{
    GeneratorSpec spec;
    spec.n_messages = 400;
    spec.spam_fraction = 0.4;
    spec.spam_tokens = {{"cash", 0.2}, {"free", 0.2}, {"offer", 0.2}, {"today", 0.2}, {"win", 0.2}};
    spec.legit_tokens = {{"agenda", 0.25}, {"notes", 0.25}, {"today", 0.25}, {"review", 0.25}};
    spec.min_tokens = 3;
    spec.max_tokens = 7;
    spec.seed = 8;
    return generate(spec);
}

ExperimentPlan plan()
{
    ExperimentPlan p;
    p.classifiers = {ClassifierKind::NaiveBayes, ClassifierKind::Knn};
    p.data_sizes = {100, 300};
    p.feature_counts = {2, 5, 9};
    p.seed = 5;
    return p;
}

} // namespace

TEST_CASE("sweep has one row per cell in a fixed order")
{
    const auto data = corpus();
    const auto rows = run_experiment(plan(), data);
    REQUIRE(rows.size() == 2 * 2 * 3);
    CHECK(rows[0].classifier == ClassifierKind::NaiveBayes);
    CHECK(rows[6].classifier == ClassifierKind::Knn);
    CHECK(rows[3].data_size == 300);
    CHECK(rows[4].requested_features == 5);
    for (const auto& row : rows) {
        const double test_share = 0.3 * static_cast<double>(row.data_size);
        CHECK(static_cast<double>(row.report.counts.total()) >= test_share - 1e-9);
        CHECK(static_cast<double>(row.report.counts.total()) <= test_share + 2);
        CHECK(row.report.weighted.size() == 3);
    }

    std::ostringstream out;
    write_sweep_csv(rows, default_lambdas(), out);
    const auto csv = out.str();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
    CHECK(csv.rfind("classifier,data_size,spam_pct,d,accuracy,precision,recall,fp_rate,fn_rate,f1,"
                    "w_err@1,w_err@9,w_err@999\n",
                    0) == 0);
}

TEST_CASE("sweeps are deterministic")
{
    const auto data = corpus();
    std::ostringstream a, b;
    write_sweep_csv(run_experiment(plan(), data), default_lambdas(), a);
    write_sweep_csv(run_experiment(plan(), data), default_lambdas(), b);
    CHECK(a.str() == b.str());
}

TEST_CASE("experiment plan validation")
{
    auto p = plan();
    CHECK_NOTHROW(validate(p, 400));
    CHECK(p.lambdas == default_lambdas());
    p.data_sizes = {401};
    CHECK_THROWS_AS(validate(p, 400), UsageError);
    p = plan();
    p.feature_counts.clear();
    CHECK_THROWS_AS(validate(p, 400), UsageError);
    p = plan();
    p.classifiers.clear();
    CHECK_THROWS_AS(validate(p, 400), UsageError);
    p = plan();
    p.feature_counts = {0};
    CHECK_THROWS_AS(validate(p, 400), UsageError);
    p = plan();
    p.lambdas = {-1};
    CHECK_THROWS_AS(validate(p, 400), UsageError);
}
