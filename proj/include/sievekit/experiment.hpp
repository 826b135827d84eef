#pragma once

#include "sievekit/corpus.hpp"
#include "sievekit/metrics.hpp"
#include "sievekit/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sievekit {

/// One sweep: every (classifier, data size, feature count) cell is
/// subsampled, split, trained and evaluated at threshold 0.
struct ExperimentPlan {
    std::vector<ClassifierKind> classifiers;
    std::vector<std::size_t> data_sizes;
    std::vector<std::size_t> feature_counts;
    std::vector<double> lambdas;
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    TokenFields fields;
    Hyperparameters hyper;
};

/// Throws UsageError on empty lists, non-positive entries, or a data size
/// larger than the corpus. Empty lambdas are replaced by the defaults.
void validate(ExperimentPlan& plan, std::size_t corpus_size);

struct SweepRow {
    ClassifierKind classifier;
    std::size_t data_size;
    double spam_pct;
    std::size_t requested_features;
    MetricsReport report;
};

/// Rows ordered by classifier (plan order), then data size, then feature
/// count (plan order).
std::vector<SweepRow> run_experiment(ExperimentPlan plan, const LabeledDataset& corpus);

/// classifier,data_size,spam_pct,d,accuracy,precision,recall,fp_rate,
/// fn_rate,f1,w_err@<lambda>...
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::vector<double>& lambdas,
                     std::ostream& out);

/// Scores every message of `test` with `model` and tallies at `threshold`.
struct Evaluation {
    std::vector<double> scores;
    std::vector<Label> truths;
    ConfusionCounts counts;
};
Evaluation evaluate(const TrainedModel& model, const LabeledDataset& test, double threshold = 0.0);

} // namespace sievekit
