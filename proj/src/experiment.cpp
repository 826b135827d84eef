#include "sievekit/experiment.hpp"

#include "sievekit/error.hpp"
#include "sievekit/format.hpp"

#include <cmath>
#include <optional>
#include <ostream>

namespace sievekit {

void validate(ExperimentPlan& plan, std::size_t corpus_size)
{
    if (plan.classifiers.empty())
        throw UsageError("experiment needs at least one classifier");
    if (plan.data_sizes.empty())
        throw UsageError("experiment needs at least one data size");
    if (plan.feature_counts.empty())
        throw UsageError("experiment needs at least one feature count");
    if (plan.lambdas.empty())
        plan.lambdas = default_lambdas();
    for (auto size : plan.data_sizes) {
        if (size == 0)
            throw UsageError("data sizes must be positive");
        if (size > corpus_size)
            throw UsageError("data size " + std::to_string(size) + " exceeds corpus size " +
                             std::to_string(corpus_size));
    }
    for (auto d : plan.feature_counts)
        if (d == 0)
            throw UsageError("feature counts must be positive");
    for (double l : plan.lambdas)
        if (!(l > 0.0) || !std::isfinite(l))
            throw UsageError("lambda values must be positive");
    if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0))
        throw UsageError("train fraction must lie strictly between 0 and 1");
}

Evaluation evaluate(const TrainedModel& model, const LabeledDataset& test, double threshold)
{
    Evaluation ev;
    ev.scores.reserve(test.size());
    ev.truths.reserve(test.size());
    for (const auto& item : test) {
        const double s = model.score(item.message);
        ev.scores.push_back(s);
        ev.truths.push_back(item.label);
        ev.counts.add(item.label, label_for(s, threshold));
    }
    return ev;
}

std::vector<SweepRow> run_experiment(ExperimentPlan plan, const LabeledDataset& corpus)
{
    validate(plan, corpus.size());

    const std::size_t n_class = plan.classifiers.size();
    const std::size_t n_size = plan.data_sizes.size();
    const std::size_t n_feat = plan.feature_counts.size();
    std::vector<std::optional<SweepRow>> cells(n_class * n_size * n_feat);

    for (std::size_t si = 0; si < n_size; ++si) {
        const auto sample = subsample(corpus, plan.data_sizes[si], plan.seed);
        const auto parts = split(sample, plan.train_fraction, plan.seed);
        const double spam_pct = 100.0 * static_cast<double>(sample.spam_count()) /
                                static_cast<double>(sample.size());
        for (std::size_t ci = 0; ci < n_class; ++ci) {
            for (std::size_t fi = 0; fi < n_feat; ++fi) {
                TrainOptions opts;
                opts.kind = plan.classifiers[ci];
                opts.features = plan.feature_counts[fi];
                opts.fields = plan.fields;
                opts.hyper = plan.hyper;
                opts.hyper.seed = plan.seed;
                const auto model = train_model(parts.train, opts);
                const auto ev = evaluate(model, parts.test);
                cells[(ci * n_size + si) * n_feat + fi] =
                    SweepRow{opts.kind, plan.data_sizes[si], spam_pct, opts.features,
                             make_report(ev.counts, plan.lambdas)};
            }
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(cells.size());
    for (auto& cell : cells)
        rows.push_back(std::move(*cell));
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::vector<double>& lambdas,
                     std::ostream& out)
{
    out << "classifier,data_size,spam_pct,d,accuracy,precision,recall,fp_rate,fn_rate,f1";
    for (double l : lambdas)
        out << ",w_err@" << format_real(l);
    out << '\n';
    for (const auto& row : rows) {
        const auto& b = row.report.basic;
        out << to_string(row.classifier) << ',' << row.data_size << ','
            << format_real(row.spam_pct) << ',' << row.requested_features << ','
            << b.accuracy.str() << ',' << b.precision.str() << ',' << b.recall.str() << ','
            << b.fp_rate.str() << ',' << b.fn_rate.str() << ',' << b.f1.str();
        for (const auto& w : row.report.weighted)
            out << ',' << w.w_err.str();
        out << '\n';
    }
}

} // namespace sievekit
