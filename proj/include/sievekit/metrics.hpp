#pragma once

#include "sievekit/corpus.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sievekit {

using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion; every finite double is a dyadic rational.
Rational to_rational(double value);

/// n_LL, n_LS, n_SL, n_SS: legitimate->legitimate, legitimate->spam,
/// spam->legitimate, spam->spam.
struct ConfusionCounts {
    std::uint64_t n_ll = 0;
    std::uint64_t n_ls = 0;
    std::uint64_t n_sl = 0;
    std::uint64_t n_ss = 0;

    std::uint64_t total() const { return n_ll + n_ls + n_sl + n_ss; }
    std::uint64_t legit() const { return n_ll + n_ls; }
    std::uint64_t spam() const { return n_sl + n_ss; }

    void add(Label truth, Label predicted);
    bool operator==(const ConfusionCounts&) const = default;
};

/// Throws UsageError on length mismatch or empty input.
ConfusionCounts confusion(std::span<const Label> predictions, std::span<const Label> truths);

/// A measure value: an exact rational, undefined (0/0 style), or +infinity.
class Measure {
public:
    static Measure undefined() { return Measure(State::Undefined); }
    static Measure infinite() { return Measure(State::Infinite); }
    explicit Measure(Rational value) : state_(State::Defined), value_(std::move(value)) {}

    bool defined() const { return state_ == State::Defined; }
    bool infinite_value() const { return state_ == State::Infinite; }
    const Rational& exact() const { return value_; }
    /// NaN when undefined, +inf when infinite.
    double value() const;
    /// "NA", "inf", or format_real(value()).
    std::string str() const;

private:
    enum class State { Defined, Undefined, Infinite };
    explicit Measure(State s) : state_(s) {}

    State state_;
    Rational value_;
};

struct BasicMetrics {
    Measure accuracy;
    Measure error_rate;
    Measure fp_rate;
    Measure fn_rate;
    Measure recall;
    Measure precision;
    Measure f1;
};

/// Accuracy, error rate, FP/FN rates, recall, precision, f1 by their count
/// formulas. A zero denominator yields an undefined measure, never 0.
BasicMetrics compute_metrics(const ConfusionCounts& c);

struct WeightedMetrics {
    double lambda;
    Measure w_acc;
    Measure w_err;
    Measure tcr;
};

/// lambda weighs one false positive as lambda false negatives.
///   W_Acc = (l n_LL + n_SS) / (l (n_LL + n_LS) + n_SL + n_SS)
///   W_Err = (l n_LS + n_SL) / (same)
///   TCR   = (n_SL + n_SS) / (l n_LS + n_SL), +inf when the denominator is 0
/// lambda <= 0 or non-finite -> UsageError.
WeightedMetrics compute_weighted(const ConfusionCounts& c, double lambda);

struct MetricsReport {
    ConfusionCounts counts;
    BasicMetrics basic;
    std::vector<WeightedMetrics> weighted;
};

MetricsReport make_report(const ConfusionCounts& c, std::span<const double> lambdas);

/// The default cost weights 1, 9, 999.
std::vector<double> default_lambdas();

/// `measure,lambda,value` rows; lambda is empty for unweighted measures.
void write_metrics_csv(const MetricsReport& report, std::ostream& out);
/// Human-readable aligned table.
void write_metrics_table(const MetricsReport& report, std::ostream& out);

struct RocPoint {
    double threshold;
    double fp_rate;
    double tp_rate;
};

struct RocCurve {
    /// Descending thresholds: +inf first (0,0), -inf last (1,1).
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// Sweeps the threshold of `score > threshold` from +inf down to -inf,
/// stopping just below each distinct score so tied scores move together.
/// AUC by the trapezoidal rule. Throws UsageError unless both classes are
/// present and lengths match.
RocCurve roc_curve(std::span<const double> scores, std::span<const Label> truths);

/// `threshold,fp_rate,tp_rate` rows followed by `auc,<value>`.
void write_roc_csv(const RocCurve& curve, std::ostream& out);

} // namespace sievekit
