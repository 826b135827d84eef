#include "sievekit/metrics.hpp"

#include "sievekit/error.hpp"
#include "sievekit/format.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

namespace sievekit {

Rational to_rational(double value)
{
    if (!std::isfinite(value))
        throw UsageError("cannot represent a non-finite value exactly");
    if (value == 0.0)
        return Rational(0);
    int exp = 0;
    const double mant = std::frexp(value, &exp);
    // mant * 2^53 is an integer for every finite double.
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    boost::multiprecision::cpp_int num(scaled);
    boost::multiprecision::cpp_int den(1);
    if (exp >= 0)
        num <<= exp;
    else
        den <<= -exp;
    return Rational(num, den);
}

void ConfusionCounts::add(Label truth, Label predicted)
{
    if (truth == Label::Legitimate)
        ++(predicted == Label::Legitimate ? n_ll : n_ls);
    else
        ++(predicted == Label::Legitimate ? n_sl : n_ss);
}

ConfusionCounts confusion(std::span<const Label> predictions, std::span<const Label> truths)
{
    if (predictions.size() != truths.size())
        throw UsageError("prediction and truth lists differ in length (" +
                         std::to_string(predictions.size()) + " vs " +
                         std::to_string(truths.size()) + ")");
    if (predictions.empty())
        throw UsageError("cannot tally an empty prediction list");
    ConfusionCounts c;
    for (std::size_t i = 0; i < truths.size(); ++i)
        c.add(truths[i], predictions[i]);
    return c;
}

double Measure::value() const
{
    switch (state_) {
    case State::Undefined: return std::numeric_limits<double>::quiet_NaN();
    case State::Infinite: return std::numeric_limits<double>::infinity();
    case State::Defined: break;
    }
    return value_.convert_to<double>();
}

std::string Measure::str() const
{
    if (state_ == State::Undefined)
        return "NA";
    if (state_ == State::Infinite)
        return "inf";
    return format_real(value());
}

namespace {

Measure ratio(const Rational& num, const Rational& den)
{
    if (den == 0)
        return Measure::undefined();
    return Measure(num / den);
}

Measure ratio(std::uint64_t num, std::uint64_t den)
{
    return ratio(Rational(num), Rational(den));
}

} // namespace

BasicMetrics compute_metrics(const ConfusionCounts& c)
{
    const auto total = c.total();
    BasicMetrics m{
        ratio(c.n_ll + c.n_ss, total),
        ratio(c.n_ls + c.n_sl, total),
        ratio(c.n_ls, c.n_ll + c.n_ls),
        ratio(c.n_sl, c.n_sl + c.n_ss),
        ratio(c.n_ss, c.n_sl + c.n_ss),
        ratio(c.n_ss, c.n_ls + c.n_ss),
        Measure::undefined(),
    };
    if (m.precision.defined() && m.recall.defined()) {
        const Rational& p = m.precision.exact();
        const Rational& r = m.recall.exact();
        m.f1 = ratio(2 * p * r, p + r);
    }
    return m;
}

WeightedMetrics compute_weighted(const ConfusionCounts& c, double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw UsageError("lambda must be a positive finite real");
    const Rational l = to_rational(lambda);
    const Rational ll(c.n_ll), ls(c.n_ls), sl(c.n_sl), ss(c.n_ss);

    const Rational denom = l * (ll + ls) + sl + ss;
    const Rational tcr_denom = l * ls + sl;
    WeightedMetrics w{
        lambda,
        ratio(l * ll + ss, denom),
        ratio(l * ls + sl, denom),
        tcr_denom == 0 ? Measure::infinite() : Measure((sl + ss) / tcr_denom),
    };
    if (c.total() == 0)
        w.tcr = Measure::undefined();
    return w;
}

std::vector<double> default_lambdas()
{
    return {1.0, 9.0, 999.0};
}

MetricsReport make_report(const ConfusionCounts& c, std::span<const double> lambdas)
{
    MetricsReport report{c, compute_metrics(c), {}};
    for (double l : lambdas)
        report.weighted.push_back(compute_weighted(c, l));
    return report;
}

void write_metrics_csv(const MetricsReport& report, std::ostream& out)
{
    const auto& c = report.counts;
    const auto& b = report.basic;
    out << "measure,lambda,value\n";
    out << "n_ll,," << c.n_ll << '\n'
        << "n_ls,," << c.n_ls << '\n'
        << "n_sl,," << c.n_sl << '\n'
        << "n_ss,," << c.n_ss << '\n';
    const std::pair<const char*, const Measure*> rows[] = {
        {"accuracy", &b.accuracy}, {"error_rate", &b.error_rate}, {"fp_rate", &b.fp_rate},
        {"fn_rate", &b.fn_rate},   {"recall", &b.recall},         {"precision", &b.precision},
        {"f1", &b.f1},
    };
    for (const auto& [name, m] : rows)
        out << name << ",," << m->str() << '\n';
    for (const auto& w : report.weighted) {
        const auto l = format_real(w.lambda);
        out << "w_acc," << l << ',' << w.w_acc.str() << '\n'
            << "w_err," << l << ',' << w.w_err.str() << '\n'
            << "tcr," << l << ',' << w.tcr.str() << '\n';
    }
}

void write_metrics_table(const MetricsReport& report, std::ostream& out)
{
    const auto& c = report.counts;
    const auto& b = report.basic;
    auto row = [&](const std::string& name, const std::string& value) {
        out << "  " << std::left << std::setw(22) << name << std::right << std::setw(14) << value
            << '\n';
    };
    out << "confusion  L->L " << c.n_ll << "  L->S " << c.n_ls << "  S->L " << c.n_sl << "  S->S "
        << c.n_ss << '\n';
    row("accuracy", b.accuracy.str());
    row("error rate", b.error_rate.str());
    row("false positive rate", b.fp_rate.str());
    row("false negative rate", b.fn_rate.str());
    row("recall", b.recall.str());
    row("precision", b.precision.str());
    row("f1", b.f1.str());
    for (const auto& w : report.weighted) {
        const auto l = format_real(w.lambda);
        row("weighted acc (" + l + ")", w.w_acc.str());
        row("weighted err (" + l + ")", w.w_err.str());
        row("TCR (" + l + ")", w.tcr.str());
    }
}

RocCurve roc_curve(std::span<const double> scores, std::span<const Label> truths)
{
    if (scores.size() != truths.size())
        throw UsageError("score and truth lists differ in length");
    if (std::any_of(scores.begin(), scores.end(), [](double s) { return std::isnan(s); }))
        throw UsageError("ROC scores must not be NaN");
    const auto positives = static_cast<std::size_t>(
        std::count(truths.begin(), truths.end(), Label::Spam));
    const std::size_t negatives = truths.size() - positives;
    if (positives == 0 || negatives == 0)
        throw UsageError("ROC needs both spam and legitimate examples");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    constexpr double inf = std::numeric_limits<double>::infinity();
    RocCurve curve;
    curve.points.push_back({inf, 0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < order.size();) {
        const double s = scores[order[i]];
        for (; i < order.size() && scores[order[i]] == s; ++i)
            ++(truths[order[i]] == Label::Spam ? tp : fp);
        const double threshold = i < order.size() ? scores[order[i]] : -inf;
        curve.points.push_back({threshold, static_cast<double>(fp) / negatives,
                                static_cast<double>(tp) / positives});
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        curve.auc += (b.fp_rate - a.fp_rate) * (a.tp_rate + b.tp_rate) / 2.0;
    }
    return curve;
}

void write_roc_csv(const RocCurve& curve, std::ostream& out)
{
    out << "threshold,fp_rate,tp_rate\n";
    for (const auto& p : curve.points)
        out << format_real(p.threshold) << ',' << format_real(p.fp_rate) << ','
            << format_real(p.tp_rate) << '\n';
    out << "auc," << format_real(curve.auc) << '\n';
}

} // namespace sievekit
