#include "sievekit/classifiers/svm.hpp"

#include "sievekit/error.hpp"
#include "sievekit/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sievekit {

double SvmModel::score(const FeatureVector& x) const
{
    double s = bias;
    for (auto j : x) {
        if (j < weights.size())
            s += weights[j];
    }
    return s;
}

double svm_objective(const SvmModel& model, std::span<const Example> data, double C)
{
    double reg = model.bias * model.bias;
    for (double w : model.weights)
        reg += w * w;
    double loss = 0.0;
    for (const auto& ex : data) {
        const double y = ex.y == Label::Spam ? 1.0 : -1.0;
        loss += std::max(0.0, 1.0 - y * model.score(ex.x));
    }
    return 0.5 * reg + C * loss;
}

namespace {

// Weight vector w = scale * v, with the bias stored as the last coordinate,
// so that shrinking is O(1) and updates touch only the present features.
class ScaledWeights {
public:
    explicit ScaledWeights(std::size_t dimension) : v_(dimension + 1, 0.0) {}

    double dot(const FeatureVector& x) const
    {
        double s = v_.back();
        for (auto j : x)
            s += v_[j];
        return scale_ * s;
    }

    void shrink(double factor)
    {
        if (factor <= 0.0) {
            std::fill(v_.begin(), v_.end(), 0.0);
            scale_ = 1.0;
            sq_norm_ = 0.0;
            return;
        }
        scale_ *= factor;
        if (scale_ < 1e-9)
            renormalize();
    }

    void add(const FeatureVector& x, double step)
    {
        const double delta = step / scale_;
        auto bump = [&](double& vj) {
            sq_norm_ += delta * (2.0 * vj + delta);
            vj += delta;
        };
        for (auto j : x)
            bump(v_[j]);
        bump(v_.back());
    }

    void project(double radius_sq)
    {
        const double norm_sq = scale_ * scale_ * sq_norm_;
        if (norm_sq > radius_sq)
            scale_ *= std::sqrt(radius_sq / norm_sq);
    }

    SvmModel snapshot() const
    {
        SvmModel m;
        m.weights.resize(v_.size() - 1);
        for (std::size_t j = 0; j + 1 < v_.size(); ++j)
            m.weights[j] = scale_ * v_[j];
        m.bias = scale_ * v_.back();
        return m;
    }

private:
    void renormalize()
    {
        for (double& x : v_)
            x *= scale_;
        scale_ = 1.0;
        sq_norm_ = std::inner_product(v_.begin(), v_.end(), v_.begin(), 0.0);
    }

    std::vector<double> v_;
    double scale_ = 1.0;
    double sq_norm_ = 0.0;
};

bool all_finite(const SvmModel& m)
{
    return std::isfinite(m.bias) &&
           std::all_of(m.weights.begin(), m.weights.end(), [](double w) { return std::isfinite(w); });
}

} // namespace

SvmModel train_svm(std::span<const Example> data, std::size_t dimension, const SvmParams& params)
{
    if (!(params.C > 0.0) || !std::isfinite(params.C))
        throw UsageError("SVM cost C must be positive");
    if (params.epochs == 0)
        throw UsageError("SVM epochs must be positive");
    std::size_t n_spam = 0;
    for (const auto& ex : data) {
        if (ex.y == Label::Spam)
            ++n_spam;
        for (auto j : ex.x)
            if (j >= dimension)
                throw DataError("feature index out of range in SVM training data");
    }
    require_both_classes(n_spam, data.size() - n_spam, "SVM");

    const double n = static_cast<double>(data.size());
    const double lambda = 1.0 / (params.C * n);
    const double radius_sq = 1.0 / lambda;

    ScaledWeights w(dimension);
    Rng rng(params.seed);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    const std::uint32_t average_from = params.epochs / 2;
    SvmModel average;
    average.weights.assign(dimension, 0.0);
    std::uint32_t averaged = 0;

    double t = 0.0;
    for (std::uint32_t epoch = 0; epoch < params.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        for (auto i : order) {
            t += 1.0;
            const auto& ex = data[i];
            const double y = ex.y == Label::Spam ? 1.0 : -1.0;
            const double margin = y * w.dot(ex.x);
            w.shrink(1.0 - 1.0 / t);
            if (margin < 1.0)
                w.add(ex.x, y / (lambda * t));
            w.project(radius_sq);
        }
        if (epoch >= average_from) {
            const auto snap = w.snapshot();
            ++averaged;
            const double inv = 1.0 / averaged;
            for (std::size_t j = 0; j < dimension; ++j)
                average.weights[j] += (snap.weights[j] - average.weights[j]) * inv;
            average.bias += (snap.bias - average.bias) * inv;
        }
    }

    const SvmModel last = w.snapshot();
    if (!all_finite(last) || !all_finite(average))
        throw TrainingError("SVM training diverged (non-finite weights)");

    SvmModel zero;
    zero.weights.assign(dimension, 0.0);
    const SvmModel* best = &average;
    double best_obj = svm_objective(average, data, params.C);
    for (const SvmModel* candidate : std::initializer_list<const SvmModel*>{&last, &zero}) {
        const double obj = svm_objective(*candidate, data, params.C);
        if (obj < best_obj) {
            best = candidate;
            best_obj = obj;
        }
    }
    return *best;
}

} // namespace sievekit
