#pragma once

#include "sievekit/classifiers/common.hpp"

#include <cstdint>
#include <vector>

namespace sievekit {

struct SvmParams {
    double C = 1.0;
    std::uint32_t epochs = 20;
    std::uint64_t seed = 0;
};

/// Linear soft-margin SVM. With a linear kernel the dual expansion
/// sum_i alpha_i y_i <x_i, x> + b collapses to <w, x> + b, so the model is a
/// weight vector and a bias. Labels map SPAM -> +1, LEGITIMATE -> -1.
struct SvmModel {
    std::vector<double> weights;
    double bias = 0.0;

    /// Signed margin w.x + b.
    double score(const FeatureVector& x) const;
};

/// 0.5 * (|w|^2 + b^2) + C * sum_i max(0, 1 - y_i (w.x_i + b))
double svm_objective(const SvmModel& model, std::span<const Example> data, double C);

/// Stochastic subgradient descent (Pegasos step size 1/(lambda t) with
/// lambda = 1/(C n)) on the objective above, one seeded shuffle of the data
/// per epoch. Returns whichever of the final iterate and the running average
/// has the lower objective; that objective never exceeds the zero model's.
/// Throws TrainingError on single-class data or non-finite weights.
SvmModel train_svm(std::span<const Example> data, std::size_t dimension, const SvmParams& params);

} // namespace sievekit
