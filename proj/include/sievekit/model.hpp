#pragma once

#include "sievekit/classifiers/knn.hpp"
#include "sievekit/classifiers/naive_bayes.hpp"
#include "sievekit/classifiers/svm.hpp"
#include "sievekit/classifiers/tfidf.hpp"
#include "sievekit/corpus.hpp"
#include "sievekit/features.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

namespace sievekit {

enum class ClassifierKind { NaiveBayes, Svm, TfIdf, Knn };

/// "nb", "svm", "tfidf", "knn"
std::string_view to_string(ClassifierKind kind);
std::optional<ClassifierKind> parse_classifier_kind(std::string_view text);

struct Hyperparameters {
    double alpha = 1.0;
    double C = 1.0;
    std::uint32_t epochs = 20;
    std::uint32_t k = 5;
    double vote_exponent = 1.0;
    std::uint64_t seed = 0;
};

struct TrainOptions {
    ClassifierKind kind = ClassifierKind::NaiveBayes;
    std::size_t features = 50;
    TokenFields fields;
    Hyperparameters hyper;
};

using ModelParams = std::variant<NaiveBayesModel, SvmModel, TfIdfModel, KnnModel>;

/// A classifier together with the tokenizer fields and feature set it was
/// trained with, so that any message can be scored.
class TrainedModel {
public:
    TrainedModel(ModelParams params, FeatureSet features, TokenFields fields,
                 Hyperparameters hyper);

    ClassifierKind kind() const;
    const ModelParams& params() const { return params_; }
    const FeatureSet& features() const { return features_; }
    TokenFields fields() const { return fields_; }
    const Hyperparameters& hyper() const { return hyper_; }

    double score(const TokenBag& bag) const;
    double score(const EmailMessage& message) const;
    Verdict classify(const EmailMessage& message, double threshold = 0.0) const;

private:
    ModelParams params_;
    FeatureSet features_;
    TokenFields fields_;
    Hyperparameters hyper_;
};

/// Full pipeline on an already chosen training set: tokenize, build the
/// vocabulary, select up to options.features tokens, train. Warns when
/// fewer features than requested exist.
TrainedModel train_model(const LabeledDataset& train, const TrainOptions& options);

} // namespace sievekit
