#include "sievekit/model.hpp"

#include "sievekit/error.hpp"

#include <string>

namespace sievekit {

std::string_view to_string(ClassifierKind kind)
{
    switch (kind) {
    case ClassifierKind::NaiveBayes: return "nb";
    case ClassifierKind::Svm: return "svm";
    case ClassifierKind::TfIdf: return "tfidf";
    case ClassifierKind::Knn: return "knn";
    }
    return "?";
}

std::optional<ClassifierKind> parse_classifier_kind(std::string_view text)
{
    for (auto kind : {ClassifierKind::NaiveBayes, ClassifierKind::Svm, ClassifierKind::TfIdf,
                      ClassifierKind::Knn}) {
        if (text == to_string(kind))
            return kind;
    }
    return std::nullopt;
}

TrainedModel::TrainedModel(ModelParams params, FeatureSet features, TokenFields fields,
                           Hyperparameters hyper)
    : params_(std::move(params)), features_(std::move(features)), fields_(fields), hyper_(hyper)
{
    if (!fields_.any())
        throw UsageError("a model needs at least one token field");
}

ClassifierKind TrainedModel::kind() const
{
    return static_cast<ClassifierKind>(params_.index());
}

double TrainedModel::score(const TokenBag& bag) const
{
    struct Scorer {
        const TokenBag& bag;
        const FeatureSet& fs;
        double operator()(const NaiveBayesModel& m) const { return m.score(vectorize(bag, fs)); }
        double operator()(const SvmModel& m) const { return m.score(vectorize(bag, fs)); }
        double operator()(const TfIdfModel& m) const { return m.score(count_features(bag, fs)); }
        double operator()(const KnnModel& m) const { return m.score(vectorize(bag, fs)); }
    };
    return std::visit(Scorer{bag, features_}, params_);
}

double TrainedModel::score(const EmailMessage& message) const
{
    return score(tokenize(message, fields_));
}

Verdict TrainedModel::classify(const EmailMessage& message, double threshold) const
{
    const double s = score(message);
    return {label_for(s, threshold), s};
}

TrainedModel train_model(const LabeledDataset& train, const TrainOptions& options)
{
    if (options.features == 0)
        throw UsageError("number of features must be positive");
    if (!options.fields.any())
        throw UsageError("at least one token field is required");
    require_both_classes(train.spam_count(), train.legit_count(), to_string(options.kind).data());

    std::vector<TokenBag> bags;
    std::vector<Label> labels;
    bags.reserve(train.size());
    labels.reserve(train.size());
    for (const auto& item : train) {
        bags.push_back(tokenize(item.message, options.fields));
        labels.push_back(item.label);
    }
    const auto vocab = build_vocabulary(bags, labels);
    if (vocab.empty())
        throw TrainingError("training messages contain no tokens");
    auto features = select_features(vocab, options.features);
    if (features.size() < options.features)
        warn("requested " + std::to_string(options.features) + " features but the vocabulary has only " +
             std::to_string(features.size()) + "; using " + std::to_string(features.size()));
    const std::size_t d = features.size();
    const auto& hp = options.hyper;

    auto binary_examples = [&] {
        std::vector<Example> data;
        data.reserve(bags.size());
        for (std::size_t i = 0; i < bags.size(); ++i)
            data.push_back({vectorize(bags[i], features), labels[i]});
        return data;
    };

    ModelParams params = [&]() -> ModelParams {
        switch (options.kind) {
        case ClassifierKind::NaiveBayes:
            return train_naive_bayes(binary_examples(), d, hp.alpha);
        case ClassifierKind::Svm:
            return train_svm(binary_examples(), d, SvmParams{hp.C, hp.epochs, hp.seed});
        case ClassifierKind::TfIdf: {
            std::vector<TfIdfExample> data;
            data.reserve(bags.size());
            for (std::size_t i = 0; i < bags.size(); ++i)
                data.push_back({count_features(bags[i], features), labels[i]});
            return train_tfidf(data, d);
        }
        case ClassifierKind::Knn:
            if (hp.k > train.size())
                throw TrainingError("k = " + std::to_string(hp.k) + " exceeds training size " +
                                    std::to_string(train.size()));
            return KnnModel(binary_examples(), d, KnnParams{hp.k, hp.vote_exponent});
        }
        throw UsageError("unknown classifier kind");
    }();

    return TrainedModel(std::move(params), std::move(features), options.fields, hp);
}

} // namespace sievekit
