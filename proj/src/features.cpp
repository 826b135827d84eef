#include "sievekit/features.hpp"

#include "sievekit/error.hpp"
#include "sievekit/format.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sievekit {

namespace {

bool is_token_char(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char lower(char c)
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

void add_tokens(std::string_view text, TokenBag& bag)
{
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_token_char(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_token_char(text[j]))
            ++j;
        const std::size_t len = j - i;
        if (len >= min_token_length && len <= max_token_length) {
            std::string token(len, '\0');
            std::transform(text.begin() + static_cast<std::ptrdiff_t>(i),
                           text.begin() + static_cast<std::ptrdiff_t>(j), token.begin(), lower);
            ++bag[std::move(token)];
        }
        i = j;
    }
}

// Entropy in bits of a two-way split of counts; order-independent.
double entropy2(double x, double y)
{
    if (x > y)
        std::swap(x, y);
    const double t = x + y;
    if (t <= 0)
        return 0.0;
    double h = 0.0;
    for (double v : {x, y}) {
        if (v > 0) {
            const double p = v / t;
            h -= p * std::log2(p);
        }
    }
    return h;
}

} // namespace

TokenFields parse_token_fields(std::string_view text)
{
    TokenFields f{false, false};
    for (const auto& part : split_list(text)) {
        if (part == "subject")
            f.subject = true;
        else if (part == "body")
            f.body = true;
        else
            throw UsageError("unknown token field '" + part + "' (expected subject, body)");
    }
    if (!f.any())
        throw UsageError("at least one token field is required");
    return f;
}

std::string to_string(TokenFields fields)
{
    if (fields.subject && fields.body)
        return "subject,body";
    if (fields.subject)
        return "subject";
    if (fields.body)
        return "body";
    return "";
}

TokenBag tokenize(std::string_view text)
{
    TokenBag bag;
    add_tokens(text, bag);
    return bag;
}

TokenBag tokenize(const EmailMessage& message, TokenFields fields)
{
    TokenBag bag;
    if (fields.subject)
        add_tokens(message.subject, bag);
    if (fields.body)
        add_tokens(message.body, bag);
    return bag;
}

bool is_valid_token(std::string_view token)
{
    return token.size() >= min_token_length && token.size() <= max_token_length &&
           std::all_of(token.begin(), token.end(),
                       [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); });
}

Vocabulary build_vocabulary(std::span<const TokenBag> bags, std::span<const Label> labels)
{
    if (bags.size() != labels.size())
        throw UsageError("token bag and label counts differ");
    Vocabulary vocab;
    vocab.n_docs = static_cast<std::uint32_t>(bags.size());
    for (std::size_t i = 0; i < bags.size(); ++i) {
        const bool spam = labels[i] == Label::Spam;
        ++(spam ? vocab.n_spam : vocab.n_legit);
        for (const auto& [token, count] : bags[i]) {
            auto& stats = vocab.terms[token];
            ++stats.doc_freq;
            ++(spam ? stats.spam_docs : stats.legit_docs);
        }
    }
    for (const auto& [token, stats] : vocab.terms) {
        if (stats.spam_docs + stats.legit_docs != stats.doc_freq || stats.doc_freq == 0 ||
            stats.doc_freq > vocab.n_docs)
            throw std::logic_error("inconsistent vocabulary counts for '" + token + "'");
    }
    return vocab;
}

Vocabulary build_vocabulary(const LabeledDataset& train, TokenFields fields)
{
    if (train.empty())
        throw DataError("cannot build a vocabulary from an empty training set");
    std::vector<TokenBag> bags;
    std::vector<Label> labels;
    bags.reserve(train.size());
    labels.reserve(train.size());
    for (const auto& item : train) {
        bags.push_back(tokenize(item.message, fields));
        labels.push_back(item.label);
    }
    return build_vocabulary(bags, labels);
}

double information_gain(const TermStats& stats, const Vocabulary& vocab)
{
    const double n = vocab.n_docs;
    if (n <= 0)
        return 0.0;
    const double present_spam = stats.spam_docs;
    const double present_legit = stats.legit_docs;
    const double absent_spam = static_cast<double>(vocab.n_spam) - present_spam;
    const double absent_legit = static_cast<double>(vocab.n_legit) - present_legit;

    const double prior = entropy2(vocab.n_spam, vocab.n_legit);
    const double present = (present_spam + present_legit) / n * entropy2(present_spam, present_legit);
    const double absent = (absent_spam + absent_legit) / n * entropy2(absent_spam, absent_legit);
    return prior - (present + absent);
}

FeatureSet::FeatureSet(std::vector<std::string> tokens) : tokens_(std::move(tokens))
{
    index_.reserve(tokens_.size());
    for (std::size_t j = 0; j < tokens_.size(); ++j) {
        if (!is_valid_token(tokens_[j]))
            throw DataError("invalid feature token '" + tokens_[j] + "'");
        if (!index_.emplace(tokens_[j], static_cast<std::uint32_t>(j)).second)
            throw DataError("duplicate feature token '" + tokens_[j] + "'");
    }
}

std::ptrdiff_t FeatureSet::index_of(std::string_view token) const
{
    auto it = index_.find(std::string(token));
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

FeatureSet select_features(const Vocabulary& vocab, std::size_t d)
{
    if (d == 0)
        throw UsageError("number of features must be positive");
    if (vocab.empty())
        throw DataError("cannot select features from an empty vocabulary");

    struct Ranked {
        double gain;
        const std::string* token;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(vocab.size());
    for (const auto& [token, stats] : vocab.terms)
        ranked.push_back({information_gain(stats, vocab), &token});
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.gain != b.gain)
            return a.gain > b.gain;
        return *a.token < *b.token;
    });

    const std::size_t keep = std::min(d, ranked.size());
    std::vector<std::string> tokens;
    tokens.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
        tokens.push_back(*ranked[i].token);
    return FeatureSet(std::move(tokens));
}

FeatureVector::FeatureVector(std::vector<std::uint32_t> present) : present_(std::move(present))
{
    std::sort(present_.begin(), present_.end());
    present_.erase(std::unique(present_.begin(), present_.end()), present_.end());
}

bool FeatureVector::contains(std::uint32_t j) const
{
    return std::binary_search(present_.begin(), present_.end(), j);
}

FeatureVector vectorize(const TokenBag& bag, const FeatureSet& features)
{
    std::vector<std::uint32_t> present;
    for (const auto& [token, count] : bag) {
        if (count == 0)
            continue;
        if (auto j = features.index_of(token); j >= 0)
            present.push_back(static_cast<std::uint32_t>(j));
    }
    return FeatureVector(std::move(present));
}

TermCounts count_features(const TokenBag& bag, const FeatureSet& features)
{
    TermCounts tf;
    for (const auto& [token, count] : bag) {
        if (count == 0)
            continue;
        if (auto j = features.index_of(token); j >= 0)
            tf.emplace_back(static_cast<std::uint32_t>(j), count);
    }
    std::sort(tf.begin(), tf.end());
    return tf;
}

} // namespace sievekit
