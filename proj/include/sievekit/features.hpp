#pragma once

#include "sievekit/corpus.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sievekit {

/// Which parts of a message feed the tokenizer.
struct TokenFields {
    bool subject = true;
    bool body = true;

    bool any() const { return subject || body; }
    bool operator==(const TokenFields&) const = default;
};

/// Parses "subject", "body" or "subject,body". Throws UsageError.
TokenFields parse_token_fields(std::string_view text);
std::string to_string(TokenFields fields);

constexpr std::size_t min_token_length = 2;
constexpr std::size_t max_token_length = 40;

/// token -> occurrence count (always >= 1). Ordered for determinism.
using TokenBag = std::map<std::string, std::uint32_t, std::less<>>;

/// Lowercased maximal runs of ASCII letters and digits, 2 to 40 characters.
TokenBag tokenize(std::string_view text);
TokenBag tokenize(const EmailMessage& message, TokenFields fields);

bool is_valid_token(std::string_view token);

struct TermStats {
    std::uint32_t doc_freq = 0;
    std::uint32_t spam_docs = 0;
    std::uint32_t legit_docs = 0;
};

/// Document frequencies over a training set, split by class.
struct Vocabulary {
    std::map<std::string, TermStats, std::less<>> terms;
    std::uint32_t n_docs = 0;
    std::uint32_t n_spam = 0;
    std::uint32_t n_legit = 0;

    bool empty() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
};

Vocabulary build_vocabulary(std::span<const TokenBag> bags, std::span<const Label> labels);
/// Throws DataError on an empty training set.
Vocabulary build_vocabulary(const LabeledDataset& train, TokenFields fields);

/// Information gain, in bits, of the token's presence indicator about the
/// label. Unsmoothed maximum-likelihood estimates; 0 log 0 = 0.
double information_gain(const TermStats& stats, const Vocabulary& vocab);

/// Ordered list of selected tokens; index j is feature j.
class FeatureSet {
public:
    FeatureSet() = default;
    /// Throws DataError on duplicate or invalid tokens.
    explicit FeatureSet(std::vector<std::string> tokens);

    std::size_t size() const { return tokens_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    const std::string& operator[](std::size_t j) const { return tokens_[j]; }
    /// Feature index of the token, or -1.
    std::ptrdiff_t index_of(std::string_view token) const;

    bool operator==(const FeatureSet& other) const { return tokens_ == other.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// Top-d tokens by information gain, ties broken by token order. Returns
/// every token when d >= vocabulary size. d == 0 -> UsageError, empty
/// vocabulary -> DataError.
FeatureSet select_features(const Vocabulary& vocab, std::size_t d);

/// Sparse binary vector: the sorted indices of present features.
class FeatureVector {
public:
    FeatureVector() = default;
    /// Sorts and deduplicates.
    explicit FeatureVector(std::vector<std::uint32_t> present);

    std::span<const std::uint32_t> indices() const { return present_; }
    std::size_t count() const { return present_.size(); }
    bool empty() const { return present_.empty(); }
    bool contains(std::uint32_t j) const;

    auto begin() const { return present_.begin(); }
    auto end() const { return present_.end(); }

    bool operator==(const FeatureVector&) const = default;

private:
    std::vector<std::uint32_t> present_;
};

FeatureVector vectorize(const TokenBag& bag, const FeatureSet& features);

/// (feature index, term frequency) pairs sorted by index; the tf input of
/// the TF-IDF classifier.
using TermCounts = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

TermCounts count_features(const TokenBag& bag, const FeatureSet& features);

} // namespace sievekit
