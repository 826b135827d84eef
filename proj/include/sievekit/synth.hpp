#pragma once

#include "sievekit/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace sievekit {

/// Unigram generator description.
struct GeneratorSpec {
    std::uint32_t n_messages = 1000;
    double spam_fraction = 0.5;
    std::map<std::string, double> spam_tokens;
    std::map<std::string, double> legit_tokens;
    std::uint32_t min_tokens = 10;
    std::uint32_t max_tokens = 30;
    std::uint64_t seed = 0;
};

/// Throws ConfigError when a distribution is empty, has a negative entry,
/// does not sum to 1 within 1e-9, or names a token the tokenizer would not
/// reproduce; or when the fraction or token range is invalid.
void validate(const GeneratorSpec& spec);

/// key=value lines; '#' starts a comment.
///
///   n_messages=2000
///   spam_fraction=0.4
///   tokens_per_message=10-30
///   seed=7
///   spam.<token>=<probability>
///   legit.<token>=<probability>
GeneratorSpec parse_generator_spec(std::istream& in);
GeneratorSpec load_generator_spec(const std::filesystem::path& path);
void write_generator_spec(const GeneratorSpec& spec, std::ostream& out);

/// Message i draws from Rng(seed, i): a label (spam iff uniform() <
/// spam_fraction), a length uniform in [min_tokens, max_tokens], then i.i.d.
/// tokens by inverse CDF over the label's distribution in token order. The
/// body is the tokens joined by single spaces; there are no headers. Ids are
/// "spam/NNNNNN.eml" or "ham/NNNNNN.eml", items ordered as load_dataset
/// would order them.
LabeledDataset generate(const GeneratorSpec& spec);

} // namespace sievekit
