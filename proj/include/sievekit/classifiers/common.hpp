#pragma once

#include "sievekit/corpus.hpp"
#include "sievekit/features.hpp"

#include <cstddef>
#include <span>

namespace sievekit {

struct Example {
    FeatureVector x;
    Label y;
};

struct Verdict {
    Label label;
    double score;
};

/// SPAM iff score > threshold; ties go to LEGITIMATE.
inline Label label_for(double score, double threshold = 0.0)
{
    return score > threshold ? Label::Spam : Label::Legitimate;
}

/// Throws TrainingError unless both classes have at least one example.
void require_both_classes(std::size_t n_spam, std::size_t n_legit, const char* trainer);

} // namespace sievekit
