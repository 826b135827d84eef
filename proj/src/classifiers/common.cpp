#include "sievekit/classifiers/common.hpp"

#include "sievekit/error.hpp"

#include <string>

namespace sievekit {

void require_both_classes(std::size_t n_spam, std::size_t n_legit, const char* trainer)
{
    if (n_spam == 0 || n_legit == 0)
        throw TrainingError(std::string(trainer) +
                            " needs training examples of both classes (spam=" +
                            std::to_string(n_spam) + ", legitimate=" + std::to_string(n_legit) +
                            ")");
}

} // namespace sievekit
