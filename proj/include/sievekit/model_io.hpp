#pragma once

#include "sievekit/model.hpp"

#include <filesystem>
#include <iosfwd>

namespace sievekit {

constexpr int model_format_version = 1;

/// Text model file:
///
///   [meta]      format, kind, fields, d, seed and hyperparameters
///   [features]  one token per line, in rank order
///   [params]    classifier-specific key=value lines
///
/// Reals are written as shortest round-trip decimals, so a loaded model
/// scores bit-for-bit like the saved one.
void save_model(const TrainedModel& model, std::ostream& out);
void save_model(const TrainedModel& model, const std::filesystem::path& path);

/// Throws DataError naming the offending line.
TrainedModel load_model(std::istream& in);
TrainedModel load_model(const std::filesystem::path& path);

} // namespace sievekit
