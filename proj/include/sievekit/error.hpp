#pragma once

#include <stdexcept>
#include <string>

namespace sievekit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or hyperparameter supplied by the caller.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Corpus layout or configuration file is wrong (missing directory, bad key).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input data could not be read or violates a data invariant.
class DataError : public Error {
public:
    using Error::Error;
};

/// A trainer could not produce a model (single class, divergence, ...).
class TrainingError : public Error {
public:
    using Error::Error;
};

/// Installs a handler for non-fatal warnings. The default writes to stderr.
using WarningHandler = void (*)(const std::string&);
WarningHandler set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

} // namespace sievekit
