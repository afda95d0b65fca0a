#pragma once

#include <stdexcept>
#include <string>

namespace solarcast {

// Error taxonomy mirrors the CLI exit codes: ConfigError/UsageError -> 1,
// DataError -> 2, NumericError -> 3.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Misuse of the API (forecasting with an untrained model, backward without
// a cached forward, ...).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structural problems in data: mismatched grids, windowing violations,
// parse failures, stale artifacts.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (divergent training, non-finite loss).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace solarcast
