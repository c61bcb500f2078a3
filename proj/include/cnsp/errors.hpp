#pragma once

#include <stdexcept>
#include <string>

namespace cnsp {

// Invalid configuration value (window size, filter width, gain, theta, ...).
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid call argument (empty input, unknown attribute, length mismatch).
// The CLI maps this to exit code 2 as well.
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Data that makes a statistic undefined (zero pooled / within-group variance).
// The CLI maps this to exit code 3.
class DegenerateDataError : public std::runtime_error {
public:
    explicit DegenerateDataError(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable or unwritable file. The CLI maps this to exit code 1.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cnsp
