#pragma once

#include <stdexcept>
#include <string>

namespace sectortag {

/// Invalid configuration or usage. Maps to CLI exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed, missing, or inconsistent input data. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sectortag
