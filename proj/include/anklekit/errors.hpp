#pragma once

#include <stdexcept>
#include <string>

namespace anklekit {

// Malformed or inconsistent configuration / input files. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical or model-domain failure inside a pipeline (out-of-range pose,
// solid-height spring, singular geometry, diverging fit...). Exit code 3.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace anklekit
