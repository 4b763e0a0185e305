#pragma once

#include <stdexcept>
#include <string>

namespace contact_optics {

/// Input outside the domain of a chart or operation (e.g. y <= 0 in the half-plane).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical breakdown: overflow, a hyperbolic step leaving y > 0, a step
/// that could not be resolved by halving.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A single integration step straddles more than one interface.
class MultipleCrossingsError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Malformed or invalid scene document. `path()` names the offending field
/// ("source.fan.count") or is empty for syntax errors.
class SceneError : public std::runtime_error {
public:
    SceneError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

    [[nodiscard]] const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace contact_optics
