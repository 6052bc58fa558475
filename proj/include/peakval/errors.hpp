#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace peakval {

/// Input or configuration failed validation; message lists every violation.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::string msg, std::vector<std::string> issues = {})
        : std::runtime_error(std::move(msg)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

/// A model (day, month, or node) admits no feasible point.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// The solver lost numerical control (iteration cap, singular basis, drift).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// File could not be read, written, or parsed.
class IoError : public std::runtime_error {
public:
    explicit IoError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

}  // namespace peakval
