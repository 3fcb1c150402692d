#pragma once

#include <stdexcept>
#include <string>

namespace cvent {

/// Input outside the physical or parametric domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed on inputs that passed validation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fock-space truncation lost more probability than the configured tolerance.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double leakage, int dim)
        : std::runtime_error(what), leakage_(leakage), dim_(dim) {}

    double leakage() const noexcept { return leakage_; }
    int dim() const noexcept { return dim_; }

private:
    double leakage_;
    int dim_;
};

}  // namespace cvent
