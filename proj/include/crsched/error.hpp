#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crsched {

/// Argument outside the mathematical domain of an operation (nonpositive
/// distance, gain, mean, trial count, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two parameters of a closed-form identity are too close for the formula
/// to be evaluated reliably. Callers fall back to quadrature.
class near_degenerate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Closed forms exist only for two and three users.
class unsupported_k_error : public std::invalid_argument {
public:
    explicit unsupported_k_error(std::size_t k)
        : std::invalid_argument("closed form is available only for K = 2 or 3, got K = " +
                                std::to_string(k)),
          k_(k) {}
    std::size_t k() const noexcept { return k_; }

private:
    std::size_t k_;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class convergence_failure : public std::runtime_error {
public:
    convergence_failure(double estimate, double error_bound, int subdivisions)
        : std::runtime_error("quadrature did not converge after " + std::to_string(subdivisions) +
                             " subdivisions (estimate " + std::to_string(estimate) +
                             ", error bound " + std::to_string(error_bound) + ")"),
          estimate_(estimate),
          error_bound_(error_bound) {}
    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace crsched
