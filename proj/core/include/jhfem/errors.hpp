#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jhfem {

/// Bad input to a library call (out-of-range degree, rule too weak, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A wedge-field sample requested outside |theta| <= alpha.
class OutOfWedgeError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Raised by the banded LU when a pivot falls below the singularity threshold.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t pivot_index, double pivot_magnitude);

    [[nodiscard]] std::size_t pivot_index() const noexcept { return pivot_index_; }
    [[nodiscard]] double pivot_magnitude() const noexcept { return pivot_magnitude_; }

private:
    std::size_t pivot_index_;
    double pivot_magnitude_;
};

/// Step-size underflow (or step budget exhaustion) in the IVP integrator.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(double eta, const std::string& what);

    [[nodiscard]] double eta() const noexcept { return eta_; }

private:
    double eta_;
};

/// Secant iteration on the initial curvature did not converge.
class ShootingError : public std::runtime_error {
public:
    /// (s, y0(1; s)) pairs in iteration order.
    using History = std::vector<std::pair<double, double>>;

    ShootingError(const std::string& what, History history);

    [[nodiscard]] const History& history() const noexcept { return history_; }

private:
    History history_;
};

/// A nonlinear solve inside a study did not converge.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> norm_history);

    [[nodiscard]] const std::vector<double>& norm_history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

} // namespace jhfem
