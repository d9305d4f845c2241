#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jhfem {

/// Square matrix with equal lower and upper half-bandwidth k. Only the band
/// |i - j| <= k is stored; reads outside it return zero and writes outside
/// it throw.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t n, std::size_t half_bandwidth);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t half_bandwidth() const noexcept { return k_; }
    [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const noexcept
    {
        return (i > j ? i - j : j - i) <= k_;
    }

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept
    {
        return in_band(i, j) ? data_[index(i, j)] : 0.0;
    }

    /// Mutable access; throws InvalidArgument outside the band.
    double& at(std::size_t i, std::size_t j);

    void add(std::size_t i, std::size_t j, double value) { at(i, j) += value; }

    /// Zero row i and put 1 on the diagonal.
    void set_identity_row(std::size_t i);

    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;
    [[nodiscard]] double norm_inf() const;
    [[nodiscard]] bool is_symmetric(double tol) const;

    /// Rows/columns listed in `keep` (ascending), as a new banded matrix.
    [[nodiscard]] BandedMatrix principal_submatrix(std::span<const int> keep) const;

private:
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept
    {
        return i * (2 * k_ + 1) + (j + k_ - i);
    }

    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<double> data_;
};

/// LU factorization with partial pivoting restricted to the band. Row swaps
/// widen the upper band of U to 2k, which the working storage accommodates.
class BandedLU {
public:
    /// Throws SingularMatrixError when a pivot magnitude falls below
    /// pivot_rel_tol * ||A||_inf.
    explicit BandedLU(const BandedMatrix& a, double pivot_rel_tol = 1e-14);

    [[nodiscard]] std::vector<double> solve(std::span<const double> b) const;

private:
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept
    {
        return i * width_ + (j + k_ - i);
    }

    std::size_t n_;
    std::size_t k_;
    std::size_t width_; // 3k + 1: k below, 2k above the diagonal
    std::vector<double> lu_;
    std::vector<std::size_t> pivots_;
};

std::vector<double> solve_banded(const BandedMatrix& a, std::span<const double> b);

/// True iff a banded Cholesky factorization of the (assumed symmetric)
/// matrix completes with strictly positive pivots.
bool cholesky_succeeds(const BandedMatrix& a);

} // namespace jhfem
