#include "jhfem/banded.hpp"

#include "jhfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jhfem {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t half_bandwidth)
    : n_(n), k_(half_bandwidth), data_(n * (2 * half_bandwidth + 1), 0.0)
{
}

double& BandedMatrix::at(std::size_t i, std::size_t j)
{
    if (i >= n_ || j >= n_ || !in_band(i, j)) {
        throw InvalidArgument("BandedMatrix: entry (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") outside half-bandwidth " +
                              std::to_string(k_));
    }
    return data_[index(i, j)];
}

void BandedMatrix::set_identity_row(std::size_t i)
{
    const std::size_t lo = i > k_ ? i - k_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + k_);
    for (std::size_t j = lo; j <= hi; ++j) {
        data_[index(i, j)] = 0.0;
    }
    data_[index(i, i)] = 1.0;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const
{
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t lo = i > k_ ? i - k_ : 0;
        const std::size_t hi = std::min(n_ - 1, i + k_);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            sum += data_[index(i, j)] * x[j];
        }
        y[i] = sum;
    }
    return y;
}

double BandedMatrix::norm_inf() const
{
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t lo = i > k_ ? i - k_ : 0;
        const std::size_t hi = std::min(n_ - 1, i + k_);
        double row = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            row += std::abs(data_[index(i, j)]);
        }
        best = std::max(best, row);
    }
    return best;
}

bool BandedMatrix::is_symmetric(double tol) const
{
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j <= std::min(n_ - 1, i + k_); ++j) {
            if (std::abs(data_[index(i, j)] - data_[index(j, i)]) > tol) {
                return false;
            }
        }
    }
    return true;
}

BandedMatrix BandedMatrix::principal_submatrix(std::span<const int> keep) const
{
    BandedMatrix sub(keep.size(), k_);
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = a > k_ ? a - k_ : 0; b < std::min(keep.size(), a + k_ + 1); ++b) {
            sub.data_[sub.index(a, b)] = (*this)(static_cast<std::size_t>(keep[a]),
                                                 static_cast<std::size_t>(keep[b]));
        }
    }
    return sub;
}

BandedLU::BandedLU(const BandedMatrix& a, double pivot_rel_tol)
    : n_(a.size()), k_(a.half_bandwidth()), width_(3 * a.half_bandwidth() + 1),
      lu_(n_ * width_, 0.0), pivots_(n_, 0)
{
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t lo = i > k_ ? i - k_ : 0;
        const std::size_t hi = std::min(n_ - 1, i + k_);
        for (std::size_t j = lo; j <= hi; ++j) {
            lu_[index(i, j)] = a(i, j);
        }
    }
    const double threshold = pivot_rel_tol * a.norm_inf();

    for (std::size_t c = 0; c < n_; ++c) {
        const std::size_t last_row = std::min(n_ - 1, c + k_);
        const std::size_t last_col = std::min(n_ - 1, c + 2 * k_);

        std::size_t p = c;
        double best = std::abs(lu_[index(c, c)]);
        for (std::size_t r = c + 1; r <= last_row; ++r) {
            const double v = std::abs(lu_[index(r, c)]);
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (!(best > threshold)) {
            throw SingularMatrixError(c, best);
        }
        pivots_[c] = p;
        if (p != c) {
            for (std::size_t j = c; j <= last_col; ++j) {
                std::swap(lu_[index(c, j)], lu_[index(p, j)]);
            }
        }

        const double inv_pivot = 1.0 / lu_[index(c, c)];
        for (std::size_t r = c + 1; r <= last_row; ++r) {
            double& m = lu_[index(r, c)];
            if (m == 0.0) {
                continue;
            }
            m *= inv_pivot;
            for (std::size_t j = c + 1; j <= last_col; ++j) {
                lu_[index(r, j)] -= m * lu_[index(c, j)];
            }
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const
{
    if (b.size() != n_) {
        throw InvalidArgument("BandedLU::solve: right-hand side has length " +
                              std::to_string(b.size()) + ", expected " + std::to_string(n_));
    }
    std::vector<double> x(b.begin(), b.end());

    for (std::size_t c = 0; c < n_; ++c) {
        std::swap(x[c], x[pivots_[c]]);
        const std::size_t last_row = std::min(n_ - 1, c + k_);
        for (std::size_t r = c + 1; r <= last_row; ++r) {
            x[r] -= lu_[index(r, c)] * x[c];
        }
    }
    for (std::size_t i = n_; i-- > 0;) {
        const std::size_t last_col = std::min(n_ - 1, i + 2 * k_);
        double sum = x[i];
        for (std::size_t j = i + 1; j <= last_col; ++j) {
            sum -= lu_[index(i, j)] * x[j];
        }
        x[i] = sum / lu_[index(i, i)];
    }
    return x;
}

std::vector<double> solve_banded(const BandedMatrix& a, std::span<const double> b)
{
    return BandedLU(a).solve(b);
}

bool cholesky_succeeds(const BandedMatrix& a)
{
    const std::size_t n = a.size();
    const std::size_t k = a.half_bandwidth();
    // Lower factor stored row-wise over columns [i-k, i].
    std::vector<double> l(n * (k + 1), 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return l[i * (k + 1) + (j + k - i)]; };

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i > k ? i - k : 0;
        for (std::size_t j = lo; j <= i; ++j) {
            double sum = a(i, j);
            const std::size_t mlo = std::max(lo, j > k ? j - k : 0);
            for (std::size_t m = mlo; m < j; ++m) {
                sum -= at(i, m) * at(j, m);
            }
            if (i == j) {
                if (!(sum > 0.0)) {
                    return false;
                }
                at(i, i) = std::sqrt(sum);
            } else {
                at(i, j) = sum / at(j, j);
            }
        }
    }
    return true;
}

} // namespace jhfem
