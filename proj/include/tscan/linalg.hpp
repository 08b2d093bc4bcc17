#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tscan/errors.hpp"

namespace tscan {

// Small dense row-major matrix. The dimensions in this library stay in the
// tens, so there is no need for an external linear-algebra dependency.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::span<const double> row(int i) const {
        return {a_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const Matrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

inline double max_asymmetry(const Matrix& m) {
    double worst = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    return worst;
}

// Lower-triangular Cholesky factor L with L*L^T = spd. Throws
// NotPositiveDefinite when a pivot is not strictly positive.
inline Matrix cholesky_lower(const Matrix& spd) {
    const int n = spd.rows();
    if (n != spd.cols()) throw DimensionMismatch("cholesky: matrix not square");
    Matrix l(n, n);
    for (int j = 0; j < n; ++j) {
        double diag = spd(j, j);
        for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0) || !std::isfinite(diag))
            throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) + " not positive");
        l(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double s = spd(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

// Inverse of a lower-triangular matrix (forward substitution per column).
inline Matrix invert_lower(const Matrix& l) {
    const int n = l.rows();
    Matrix inv(n, n);
    for (int j = 0; j < n; ++j) {
        inv(j, j) = 1.0 / l(j, j);
        for (int i = j + 1; i < n; ++i) {
            double s = 0.0;
            for (int k = j; k < i; ++k) s += l(i, k) * inv(k, j);
            inv(i, j) = -s / l(i, i);
        }
    }
    return inv;
}

// y = m^T x
inline std::vector<double> mul_transpose(const Matrix& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.rows())
        throw DimensionMismatch("mul_transpose: size mismatch");
    std::vector<double> y(m.cols(), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        const double xi = x[i];
        for (int j = 0; j < m.cols(); ++j) y[j] += m(i, j) * xi;
    }
    return y;
}

// y = m x
inline std::vector<double> mul(const Matrix& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.cols()) throw DimensionMismatch("mul: size mismatch");
    std::vector<double> y(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline double squared_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
// Plenty for correlation matrices of a few dozen channels.
inline std::vector<double> symmetric_eigenvalues(Matrix m) {
    const int n = m.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(m(p, q)) < 1e-18) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

}  // namespace tscan
