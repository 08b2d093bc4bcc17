#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "tscan/errors.hpp"
#include "tscan/linalg.hpp"

namespace tscan {

inline constexpr double kSymmetryTolerance = 1e-9;

// Covariance matrix bundled with its precomputed factors:
//   sampling_factor : lower-triangular C with C*C^T = sigma (draws correlated data)
//   whitener        : lower-triangular W with W*W^T = sigma^{-1}
// whiten(x) = W^T x, so ||whiten(x)||^2 = x^T sigma^{-1} x and whitened
// observations have identity covariance. All chart kernels run on whitened
// data; the model is immutable and shareable across threads.
class CovarianceModel {
public:
    static CovarianceModel make_identity(int n) {
        CovarianceModel m;
        m.sigma_ = Matrix::identity(n);
        m.sampling_factor_ = m.sigma_;
        m.whitener_ = m.sigma_;
        m.identity_ = true;
        return m;
    }

    explicit CovarianceModel(Matrix sigma) : sigma_(std::move(sigma)) {
        if (sigma_.rows() != sigma_.cols() || sigma_.rows() < 1)
            throw DimensionMismatch("covariance: matrix must be square, dimension >= 1");
        if (max_asymmetry(sigma_) > kSymmetryTolerance)
            throw AsymmetricMatrix("covariance: |sigma_ij - sigma_ji| exceeds 1e-9");
        sampling_factor_ = cholesky_lower(sigma_);
        // sigma^{-1} = K^T K with K = sampling_factor^{-1}; refactor so the
        // whitener itself is lower-triangular.
        const Matrix k = invert_lower(sampling_factor_);
        const int n = dimension();
        Matrix inv(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int r = std::max(i, j); r < n; ++r) s += k(r, i) * k(r, j);
                inv(i, j) = s;
            }
        // Symmetrize before factoring; the accumulation above is exact only
        // up to roundoff.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double avg = 0.5 * (inv(i, j) + inv(j, i));
                inv(i, j) = avg;
                inv(j, i) = avg;
            }
        whitener_ = cholesky_lower(inv);
        identity_ = (sigma_ == Matrix::identity(n));
    }

    int dimension() const { return sigma_.rows(); }
    const Matrix& sigma() const { return sigma_; }
    const Matrix& whitener() const { return whitener_; }
    const Matrix& sampling_factor() const { return sampling_factor_; }
    bool is_identity() const { return identity_; }

    std::vector<double> whiten(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != dimension())
            throw DimensionMismatch("whiten: vector length != model dimension");
        if (identity_) return {x.begin(), x.end()};
        return mul_transpose(whitener_, x);
    }

    // x^T sigma^{-1} x without materializing the whitened vector.
    double mahalanobis_squared(std::span<const double> x) const {
        return squared_norm(whiten(x));
    }

private:
    CovarianceModel() = default;

    Matrix sigma_;
    Matrix sampling_factor_;
    Matrix whitener_;
    bool identity_ = false;
};

inline CovarianceModel build_whitener(const Matrix& sigma) { return CovarianceModel(sigma); }

}  // namespace tscan
