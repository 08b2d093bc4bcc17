#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tscan/covariance.hpp"
#include "tscan/rng.hpp"

using namespace tscan;
using Catch::Approx;

namespace {

Matrix matrix2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

// Random well-conditioned SPD matrix: A A^T + n I.
Matrix random_spd(int n, SplitMix64& rng) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.next_gaussian();
    Matrix spd(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += a(i, k) * a(j, k);
            spd(i, j) = s + (i == j ? n : 0.0);
        }
    return spd;
}

}  // namespace

TEST_CASE("identity covariance whitens to the identity", "[covariance]") {
    const CovarianceModel model = CovarianceModel::make_identity(3);
    REQUIRE(model.is_identity());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            REQUIRE(model.whitener()(i, j) == (i == j ? 1.0 : 0.0));
    const std::vector<double> x = {2.0, 3.0, -1.0};
    REQUIRE(model.whiten(x) == x);
}

TEST_CASE("whitener reproduces the Mahalanobis form", "[covariance]") {
    const CovarianceModel model = build_whitener(matrix2(1.0, 0.5, 0.5, 1.0));
    // hand oracle: inverse of [[1,.5],[.5,1]] is (1/.75)[[1,-.5],[-.5,1]],
    // so (1,1) Sigma^{-1} (1,1)^T = (2 - 1) / 0.75 = 4/3
    const std::vector<double> x = {1.0, 1.0};
    REQUIRE(model.mahalanobis_squared(x) == Approx(4.0 / 3.0).epsilon(1e-10));

    // W W^T = Sigma^{-1} entrywise, W lower-triangular
    const Matrix& w = model.whitener();
    REQUIRE(w(0, 1) == 0.0);
    const double inv00 = 4.0 / 3.0, inv01 = -2.0 / 3.0, inv11 = 4.0 / 3.0;
    REQUIRE(w(0, 0) * w(0, 0) == Approx(inv00).epsilon(1e-12));
    REQUIRE(w(0, 0) * w(1, 0) == Approx(inv01).epsilon(1e-12));
    REQUIRE(w(1, 0) * w(1, 0) + w(1, 1) * w(1, 1) == Approx(inv11).epsilon(1e-12));
}

TEST_CASE("rank-deficient covariance is rejected", "[covariance]") {
    REQUIRE_THROWS_AS(build_whitener(matrix2(1.0, 1.0, 1.0, 1.0)), NotPositiveDefinite);
}

TEST_CASE("asymmetric covariance is rejected", "[covariance]") {
    REQUIRE_THROWS_AS(build_whitener(matrix2(1.0, 0.5, 0.3, 1.0)), AsymmetricMatrix);
}

TEST_CASE("whiten checks the vector length", "[covariance]") {
    const CovarianceModel model = CovarianceModel::make_identity(2);
    const std::vector<double> x = {1.0, 2.0, 3.0};
    REQUIRE_THROWS_AS(model.whiten(x), DimensionMismatch);
}

TEST_CASE("whitened norm is zero only at the origin", "[covariance]") {
    SplitMix64 rng(11);
    const CovarianceModel model = build_whitener(random_spd(4, rng));
    const std::vector<double> zero(4, 0.0);
    REQUIRE(model.mahalanobis_squared(zero) == 0.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(4);
        for (double& v : x) v = rng.next_gaussian();
        REQUIRE(model.mahalanobis_squared(x) > 0.0);
    }
}

TEST_CASE("whitened samples have identity covariance", "[covariance]") {
    SplitMix64 rng(7);
    const int n = 3;
    const CovarianceModel model = build_whitener(random_spd(n, rng));
    const Matrix& factor = model.sampling_factor();
    const int reps = 200000;
    Matrix acc(n, n);
    std::vector<double> z(n), x(n);
    for (int r = 0; r < reps; ++r) {
        for (double& v : z) v = rng.next_gaussian();
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int k = 0; k <= i; ++k) s += factor(i, k) * z[k];
            x[i] = s;
        }
        const auto y = model.whiten(x);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc(i, j) += y[i] * y[j];
    }
    const double bound = 4.0 / std::sqrt(static_cast<double>(reps));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double expect = i == j ? 1.0 : 0.0;
            REQUIRE(std::abs(acc(i, j) / reps - expect) < 2.0 * bound);
        }
}
