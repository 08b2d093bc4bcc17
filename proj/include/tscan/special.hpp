#pragma once

#include <cmath>
#include <numbers>

namespace tscan {

// Standard normal density.
inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Standard normal CDF via the complementary error function; relative
// accuracy well below 1e-12 over the ranges used here.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double log_gamma(double x) { return std::lgamma(x); }

}  // namespace tscan
