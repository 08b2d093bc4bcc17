#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tscan/approx.hpp"
#include "tscan/mc.hpp"

namespace tscan {

namespace detail {

inline double fdp_at_threshold(ChartSpec spec, double threshold, int L,
                               const OvershootConvention& conv) {
    spec.threshold = threshold;
    return fdp_approx(spec, L, conv).value;
}

}  // namespace detail

// Invert an FDP formula for the threshold hitting the target. The formulas
// all rise to a single interior maximum in the threshold and decay beyond
// it; the search locates the peak on a coarse log grid and bisects on the
// decaying side. Throws UnsupportedKind when no formula exists for the kind
// and NoBracket when the target is unreachable below threshold 1e3.
inline double solve_threshold(const ChartSpec& proto, double target_fdp, int L,
                              const OvershootConvention& conv) {
    if (!(target_fdp > 1e-8 && target_fdp < 0.5))
        throw DomainError("solve_threshold: target must be in (1e-8, 0.5)");
    const auto fdp = [&](double t) { return detail::fdp_at_threshold(proto, t, L, conv); };

    double peak_t = 0.1, peak_v = -1.0;
    for (int i = 0; i <= 96; ++i) {
        const double t = 0.1 * std::pow(1e4 / 0.1, i / 96.0);
        const double v = fdp(t);
        if (v > peak_v) {
            peak_v = v;
            peak_t = t;
        }
    }
    if (peak_v < target_fdp)
        throw NoBracket("solve_threshold: formula cannot reach the target FDP");
    double lo = peak_t;  // fdp(lo) >= target
    double hi = peak_t;
    while (fdp(hi) > target_fdp) {
        hi *= 1.5;
        if (hi > 1e3) throw NoBracket("solve_threshold: no bracket below threshold 1000");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (fdp(mid) >= target_fdp ? lo : hi) = mid;
    }
    // polish on the achieved value so fdp(result) matches the target to 1e-9
    double best = 0.5 * (lo + hi);
    for (int it = 0; it < 100 && std::abs(fdp(best) - target_fdp) > 1e-12; ++it) {
        (fdp(best) >= target_fdp ? lo : hi) = best;
        best = 0.5 * (lo + hi);
    }
    return best;
}

inline double solve_threshold(const ChartSpec& proto, double target_fdp, int L) {
    return solve_threshold(proto, target_fdp, L,
                           proto.is_multivariate() ? OvershootConvention::defaults_mv()
                                                   : OvershootConvention::defaults_1d());
}

struct CalibrationResult {
    double threshold = 0.0;
    EstimateWithError achieved;
    bool converged = false;
    int iterations = 0;
    std::vector<std::string> warnings;
};

// Monte Carlo threshold calibration by stochastic bisection. Every probe
// reruns the simulation with the same seed, so the empirical FDP is monotone
// in the threshold within one calibration and the bisection behaves
// deterministically. Stops once the target lies inside the estimate's 95%
// confidence interval, or after 20 iterations (returns the best candidate
// with a warning).
inline CalibrationResult calibrate_mc(const ChartSpec& proto, double target_fdp, int L,
                                      const SimConfig& cfg) {
    if (cfg.reps < 10000) throw SpecError("calibrate_mc: reps must be >= 1e4");
    if (!(target_fdp > 0.0 && target_fdp < 1.0))
        throw DomainError("calibrate_mc: target must be in (0,1)");
    const auto probe = [&](double threshold) {
        ChartSpec spec = proto;
        spec.threshold = threshold;
        return estimate_fdp(spec, L, cfg);
    };

    // Initial guess: the analytic threshold when a formula exists, otherwise
    // a unit threshold.
    double guess = 1.0;
    try {
        guess = solve_threshold(proto, std::clamp(target_fdp, 2e-8, 0.49), L);
    } catch (const Error&) {
    }

    CalibrationResult out;
    double lo = guess, hi = guess;
    EstimateWithError lo_est = probe(lo);
    // expand to a straddle: fdp(lo) >= target >= fdp(hi)
    while (lo_est.value < target_fdp) {
        hi = lo;
        lo *= 0.5;
        ++out.iterations;
        lo_est = probe(lo);
        if (lo < 1e-8) throw NoBracket("calibrate_mc: no lower bracket");
    }
    EstimateWithError hi_est = lo == hi ? lo_est : probe(hi);
    while (hi_est.value > target_fdp) {
        hi *= hi > 0.5 ? 1.5 : 2.0;
        ++out.iterations;
        hi_est = probe(hi);
        if (hi > 1e6) throw NoBracket("calibrate_mc: no upper bracket");
    }

    out.threshold = 0.5 * (lo + hi);
    out.achieved = probe(out.threshold);
    for (; out.iterations < 20; ++out.iterations) {
        const double ci = 1.96 * std::max(out.achieved.std_error, 1e-12);
        if (std::abs(out.achieved.value - target_fdp) <= ci) {
            out.converged = true;
            break;
        }
        (out.achieved.value >= target_fdp ? lo : hi) = out.threshold;
        out.threshold = 0.5 * (lo + hi);
        out.achieved = probe(out.threshold);
    }
    if (!out.converged)
        out.warnings.push_back("iteration cap reached; returning best candidate");
    return out;
}

// Kinds whose design should be calibrated by simulation rather than formula
// inversion: no closed form exists (moving-EWMA, the threshold variants,
// MC1), or the closed form is known to sit far from the simulated level
// (windowed multivariate CUSUM).
inline bool prefers_mc_calibration(ChartKind kind) {
    switch (kind) {
        case ChartKind::MovingEwma:
        case ChartKind::Mcusum:
        case ChartKind::Mc1:
        case ChartKind::MewmaSoft:
        case ChartKind::MewmaHard:
        case ChartKind::MmaHard:
        case ChartKind::MglrtHard:
            return true;
        default:
            return false;
    }
}

}  // namespace tscan
