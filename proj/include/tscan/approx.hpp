#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tscan/chart_spec.hpp"
#include "tscan/quadrature.hpp"
#include "tscan/special.hpp"

namespace tscan {

// Discrete-time boundary-crossing overshoot constant for unit-variance
// normal increments.
inline constexpr double kRhoPlus = 0.5826;

// Overshoot-correction conventions. `mode` selects the correction function
// itself; `ewma_arg` selects the argument scale used by the EWMA-family
// formulas. The one-dimensional EWMA default is the variance-matched
// argument b*sqrt(2*beta/(2-beta)); the multivariate default is the plain
// b*sqrt(2*beta). Both are selectable everywhere.
struct OvershootConvention {
    enum class Mode { ExponentialRho, Accurate } mode = Mode::ExponentialRho;
    enum class EwmaArg { PlainSqrt2Beta, VarianceMatched } ewma_arg = EwmaArg::PlainSqrt2Beta;

    static OvershootConvention defaults_1d() {
        return {Mode::ExponentialRho, EwmaArg::VarianceMatched};
    }
    static OvershootConvention defaults_mv() {
        return {Mode::ExponentialRho, EwmaArg::PlainSqrt2Beta};
    }
};

// The overshoot correction v(x). ExponentialRho uses exp(-rho_plus * x);
// Accurate uses the rational form
//   (2/x)(Phi(x/2) - 1/2) / ((x/2) Phi(x/2) + phi(x/2)),
// whose x -> 0+ limit is 1.
inline double overshoot_correction(double x,
                                   OvershootConvention::Mode mode =
                                       OvershootConvention::Mode::ExponentialRho) {
    if (x <= 0.0) {
        if (x < 0.0) throw DomainError("overshoot_correction: x must be > 0");
        return 1.0;
    }
    if (mode == OvershootConvention::Mode::ExponentialRho) return std::exp(-kRhoPlus * x);
    if (x < 1e-8) return 1.0;
    const double half = 0.5 * x;
    const double num = (2.0 / x) * (normal_cdf(half) - 0.5);
    const double den = half * normal_cdf(half) + normal_pdf(half);
    return num / den;
}

struct ApproxResult {
    double value = 0.0;
    enum class Regime { LocalIntegral, NormalLaw, ClosedForm } regime = Regime::ClosedForm;
    std::vector<std::string> warnings;
};

struct DelayMoments {
    double mean = 0.0;
    double variance = 0.0;
};

namespace detail {

inline double clamp_unit(double v) {
    if (std::isnan(v)) return 0.0;
    return std::clamp(v, 0.0, 1.0);
}

inline double ewma_arg_factor(double beta, const OvershootConvention& c) {
    return c.ewma_arg == OvershootConvention::EwmaArg::VarianceMatched
               ? std::sqrt(2.0 * beta / (2.0 - beta))
               : std::sqrt(2.0 * beta);
}

// log of (b^2/2)^{N/2} e^{-b^2/2} / Gamma(N/2); products at N = 20, b = 7
// overflow a double, so everything chi-square-tail shaped stays in logs.
inline double log_chi_tail_factor(double b, int n) {
    const double b2 = b * b;
    return 0.5 * n * std::log(0.5 * b2) - log_gamma(0.5 * n) - 0.5 * b2;
}

// integral_{b/sqrt(w1)}^{b/sqrt(w0)} u v(u)^2 / 2 du
inline double window_scan_integral(double b, int w0, int w1, OvershootConvention::Mode mode) {
    const double lo = b / std::sqrt(static_cast<double>(w1));
    const double hi = b / std::sqrt(static_cast<double>(w0));
    return integrate(
        [mode](double u) {
            const double v = overshoot_correction(u, mode);
            return 0.5 * u * v * v;
        },
        lo, hi);
}

// Discrete local-POD sum for the 1-D EWMA chart:
//   sum_{k=1..L} beta * b_k * phi(b_k) * v(b_k * arg),
//   b_k = b - (1 - (1-beta)^k) * delta / sqrt(beta/(2-beta)).
// At delta = 0 this is exactly L*beta*b*phi(b)*v(b*arg).
inline double ewma_local_sum(double beta, double b, double delta, int L,
                             const OvershootConvention& conv) {
    const double arg = ewma_arg_factor(beta, conv);
    const double scale = delta / std::sqrt(beta / (2.0 - beta));
    double sum = 0.0;
    double decay = 1.0;  // (1-beta)^k
    for (int k = 1; k <= L; ++k) {
        decay *= 1.0 - beta;
        const double bk = b - (1.0 - decay) * scale;
        if (bk <= 0.0) {
            // boundary already absorbed by the drift; each remaining step
            // contributes its full hazard
            sum += 1.0;
            continue;
        }
        sum += beta * bk * normal_pdf(bk) * overshoot_correction(bk * arg, conv.mode);
    }
    return sum;
}

}  // namespace detail

// Boundary-corrected design per the continuous-time matching: EWMA-family
// b* = b + rho_plus * sqrt(2 beta); MA-family h* = h + sqrt(2) rho_plus / w.
inline ChartSpec with_boundary_correction(ChartSpec spec) {
    switch (spec.kind) {
        case ChartKind::Ewma:
        case ChartKind::Mewma:
            spec.threshold += kRhoPlus * std::sqrt(2.0 * spec.beta);
            break;
        case ChartKind::Ma:
        case ChartKind::Mma:
            spec.threshold += std::numbers::sqrt2 * kRhoPlus / spec.window;
            break;
        default:
            break;
    }
    return spec;
}

// False-detection probability P*(tau <= L) for the one-dimensional kinds.
// MovingEwma has no closed form and must be calibrated by simulation.
inline ApproxResult fdp_1d(const ChartSpec& spec, int L,
                           const OvershootConvention& conv = OvershootConvention::defaults_1d()) {
    spec.validate();
    if (spec.is_multivariate()) throw UnsupportedKind("fdp_1d: multivariate kind, use fdp_mv");
    ApproxResult out;
    if (L <= 0) return out;
    switch (spec.kind) {
        case ChartKind::Ewma: {
            const double b = spec.threshold;
            out.value = L * spec.beta * b * normal_pdf(b) *
                        overshoot_correction(b * detail::ewma_arg_factor(spec.beta, conv),
                                             conv.mode);
            break;
        }
        case ChartKind::Ma: {
            const double h = spec.threshold;
            const double rw = std::sqrt(static_cast<double>(spec.window));
            out.value = (L * h / rw) * normal_pdf(h * rw) *
                        overshoot_correction(std::numbers::sqrt2 * h, conv.mode);
            break;
        }
        case ChartKind::Cusum: {
            const double delta = spec.ref_strength;
            const double d = spec.threshold;
            if (delta <= 0.0) throw DomainError("fdp_1d cusum: requires ref_strength > 0");
            const double v = overshoot_correction(delta, conv.mode);
            out.value = 0.5 * L * delta * delta * std::exp(-delta * d) * v * v;
            if (L * std::exp(-delta * d) > 0.5)
                out.warnings.push_back("L*exp(-delta*d) not small");
            break;
        }
        case ChartKind::WindowedGlr: {
            const double b = spec.threshold;
            out.value = L * b * normal_pdf(b) *
                        detail::window_scan_integral(b, spec.window_lo, spec.window_hi,
                                                     conv.mode);
            break;
        }
        case ChartKind::MovingEwma:
            throw UnsupportedKind("fdp_1d: no closed form for moving-ewma; calibrate by mc");
        default:
            throw UnsupportedKind("fdp_1d: unsupported kind");
    }
    out.value = detail::clamp_unit(out.value);
    return out;
}

// Zero-start CUSUM horizon probability (second-order form). Valid when the
// horizon drift dominates the boundary: delta*L/2 > d + 2 rho_plus.
inline ApproxResult cusum_zero_start_fdp(double delta, double d, int L) {
    ApproxResult out;
    if (L <= 0) return out;
    if (delta <= 0.0) throw DomainError("cusum_zero_start_fdp: requires delta > 0");
    const double shifted = d + 2.0 * kRhoPlus;
    out.value =
        detail::clamp_unit((delta * (0.5 * delta * L - shifted) + 3.0) * std::exp(-delta * shifted));
    if (0.5 * delta * L <= shifted) out.warnings.push_back("delta*L/2 <= d+2rho: outside regime");
    if (static_cast<double>(L) * L * std::exp(-delta * d) > 0.01)
        out.warnings.push_back("L^2*exp(-delta*d) not small");
    return out;
}

// Horizon-m crossing probability of the unwindowed GLR statistic
// max_{0<=w<n} sqrt(w)*mean. Written for m = c b^2.
inline ApproxResult fdp_glr_unwindowed(double b, int horizon,
                                       const OvershootConvention& conv =
                                           OvershootConvention::defaults_1d()) {
    ApproxResult out;
    if (horizon <= 0) return out;
    if (b <= 0.0) throw DomainError("fdp_glr_unwindowed: requires b > 0");
    const double c = horizon / (b * b);
    const double x0 = 1.0 / std::sqrt(c);
    const auto v2 = [&](double x) {
        const double v = overshoot_correction(x, conv.mode);
        return v * v;
    };
    const double first = integrate_to_infinity([&](double x) { return x * v2(x); }, x0);
    const double second = integrate_to_infinity([&](double x) { return v2(x) / x; }, x0);
    out.value = detail::clamp_unit(horizon * b * normal_pdf(b) * (first - second / c));
    return out;
}

// False-detection probability for the multivariate kinds (whitened data).
// The per-channel threshold variants have no closed form.
inline ApproxResult fdp_mv(const ChartSpec& spec, int L,
                           const OvershootConvention& conv = OvershootConvention::defaults_mv()) {
    spec.validate();
    ApproxResult out;
    if (L <= 0) return out;
    const int n = spec.dimension;
    switch (spec.kind) {
        case ChartKind::Mewma: {
            const double b = spec.threshold;
            const double arg = b * detail::ewma_arg_factor(spec.beta, conv);
            out.value = std::exp(std::log(2.0 * L * spec.beta) +
                                 detail::log_chi_tail_factor(b, n) +
                                 std::log(overshoot_correction(arg, conv.mode)));
            if (n / (b * b) > 0.5) out.warnings.push_back("N/b^2 not small");
            if (spec.beta * b * b / n > 0.5) out.warnings.push_back("beta*b^2/N not small");
            break;
        }
        case ChartKind::Mma: {
            const double b = spec.threshold * std::sqrt(static_cast<double>(spec.window));
            const double arg = b * std::sqrt(2.0 / spec.window);
            out.value = std::exp(std::log(2.0 * L / spec.window) +
                                 detail::log_chi_tail_factor(b, n) +
                                 std::log(overshoot_correction(arg, conv.mode)));
            if (n / (b * b) > 0.5) out.warnings.push_back("N/b^2 not small");
            break;
        }
        case ChartKind::Mglrt: {
            const double b = spec.threshold;
            const double integral =
                detail::window_scan_integral(b, spec.window_lo, spec.window_hi, conv.mode);
            out.value = std::exp(std::log(2.0 * L) + detail::log_chi_tail_factor(b, n) +
                                 std::log(integral));
            if (std::log(static_cast<double>(L)) / (b * b) > 0.5)
                out.warnings.push_back("ln(L)/b^2 not small");
            break;
        }
        case ChartKind::Mcusum: {
            if (n < 2) throw DomainError("fdp_mv mcusum: requires dimension >= 2");
            const double dn = spec.ref_strength;  // ||delta||
            const double d = spec.threshold;
            if (dn <= 0.0) throw DomainError("fdp_mv mcusum: requires ref_strength > 0");
            const double v = overshoot_correction(dn, conv.mode);
            out.value = std::exp(std::log(0.5 * L * dn * dn) +
                                 0.5 * (n - 1) * std::log(4.0 * dn * d) +
                                 log_gamma(0.5 * (n - 1)) - log_gamma(n - 1.0) - dn * d +
                                 2.0 * std::log(v));
            if (L * std::exp(-dn * d) > 0.5)
                out.warnings.push_back("L*exp(-|delta|*d) not small");
            if (!(d / spec.window_hi < 0.5 * dn && 0.5 * dn < d / spec.window_lo))
                out.warnings.push_back("|delta|/2 outside (d/w1, d/w0)");
            break;
        }
        case ChartKind::Mc1:
        case ChartKind::MewmaSoft:
        case ChartKind::MewmaHard:
        case ChartKind::MmaHard:
        case ChartKind::MglrtHard:
            throw UnsupportedKind("fdp_mv: no closed form for this kind; calibrate by mc");
        default:
            throw UnsupportedKind("fdp_mv: one-dimensional kind, use fdp_1d");
    }
    out.value = detail::clamp_unit(out.value);
    return out;
}

// Kind-dispatched FDP with each family's default convention.
inline ApproxResult fdp_approx(const ChartSpec& spec, int L) {
    return spec.is_multivariate() ? fdp_mv(spec, L) : fdp_1d(spec, L);
}
inline ApproxResult fdp_approx(const ChartSpec& spec, int L, const OvershootConvention& conv) {
    return spec.is_multivariate() ? fdp_mv(spec, L, conv) : fdp_1d(spec, L, conv);
}

// First-crossing moment expansions under a sustained signal of the given
// strength (delta or ||mu|| on the whitened scale). Requires the strength to
// exceed each kind's crossing level.
inline DelayMoments delay_moments(const ChartSpec& spec, double strength) {
    spec.validate();
    const auto require = [](bool ok, const char* msg) {
        if (!ok) throw DomainError(msg);
    };
    switch (spec.kind) {
        case ChartKind::Ewma: {
            const double h = spec.alarm_level();
            require(strength > h, "delay_moments ewma: requires strength > alarm level");
            const double gap = strength - h;
            return {-std::log(1.0 - h / strength) / spec.beta + 1.0 / (4.0 * gap * gap),
                    1.0 / (2.0 * spec.beta * gap * gap)};
        }
        case ChartKind::Ma: {
            const double h = spec.threshold;
            require(strength > h, "delay_moments ma: requires strength > h");
            return {h * spec.window / strength, spec.window / (strength * strength)};
        }
        case ChartKind::Cusum: {
            const double drift = strength - 0.5 * spec.ref_strength;
            require(drift > 0.0, "delay_moments cusum: requires strength > delta/2");
            const double d = spec.threshold;
            return {d / drift + 1.0 / (2.0 * drift * drift), d / (drift * drift * drift)};
        }
        case ChartKind::WindowedGlr: {
            require(strength > 0.0, "delay_moments wgl: requires strength > 0");
            const double b = spec.threshold;
            const double m2 = strength * strength;
            return {(b * b + 1.0) / m2, 4.0 * b * b / (m2 * m2)};
        }
        case ChartKind::Mewma: {
            const double h =
                spec.threshold * std::sqrt(spec.beta / (2.0 - spec.beta));
            require(strength > h, "delay_moments mewma: requires strength > alarm level");
            const double gap = strength - h;
            return {-std::log(1.0 - h / strength) / spec.beta +
                        strength / (4.0 * h * gap * gap) -
                        spec.dimension / (4.0 * h * gap),
                    1.0 / (2.0 * spec.beta * gap * gap)};
        }
        case ChartKind::Mma: {
            const double h = spec.threshold;
            require(strength > h, "delay_moments mma: requires strength > h");
            return {h * spec.window / strength - (spec.dimension - 1) / (2.0 * h * strength),
                    spec.window / (strength * strength)};
        }
        case ChartKind::Mcusum: {
            const double drift = strength - 0.5 * spec.ref_strength;
            require(drift > 0.0, "delay_moments mcusum: requires strength > |delta|/2");
            const double d = spec.threshold;
            return {d / drift + 1.0 / (2.0 * drift * drift) -
                        (spec.dimension - 1) / (2.0 * strength * drift),
                    d / (drift * drift * drift)};
        }
        case ChartKind::Mglrt: {
            require(strength > 0.0, "delay_moments mglrt: requires strength > 0");
            const double b = spec.threshold;
            const double m2 = strength * strength;
            return {(b * b + spec.dimension) / m2 + 2.0, 4.0 * b * b / (m2 * m2)};
        }
        default:
            throw UnsupportedKind("delay_moments: no expansion for this kind");
    }
}

namespace detail {

inline ApproxResult normal_law_pod(const ChartSpec& spec, double strength, int L) {
    const DelayMoments m = delay_moments(spec, strength);
    ApproxResult out;
    out.regime = ApproxResult::Regime::NormalLaw;
    out.value = clamp_unit(normal_cdf((L - m.mean) / std::sqrt(m.variance)));
    return out;
}

inline void window_range_warning(ApproxResult& out, double lo, double x, double hi,
                                 const char* label) {
    if (!(lo < x && x < hi))
        out.warnings.push_back(std::string(label) + " outside window validity range");
}

}  // namespace detail

// Power of detection P*(tau <= L) under a transient signal of the given
// whitened-scale strength. Local regime below each chart's alarm level,
// normal-law regime above it. At strength exactly 0 this is the FDP through
// the identical code path.
inline ApproxResult pod_approx(const ChartSpec& spec_in, double strength, int L,
                               const OvershootConvention& conv,
                               bool boundary_corrected = false) {
    const ChartSpec spec = boundary_corrected ? with_boundary_correction(spec_in) : spec_in;
    spec.validate();
    if (strength < 0.0) throw DomainError("pod_approx: strength must be >= 0");
    if (strength == 0.0) return fdp_approx(spec, L, conv);
    if (L <= 0) return {};
    ApproxResult out;
    switch (spec.kind) {
        case ChartKind::Ewma: {
            const double h = spec.alarm_level();
            if (strength > h) return detail::normal_law_pod(spec, strength, L);
            const double sum =
                detail::ewma_local_sum(spec.beta, spec.threshold, strength, L, conv);
            out.value = detail::clamp_unit(1.0 - std::exp(-sum));
            out.regime = ApproxResult::Regime::LocalIntegral;
            if (strength == h)
                out.warnings.push_back("strength equals alarm level; normal law undefined");
            break;
        }
        case ChartKind::Ma: {
            const double h = spec.threshold;
            if (strength > h) return detail::normal_law_pod(spec, strength, L);
            const int w = spec.window;
            const double rw = std::sqrt(static_cast<double>(w));
            const auto g = [&](double u) {
                const double gap = h - u * strength;
                return rw * gap * normal_pdf(rw * gap) *
                       overshoot_correction(std::numbers::sqrt2 * gap, conv.mode);
            };
            const double horizon = static_cast<double>(L) / w;
            double val = integrate(g, 0.0, std::min(horizon, 1.0));
            if (horizon > 1.0) val += (horizon - 1.0) * g(1.0);
            out.value = detail::clamp_unit(val);
            out.regime = ApproxResult::Regime::LocalIntegral;
            if (strength == h)
                out.warnings.push_back("strength equals alarm level; normal law undefined");
            break;
        }
        case ChartKind::Cusum:
            return detail::normal_law_pod(spec, strength, L);
        case ChartKind::WindowedGlr: {
            out = detail::normal_law_pod(spec, strength, L);
            detail::window_range_warning(out, spec.threshold / std::sqrt(double(spec.window_hi)),
                                         strength,
                                         spec.threshold / std::sqrt(double(spec.window_lo)),
                                         "strength");
            break;
        }
        case ChartKind::Mewma: {
            const double h = spec.threshold * std::sqrt(spec.beta / (2.0 - spec.beta));
            if (strength > h) return detail::normal_law_pod(spec, strength, L);
            const double b = spec.threshold;
            const double scale2 = strength * strength * (2.0 - spec.beta) / spec.beta;
            const int n = spec.dimension;
            const double arg = detail::ewma_arg_factor(spec.beta, conv);
            const auto q = [&](double s) {
                const double absorbed = 1.0 - std::exp(-s);
                const double bs = std::sqrt(b * b - absorbed * absorbed * scale2);
                return std::exp(detail::log_chi_tail_factor(bs, n) +
                                std::log(overshoot_correction(bs * arg, conv.mode)));
            };
            out.value = detail::clamp_unit(2.0 * integrate(q, 0.0, L * spec.beta));
            out.regime = ApproxResult::Regime::LocalIntegral;
            if (strength == h)
                out.warnings.push_back("strength equals alarm level; normal law undefined");
            break;
        }
        case ChartKind::Mma: {
            const double h = spec.threshold;
            if (strength > h) return detail::normal_law_pod(spec, strength, L);
            const int w = spec.window;
            const int n = spec.dimension;
            const double rw = std::sqrt(static_cast<double>(w));
            const auto q = [&](double t) {
                const double frac = std::min(t, 1.0);
                const double ht = std::sqrt(h * h - strength * strength * frac * frac);
                return std::exp(detail::log_chi_tail_factor(ht * rw, n) +
                                std::log(overshoot_correction(std::numbers::sqrt2 * ht,
                                                              conv.mode)));
            };
            const double horizon = static_cast<double>(L) / w;
            double val = 2.0 * integrate(q, 0.0, std::min(horizon, 1.0));
            if (horizon > 1.0) val += 2.0 * (horizon - 1.0) * q(1.0);
            out.value = detail::clamp_unit(val);
            out.regime = ApproxResult::Regime::LocalIntegral;
            if (strength == h)
                out.warnings.push_back("strength equals alarm level; normal law undefined");
            break;
        }
        case ChartKind::Mcusum: {
            out = detail::normal_law_pod(spec, strength, L);
            const double drift = strength - 0.5 * spec.ref_strength;
            detail::window_range_warning(out, spec.threshold / spec.window_hi, drift,
                                         spec.threshold / spec.window_lo, "drift");
            break;
        }
        case ChartKind::Mglrt: {
            out = detail::normal_law_pod(spec, strength, L);
            detail::window_range_warning(out, spec.threshold / std::sqrt(double(spec.window_hi)),
                                         strength,
                                         spec.threshold / std::sqrt(double(spec.window_lo)),
                                         "strength");
            break;
        }
        default:
            throw UnsupportedKind("pod_approx: no expansion for this kind");
    }
    return out;
}

inline ApproxResult pod_approx(const ChartSpec& spec, double strength, int L) {
    return pod_approx(spec, strength, L,
                      spec.is_multivariate() ? OvershootConvention::defaults_mv()
                                             : OvershootConvention::defaults_1d());
}

}  // namespace tscan
