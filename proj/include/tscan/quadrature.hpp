#pragma once

#include <cmath>
#include <concepts>

namespace tscan {

namespace detail {

template <typename F>
double simpson(F&& f, double a, double fa, double b, double fb, double& fm) {
    const double m = 0.5 * (a + b);
    fm = f(m);
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(F&& f, double a, double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
    double flm, frm;
    const double left = simpson(f, a, fa, m, fm, flm);
    const double right = simpson(f, m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, 0.5 * (a + m), flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, 0.5 * (m + b), frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature. The interval is first split into
// `initial_panels` equal panels (so a caller can halve the starting step to
// probe stability), then each panel is refined to the requested absolute
// tolerance.
template <typename F>
    requires std::invocable<F&, double>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10, int initial_panels = 8) {
    if (!(b > a)) return 0.0;
    double total = 0.0;
    const double h = (b - a) / initial_panels;
    const double panel_tol = abs_tol / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == initial_panels) ? b : a + (i + 1) * h;
        const double flo = f(lo);
        const double fhi = f(hi);
        double fm;
        const double whole = detail::simpson(f, lo, flo, hi, fhi, fm);
        total += detail::adaptive_step(f, lo, flo, hi, fhi, 0.5 * (lo + hi), fm, whole,
                                       panel_tol, 48);
    }
    return total;
}

// Improper integral over [a, inf): doubling segments until a segment's
// contribution and the integrand itself are negligible.
template <typename F>
    requires std::invocable<F&, double>
double integrate_to_infinity(F&& f, double a, double abs_tol = 1e-10) {
    double total = 0.0;
    double lo = a;
    double len = std::max(1.0, std::abs(a));
    for (int seg = 0; seg < 64; ++seg) {
        const double hi = lo + len;
        const double part = integrate(f, lo, hi, abs_tol, 4);
        total += part;
        if (std::abs(part) < 1e-14 && std::abs(f(hi)) < 1e-16) break;
        lo = hi;
        len *= 2.0;
    }
    return total;
}

}  // namespace tscan
