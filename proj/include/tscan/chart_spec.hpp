#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tscan/errors.hpp"

namespace tscan {

enum class ChartKind {
    // one-dimensional
    Ewma,
    Ma,
    MovingEwma,
    Cusum,
    WindowedGlr,
    // multivariate (whitened observations)
    Mewma,
    Mma,
    Mcusum,
    Mglrt,
    Mc1,
    // per-channel threshold variants of the multivariate charts
    MewmaSoft,
    MewmaHard,
    MmaHard,
    MglrtHard,
};

// Full parameterization of one chart instance. Fields irrelevant to the kind
// are ignored; validate() rejects a spec missing a field its kind requires.
//
// `threshold` is stored on each kind's design scale and alarm_level() maps it
// to the emitted statistic's scale:
//   Ewma        statistic Y_t,            level threshold * sqrt(beta/(2-beta))
//   Ma/MovEwma  window mean,              level threshold            (h)
//   Cusum       positive-part level,      level threshold            (d)
//   WindowedGlr max sqrt(w)*mean,         level threshold            (b)
//   Mewma       Y^T Y,                    level threshold^2 * beta/(2-beta)
//   Mma         sqrt(mean^T mean),        level threshold            (h)
//   Mcusum      max w*(||mean|| - d/2),   level threshold            (d)
//   Mglrt       max w*||mean||^2,         level threshold^2          (b^2)
//   Mc1         recursive cusum norm,     level threshold            (h1)
//   MewmaSoft   weighted sum of Y_j^2,    level threshold (natural scale)
//   MewmaHard   truncated sum of Y_j^2,   level threshold (natural scale)
//   MmaHard     truncated sum of mean^2,  level threshold (natural scale)
//   MglrtHard   max w*truncated sum,      level threshold^2
struct ChartSpec {
    ChartKind kind = ChartKind::Ewma;
    int dimension = 1;         // N
    double beta = 0.0;         // EWMA weight in (0,1)
    int window = 0;            // w   (Ma, MovingEwma, Mma, MmaHard)
    int window_lo = 0;         // w0  (windowed charts)
    int window_hi = 0;         // w1
    double ref_strength = 0;   // delta, ||delta||, or k1
    double threshold = 0;      // b, h, d, or h1 per kind (see above)
    double soft_p = 0;         // changed-proportion reference p in (0,1)
    double hard_cut = 0;       // truncation level on the squared statistic

    void validate() const;
    double alarm_level() const;
    bool is_multivariate() const;
    // Smallest step index at which the chart may raise an alarm. Follows
    // each definition literally: Ma/MovingEwma from n >= w, WindowedGlr and
    // Mcusum strictly after w1, Mma strictly after w, Mglrt once the first
    // full window of length w0 exists, the recursive kinds from n = 1.
    std::int64_t first_alarm_step() const;
    // Number of windows a windowed kind scans per step.
    int window_count() const;
};

// Decision emitted by one chart step. `statistic` is on the kind's natural
// scale; alarm == (t >= first_alarm_step && statistic > alarm_level).
struct StepDecision {
    double statistic = 0.0;
    bool alarm = false;
    std::int64_t t = 0;
};

// Transient-signal description: mean shifts to `mean` on steps
// (change_time, change_time + length] and reverts afterwards. An all-zero
// mean is the null scenario.
struct ScenarioSpec {
    std::int64_t change_time = 0;  // nu
    int length = 1;                // L
    std::vector<double> mean;      // mu, raw (unwhitened) scale

    void validate_for(const ChartSpec& spec) const {
        if (length < 1) throw SpecError("scenario: length must be >= 1");
        if (change_time < 0) throw SpecError("scenario: change_time must be >= 0");
        if (static_cast<int>(mean.size()) != spec.dimension)
            throw DimensionMismatch("scenario: mean dimension != chart dimension");
    }
};

// Monte Carlo estimate with its binomial / sample standard error.
struct EstimateWithError {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t reps = 0;
    std::uint64_t seed = 0;
};

inline const char* to_string(ChartKind k) {
    switch (k) {
        case ChartKind::Ewma: return "ewma";
        case ChartKind::Ma: return "ma";
        case ChartKind::MovingEwma: return "moving-ewma";
        case ChartKind::Cusum: return "cusum";
        case ChartKind::WindowedGlr: return "wgl";
        case ChartKind::Mewma: return "mewma";
        case ChartKind::Mma: return "mma";
        case ChartKind::Mcusum: return "mcusum";
        case ChartKind::Mglrt: return "mglrt";
        case ChartKind::Mc1: return "mc1";
        case ChartKind::MewmaSoft: return "mewma-soft";
        case ChartKind::MewmaHard: return "mewma-hard";
        case ChartKind::MmaHard: return "mma-hard";
        case ChartKind::MglrtHard: return "mglrt-hard";
    }
    return "?";
}

inline bool ChartSpec::is_multivariate() const {
    switch (kind) {
        case ChartKind::Ewma:
        case ChartKind::Ma:
        case ChartKind::MovingEwma:
        case ChartKind::Cusum:
        case ChartKind::WindowedGlr:
            return false;
        default:
            return true;
    }
}

inline void ChartSpec::validate() const {
    const std::string who = std::string(to_string(kind)) + ": ";
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw SpecError(who + what);
    };
    need(threshold > 0.0, "threshold must be > 0");
    if (is_multivariate())
        need(dimension >= 1, "dimension must be >= 1");
    else
        need(dimension == 1, "one-dimensional kind requires dimension == 1");
    switch (kind) {
        case ChartKind::Ewma:
        case ChartKind::Mewma:
            need(beta > 0.0 && beta < 1.0, "beta must be in (0,1)");
            break;
        case ChartKind::MovingEwma:
            need(beta > 0.0 && beta < 1.0, "beta must be in (0,1)");
            need(window >= 1, "window must be >= 1");
            break;
        case ChartKind::Ma:
        case ChartKind::Mma:
            need(window >= 1, "window must be >= 1");
            break;
        case ChartKind::Cusum:
            need(ref_strength >= 0.0, "ref_strength must be >= 0");
            break;
        case ChartKind::Mc1:
            need(ref_strength >= 0.0, "ref_strength (k1) must be >= 0");
            break;
        case ChartKind::WindowedGlr:
        case ChartKind::Mglrt:
            need(window_lo >= 1 && window_lo < window_hi, "requires 1 <= w0 < w1");
            break;
        case ChartKind::Mcusum:
            need(window_lo >= 1 && window_lo < window_hi, "requires 1 <= w0 < w1");
            need(ref_strength >= 0.0, "ref_strength must be >= 0");
            break;
        case ChartKind::MewmaSoft:
            need(beta > 0.0 && beta < 1.0, "beta must be in (0,1)");
            need(soft_p > 0.0 && soft_p < 1.0, "soft_p must be in (0,1)");
            break;
        case ChartKind::MewmaHard:
            need(beta > 0.0 && beta < 1.0, "beta must be in (0,1)");
            need(hard_cut >= 0.0, "hard_cut must be >= 0");
            break;
        case ChartKind::MmaHard:
            need(window >= 1, "window must be >= 1");
            need(hard_cut >= 0.0, "hard_cut must be >= 0");
            break;
        case ChartKind::MglrtHard:
            need(window_lo >= 1 && window_lo < window_hi, "requires 1 <= w0 < w1");
            need(hard_cut >= 0.0, "hard_cut must be >= 0");
            break;
    }
}

inline double ChartSpec::alarm_level() const {
    switch (kind) {
        case ChartKind::Ewma:
            return threshold * std::sqrt(beta / (2.0 - beta));
        case ChartKind::Mewma:
            return threshold * threshold * beta / (2.0 - beta);
        case ChartKind::Mglrt:
        case ChartKind::MglrtHard:
            return threshold * threshold;
        default:
            return threshold;
    }
}

inline std::int64_t ChartSpec::first_alarm_step() const {
    switch (kind) {
        case ChartKind::Ma:
        case ChartKind::MovingEwma:
            return window;
        case ChartKind::Mma:
        case ChartKind::MmaHard:
            return window + 1;
        case ChartKind::WindowedGlr:
        case ChartKind::Mcusum:
            return window_hi + 1;
        case ChartKind::Mglrt:
        case ChartKind::MglrtHard:
            return window_lo;
        default:
            return 1;
    }
}

inline int ChartSpec::window_count() const {
    switch (kind) {
        case ChartKind::WindowedGlr:
        case ChartKind::Mglrt:
        case ChartKind::MglrtHard:
            return window_hi - window_lo;  // w in [w0, w1)
        case ChartKind::Mcusum:
            return window_hi - window_lo;  // w in (w0, w1]
        default:
            return 1;
    }
}

// Convenience builders mirroring each chart's design parameters.
namespace specs {

inline ChartSpec ewma(double beta, double b) {
    return {.kind = ChartKind::Ewma, .beta = beta, .threshold = b};
}
inline ChartSpec ma(int w, double h) {
    return {.kind = ChartKind::Ma, .window = w, .threshold = h};
}
inline ChartSpec moving_ewma(double beta, int w, double h) {
    return {.kind = ChartKind::MovingEwma, .beta = beta, .window = w, .threshold = h};
}
inline ChartSpec cusum(double delta, double d) {
    return {.kind = ChartKind::Cusum, .ref_strength = delta, .threshold = d};
}
inline ChartSpec windowed_glr(int w0, int w1, double b) {
    return {.kind = ChartKind::WindowedGlr, .window_lo = w0, .window_hi = w1, .threshold = b};
}
inline ChartSpec mewma(int n, double beta, double b) {
    return {.kind = ChartKind::Mewma, .dimension = n, .beta = beta, .threshold = b};
}
inline ChartSpec mma(int n, int w, double h) {
    return {.kind = ChartKind::Mma, .dimension = n, .window = w, .threshold = h};
}
inline ChartSpec mcusum(int n, int w0, int w1, double delta_norm, double d) {
    return {.kind = ChartKind::Mcusum,
            .dimension = n,
            .window_lo = w0,
            .window_hi = w1,
            .ref_strength = delta_norm,
            .threshold = d};
}
inline ChartSpec mglrt(int n, int w0, int w1, double b) {
    return {.kind = ChartKind::Mglrt,
            .dimension = n,
            .window_lo = w0,
            .window_hi = w1,
            .threshold = b};
}
inline ChartSpec mc1(int n, double k1, double h1) {
    return {.kind = ChartKind::Mc1, .dimension = n, .ref_strength = k1, .threshold = h1};
}
inline ChartSpec mewma_soft(int n, double beta, double p, double level) {
    return {.kind = ChartKind::MewmaSoft,
            .dimension = n,
            .beta = beta,
            .threshold = level,
            .soft_p = p};
}
inline ChartSpec mewma_hard(int n, double beta, double cut, double level) {
    return {.kind = ChartKind::MewmaHard,
            .dimension = n,
            .beta = beta,
            .threshold = level,
            .hard_cut = cut};
}
inline ChartSpec mma_hard(int n, int w, double cut, double level) {
    return {.kind = ChartKind::MmaHard,
            .dimension = n,
            .window = w,
            .threshold = level,
            .hard_cut = cut};
}
inline ChartSpec mglrt_hard(int n, int w0, int w1, double cut, double b) {
    return {.kind = ChartKind::MglrtHard,
            .dimension = n,
            .window_lo = w0,
            .window_hi = w1,
            .threshold = b,
            .hard_cut = cut};
}

}  // namespace specs
}  // namespace tscan
