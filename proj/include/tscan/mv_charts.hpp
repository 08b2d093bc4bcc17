#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tscan/chart_spec.hpp"
#include "tscan/charts1d.hpp"
#include "tscan/linalg.hpp"
#include "tscan/rolling.hpp"

namespace tscan {

// Soft-threshold weight for one channel given its squared statistic y2:
//   e^{y2/2} / ((1-p)/p + e^{y2/2})
// computed in the numerically safe form 1 / (1 + ((1-p)/p) e^{-y2/2}).
// Strictly increasing in y2 and confined to (p, 1).
inline double soft_weight(double y2, double p) {
    return 1.0 / (1.0 + ((1.0 - p) / p) * std::exp(-0.5 * y2));
}

// Weighted sum of squared per-channel values; compared to the soft design's
// alarm level on its natural scale.
inline double soft_threshold_stat(std::span<const double> y, double p) {
    double s = 0.0;
    for (double v : y) {
        const double y2 = v * v;
        s += soft_weight(y2, p) * y2;
    }
    return s;
}

// Truncated sum: channels with squared value <= cut are dropped.
inline double hard_threshold_stat(std::span<const double> y, double cut) {
    double s = 0.0;
    for (double v : y) {
        const double y2 = v * v;
        if (y2 > cut) s += y2;
    }
    return s;
}

struct ThresholdMode {
    enum class Kind { Soft, Hard } kind = Kind::Hard;
    double param = 0.25;  // p for Soft, cut for Hard

    static ThresholdMode soft(double p) { return {Kind::Soft, p}; }
    static ThresholdMode hard(double cut) { return {Kind::Hard, cut}; }
};

inline double threshold_stat(std::span<const double> y, const ThresholdMode& mode) {
    return mode.kind == ThresholdMode::Kind::Soft ? soft_threshold_stat(y, mode.param)
                                                  : hard_threshold_stat(y, mode.param);
}

// Streaming state machine for the multivariate chart kinds. Observations are
// assumed already whitened (identity covariance); apply
// CovarianceModel::whiten upstream when the raw covariance is not identity.
class MonitorMV {
public:
    explicit MonitorMV(const ChartSpec& spec) : spec_(spec) {
        spec_.validate();
        if (!spec_.is_multivariate())
            throw SpecError("MonitorMV: one-dimensional kind, use Monitor1D");
        const int n = spec_.dimension;
        switch (spec_.kind) {
            case ChartKind::Mewma:
            case ChartKind::MewmaSoft:
            case ChartKind::MewmaHard:
            case ChartKind::Mc1:
                y_.assign(n, 0.0);
                break;
            case ChartKind::Mma:
            case ChartKind::MmaHard:
                buf_.emplace(spec_.window, n);
                scratch_.assign(n, 0.0);
                break;
            case ChartKind::Mcusum:
            case ChartKind::Mglrt:
            case ChartKind::MglrtHard:
                buf_.emplace(spec_.window_hi, n);
                scratch_.assign(n, 0.0);
                break;
            default:
                break;
        }
    }

    const ChartSpec& spec() const { return spec_; }
    std::int64_t step_count() const { return t_; }
    std::int64_t change_point_estimate() const { return anchor_; }  // MC1's nu-hat
    std::span<const double> ewma_vector() const { return y_; }

    void reset() {
        t_ = 0;
        anchor_ = 0;
        std::fill(y_.begin(), y_.end(), 0.0);
        if (buf_) buf_->reset();
    }

    StepDecision step(std::span<const double> x) {
        if (static_cast<int>(x.size()) != spec_.dimension)
            throw DimensionMismatch("MonitorMV::step: observation dimension mismatch");
        ++t_;
        double stat = 0.0;
        switch (spec_.kind) {
            case ChartKind::Mewma:
                update_ewma(x);
                stat = squared_norm(y_);
                break;
            case ChartKind::MewmaSoft:
                update_ewma(x);
                stat = soft_threshold_stat(y_, spec_.soft_p);
                break;
            case ChartKind::MewmaHard:
                update_ewma(x);
                stat = hard_threshold_stat(y_, spec_.hard_cut);
                break;
            case ChartKind::Mma: {
                buf_->push(x);
                const int w = buf_->count();
                stat = std::sqrt(buf_->window_mean_sqnorm(w));
                break;
            }
            case ChartKind::MmaHard: {
                buf_->push(x);
                const int w = buf_->count();
                buf_->sum_last(w, scratch_);
                for (double& v : scratch_) v /= w;
                stat = hard_threshold_stat(scratch_, spec_.hard_cut);
                break;
            }
            case ChartKind::Mcusum: {
                // max over w in (w0, w1] of w*(||mean|| - ||delta||/2)
                buf_->push(x);
                const int hi = std::min<int>(buf_->count(), spec_.window_hi);
                stat = -std::numeric_limits<double>::infinity();
                for (int w = spec_.window_lo + 1; w <= hi; ++w)
                    stat = std::max(stat, w * (std::sqrt(buf_->window_mean_sqnorm(w)) -
                                               spec_.ref_strength / 2.0));
                if (hi <= spec_.window_lo) stat = 0.0;
                break;
            }
            case ChartKind::Mglrt: {
                // max over w in [w0, w1) of w*||mean||^2
                buf_->push(x);
                const int hi = std::min<int>(buf_->count(), spec_.window_hi - 1);
                stat = 0.0;
                for (int w = spec_.window_lo; w <= hi; ++w)
                    stat = std::max(stat, w * buf_->window_mean_sqnorm(w));
                break;
            }
            case ChartKind::MglrtHard: {
                buf_->push(x);
                const int hi = std::min<int>(buf_->count(), spec_.window_hi - 1);
                stat = 0.0;
                for (int w = spec_.window_lo; w <= hi; ++w) {
                    buf_->sum_last(w, scratch_);
                    for (double& v : scratch_) v /= w;
                    stat = std::max(stat, w * hard_threshold_stat(scratch_, spec_.hard_cut));
                }
                break;
            }
            case ChartKind::Mc1: {
                // MC1_t = max(0, ||sum_{nu+1..t} x|| - (k1/2)(t - nu)); a zero
                // value resets the anchor to the current step.
                for (int j = 0; j < spec_.dimension; ++j) y_[j] += x[j];
                const double norm = std::sqrt(squared_norm(y_));
                stat = std::max(0.0, norm - 0.5 * spec_.ref_strength * (t_ - anchor_));
                if (stat == 0.0) {
                    anchor_ = t_;
                    std::fill(y_.begin(), y_.end(), 0.0);
                }
                break;
            }
            default:
                break;
        }
        const bool alarm = t_ >= spec_.first_alarm_step() && stat > spec_.alarm_level();
        return {stat, alarm, t_};
    }

private:
    void update_ewma(std::span<const double> x) {
        const double keep = 1.0 - spec_.beta;
        for (int j = 0; j < spec_.dimension; ++j) y_[j] = keep * y_[j] + spec_.beta * x[j];
    }

    ChartSpec spec_;
    std::int64_t t_ = 0;
    std::int64_t anchor_ = 0;
    std::vector<double> y_;
    std::vector<double> scratch_;
    std::optional<RollingVecSums> buf_;
};

// Row-per-step scan over a whitened observation matrix (rows x dimension).
inline ScanResult run_first_alarm_mv(const ChartSpec& spec, const Matrix& rows) {
    MonitorMV chart(spec);
    ScanResult out;
    out.trace.reserve(rows.rows());
    for (int t = 0; t < rows.rows(); ++t) {
        const StepDecision d = chart.step(rows.row(t));
        out.trace.push_back(d.statistic);
        if (d.alarm && !out.first_alarm) out.first_alarm = d.t;
    }
    return out;
}

}  // namespace tscan
