#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tscan/chart_spec.hpp"
#include "tscan/rolling.hpp"

namespace tscan {

// Streaming state machine for the one-dimensional chart kinds. Value
// semantics, single-threaded per instance; one instance per monitored
// stream. Alarms are reported but the state keeps evolving, so a caller can
// either stop at the first alarm or record a full trace.
class Monitor1D {
public:
    explicit Monitor1D(const ChartSpec& spec) : spec_(spec) {
        spec_.validate();
        if (spec_.is_multivariate())
            throw SpecError("Monitor1D: multivariate kind, use MonitorMV");
        switch (spec_.kind) {
            case ChartKind::Ma:
                buf_.emplace(spec_.window);
                break;
            case ChartKind::MovingEwma:
                buf_.emplace(spec_.window);
                tail_weight_ = spec_.beta * std::pow(1.0 - spec_.beta, spec_.window);
                total_weight_ = 1.0 - std::pow(1.0 - spec_.beta, spec_.window);
                break;
            case ChartKind::WindowedGlr:
                buf_.emplace(spec_.window_hi);
                break;
            default:
                break;
        }
    }

    const ChartSpec& spec() const { return spec_; }
    std::int64_t step_count() const { return t_; }

    void reset() {
        t_ = 0;
        level_ = 0.0;
        if (buf_) buf_->reset();
    }

    // Start the CUSUM level from a nonzero value (analytic stationary start).
    void set_level(double y) { level_ = y; }

    StepDecision step(double x) {
        ++t_;
        double stat = 0.0;
        switch (spec_.kind) {
            case ChartKind::Ewma:
                level_ = (1.0 - spec_.beta) * level_ + spec_.beta * x;
                stat = level_;
                break;
            case ChartKind::Ma: {
                buf_->push(x);
                const int w = std::min<int>(buf_->count(), spec_.window);
                stat = buf_->sum_last(w) / w;
                break;
            }
            case ChartKind::MovingEwma: {
                // Y_{n;w} = (1-beta) Y_{n-1;w} + beta x_n - beta (1-beta)^w x_{n-w}
                const double leaving =
                    buf_->count() == spec_.window ? buf_->raw(spec_.window - 1) : 0.0;
                level_ = (1.0 - spec_.beta) * level_ + spec_.beta * x - tail_weight_ * leaving;
                buf_->push(x);
                if (t_ % RollingSums::kRebaseInterval == 0) recompute_moving_ewma();
                stat = level_ / total_weight_;
                break;
            }
            case ChartKind::Cusum:
                level_ = std::max(0.0, level_ + x - spec_.ref_strength / 2.0);
                stat = level_;
                break;
            case ChartKind::WindowedGlr: {
                buf_->push(x);
                // max over w in [w0, w1) of sqrt(w) * mean of the last w
                const int hi = std::min<int>(buf_->count(), spec_.window_hi - 1);
                stat = -std::numeric_limits<double>::infinity();
                for (int w = spec_.window_lo; w <= hi; ++w)
                    stat = std::max(stat, buf_->sum_last(w) / std::sqrt(static_cast<double>(w)));
                if (hi < spec_.window_lo) stat = 0.0;
                break;
            }
            default:
                break;
        }
        const bool alarm = t_ >= spec_.first_alarm_step() && stat > spec_.alarm_level();
        return {stat, alarm, t_};
    }

private:
    void recompute_moving_ewma() {
        const int n = buf_->count();
        double y = 0.0;
        for (int age = n - 1; age >= 0; --age)
            y = (1.0 - spec_.beta) * y + spec_.beta * buf_->raw(age);
        level_ = y;
    }

    ChartSpec spec_;
    std::int64_t t_ = 0;
    double level_ = 0.0;       // EWMA value, moving-EWMA weighted sum, or CUSUM level
    double tail_weight_ = 0.0;
    double total_weight_ = 1.0;
    std::optional<RollingSums> buf_;
};

struct ScanResult {
    std::optional<std::int64_t> first_alarm;  // 1-based step index
    std::vector<double> trace;                // one statistic per step
};

// Feed a finite series through a fresh chart; record every statistic and the
// first alarm index if any.
inline ScanResult run_first_alarm(const ChartSpec& spec, std::span<const double> series) {
    Monitor1D chart(spec);
    ScanResult out;
    out.trace.reserve(series.size());
    for (double x : series) {
        const StepDecision d = chart.step(x);
        out.trace.push_back(d.statistic);
        if (d.alarm && !out.first_alarm) out.first_alarm = d.t;
    }
    return out;
}

}  // namespace tscan
