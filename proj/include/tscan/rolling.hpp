#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace tscan {

// Ring buffer over the last `capacity` observations with O(1) trailing-window
// sums via a companion ring of cumulative totals. The cumulative ring is
// rebuilt from the raw ring every 2^16 pushes so floating-point drift cannot
// accumulate over long streams.
class RollingSums {
public:
    static constexpr std::int64_t kRebaseInterval = 1 << 16;

    explicit RollingSums(int capacity)
        : cap_(capacity), raw_(capacity, 0.0), cum_(capacity + 1, 0.0) {}

    void push(double x) {
        ++steps_;
        raw_[static_cast<std::size_t>(steps_ % cap_)] = x;
        const double prev = cum_[static_cast<std::size_t>((steps_ - 1) % (cap_ + 1))];
        cum_[static_cast<std::size_t>(steps_ % (cap_ + 1))] = prev + x;
        if (steps_ % kRebaseInterval == 0) rebase();
    }

    std::int64_t steps() const { return steps_; }
    int count() const { return static_cast<int>(std::min<std::int64_t>(steps_, cap_)); }

    // Sum of the last w observations, 1 <= w <= count().
    double sum_last(int w) const {
        return cum_at(steps_) - cum_at(steps_ - w);
    }

    // Observation pushed `age` steps ago; age = 0 is the newest.
    double raw(int age) const {
        return raw_[static_cast<std::size_t>((steps_ - age) % cap_)];
    }

    void reset() {
        steps_ = 0;
        raw_.assign(raw_.size(), 0.0);
        cum_.assign(cum_.size(), 0.0);
    }

private:
    double cum_at(std::int64_t step) const {
        return cum_[static_cast<std::size_t>(step % (cap_ + 1))];
    }

    void rebase() {
        const int n = count();
        double acc = 0.0;
        cum_[static_cast<std::size_t>((steps_ - n) % (cap_ + 1))] = 0.0;
        for (std::int64_t s = steps_ - n + 1; s <= steps_; ++s) {
            acc += raw_[static_cast<std::size_t>(s % cap_)];
            cum_[static_cast<std::size_t>(s % (cap_ + 1))] = acc;
        }
    }

    int cap_;
    std::int64_t steps_ = 0;
    std::vector<double> raw_;
    std::vector<double> cum_;
};

// Vector-valued variant for the multivariate windowed charts. Layout is one
// contiguous block per ring slot.
class RollingVecSums {
public:
    RollingVecSums(int capacity, int dim)
        : cap_(capacity),
          dim_(dim),
          raw_(static_cast<std::size_t>(capacity) * dim, 0.0),
          cum_(static_cast<std::size_t>(capacity + 1) * dim, 0.0) {}

    void push(std::span<const double> x) {
        ++steps_;
        double* r = raw_slot(steps_);
        const double* prev = cum_slot(steps_ - 1);
        double* cur = cum_slot(steps_);
        for (int j = 0; j < dim_; ++j) {
            r[j] = x[j];
            cur[j] = prev[j] + x[j];
        }
        if (steps_ % RollingSums::kRebaseInterval == 0) rebase();
    }

    std::int64_t steps() const { return steps_; }
    int count() const { return static_cast<int>(std::min<std::int64_t>(steps_, cap_)); }
    int dim() const { return dim_; }

    // out[j] = sum over the last w observations of channel j.
    void sum_last(int w, std::span<double> out) const {
        const double* hi = cum_slot(steps_);
        const double* lo = cum_slot(steps_ - w);
        for (int j = 0; j < dim_; ++j) out[j] = hi[j] - lo[j];
    }

    // ||sum of last w observations||^2 / divisor^2
    double window_mean_sqnorm(int w) const {
        const double* hi = cum_slot(steps_);
        const double* lo = cum_slot(steps_ - w);
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) {
            const double d = (hi[j] - lo[j]) / w;
            s += d * d;
        }
        return s;
    }

    std::span<const double> raw(int age) const {
        return {raw_slot_const(steps_ - age), static_cast<std::size_t>(dim_)};
    }

    void reset() {
        steps_ = 0;
        raw_.assign(raw_.size(), 0.0);
        cum_.assign(cum_.size(), 0.0);
    }

private:
    double* raw_slot(std::int64_t step) {
        return raw_.data() + static_cast<std::size_t>(step % cap_) * dim_;
    }
    const double* raw_slot_const(std::int64_t step) const {
        return raw_.data() + static_cast<std::size_t>(step % cap_) * dim_;
    }
    double* cum_slot(std::int64_t step) {
        return cum_.data() + static_cast<std::size_t>(step % (cap_ + 1)) * dim_;
    }
    const double* cum_slot(std::int64_t step) const {
        return cum_.data() + static_cast<std::size_t>(step % (cap_ + 1)) * dim_;
    }

    void rebase() {
        const int n = count();
        double* base = cum_slot(steps_ - n);
        for (int j = 0; j < dim_; ++j) base[j] = 0.0;
        for (std::int64_t s = steps_ - n + 1; s <= steps_; ++s) {
            const double* r = raw_slot_const(s);
            const double* prev = cum_slot(s - 1);
            double* cur = cum_slot(s);
            for (int j = 0; j < dim_; ++j) cur[j] = prev[j] + r[j];
        }
    }

    int cap_;
    int dim_;
    std::int64_t steps_ = 0;
    std::vector<double> raw_;
    std::vector<double> cum_;
};

}  // namespace tscan
