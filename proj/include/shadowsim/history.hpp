#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace shadowsim {

/// Sampled xi(t) with piecewise-linear interpolation between knots.
/// Produced by runs (one knot per accepted step) and consumed by the
/// closed-form evaluators.
class XiHistory {
public:
    XiHistory() = default;
    /// Knot times must be strictly increasing; throws otherwise.
    XiHistory(std::vector<double> times, std::vector<double> values);

    void append(double t, double xi);

    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }
    double t_front() const { return times_.front(); }
    double t_back() const { return times_.back(); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

    /// Piecewise-linear value at t; t must lie within the knot range.
    double value_at(double t) const;

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Cumulative integral I(t) = Int_{t0}^{t} phi(xi(s)) exp(-kappa (s - t0)) ds
/// over a xi history, with phi applied to the linear interpolant and the
/// integral taken by the trapezoid rule on each knot interval refined 10x.
/// Monotone nondecreasing for nonnegative phi, which makes the crossing
/// search below well posed.
class CumulativeKernelIntegral {
public:
    CumulativeKernelIntegral(const XiHistory& hist, std::function<double(double)> phi,
                             double kappa);

    double value(double t) const;

    /// Smallest t with value(t) = target, by bisection to `tol` in t;
    /// nullopt when the integral never reaches the target in range.
    std::optional<double> crossing(double target, double tol = 1e-12) const;

private:
    double partial(std::size_t interval, double t_end) const;

    const XiHistory& hist_;
    std::function<double(double)> phi_;
    double kappa_;
    std::vector<double> knot_cumulative_;
};

}  // namespace shadowsim
