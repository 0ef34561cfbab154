#include "shadowsim/history.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shadowsim {

XiHistory::XiHistory(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() != values_.size()) {
        throw std::invalid_argument("XiHistory: times/values length mismatch");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("XiHistory: times must be strictly increasing");
        }
    }
}

void XiHistory::append(double t, double xi) {
    if (!times_.empty() && !(t > times_.back())) {
        throw std::invalid_argument("XiHistory::append: time must increase");
    }
    times_.push_back(t);
    values_.push_back(xi);
}

double XiHistory::value_at(double t) const {
    if (empty()) throw std::invalid_argument("XiHistory: empty");
    if (t < times_.front() - 1e-12 || t > times_.back() + 1e-12) {
        throw std::invalid_argument("XiHistory: t = " + std::to_string(t) +
                                    " outside sampled range");
    }
    t = std::clamp(t, times_.front(), times_.back());
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return values_.front();
    if (it == times_.end()) return values_.back();
    const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
    return (1.0 - w) * values_[lo] + w * values_[hi];
}

CumulativeKernelIntegral::CumulativeKernelIntegral(const XiHistory& hist,
                                                   std::function<double(double)> phi,
                                                   double kappa)
    : hist_(hist), phi_(std::move(phi)), kappa_(kappa) {
    if (hist_.empty()) throw std::invalid_argument("CumulativeKernelIntegral: empty history");
    knot_cumulative_.resize(hist_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < hist_.size(); ++i) {
        knot_cumulative_[i + 1] = knot_cumulative_[i] + partial(i, hist_.times()[i + 1]);
    }
}

double CumulativeKernelIntegral::partial(std::size_t interval, double t_end) const {
    const auto& ts = hist_.times();
    const auto& xs = hist_.values();
    const double t0 = ts[interval];
    const double t1 = ts[interval + 1];
    const double span = std::min(t_end, t1) - t0;
    if (span <= 0.0) return 0.0;
    constexpr int kRefine = 10;
    const double h = span / kRefine;
    const double slope = (xs[interval + 1] - xs[interval]) / (t1 - t0);
    auto integrand = [&](double t) {
        const double xi = xs[interval] + slope * (t - t0);
        return phi_(xi) * std::exp(-kappa_ * (t - hist_.t_front()));
    };
    double acc = 0.5 * (integrand(t0) + integrand(t0 + span));
    for (int j = 1; j < kRefine; ++j) acc += integrand(t0 + j * h);
    return acc * h;
}

double CumulativeKernelIntegral::value(double t) const {
    const auto& ts = hist_.times();
    if (t < ts.front() - 1e-12 || t > ts.back() + 1e-12) {
        throw std::invalid_argument("CumulativeKernelIntegral: t outside history range");
    }
    t = std::clamp(t, ts.front(), ts.back());
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return 0.0;
    std::size_t lo = static_cast<std::size_t>(it - ts.begin()) - 1;
    if (lo + 1 >= ts.size()) return knot_cumulative_.back();
    return knot_cumulative_[lo] + partial(lo, t);
}

std::optional<double> CumulativeKernelIntegral::crossing(double target, double tol) const {
    const auto& ts = hist_.times();
    if (value(ts.back()) < target) return std::nullopt;
    if (value(ts.front()) >= target) return ts.front();
    double lo = ts.front();
    double hi = ts.back();
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (value(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace shadowsim
