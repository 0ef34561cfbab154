#include "shadowsim/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "shadowsim/analytic.hpp"

namespace shadowsim {

namespace {

constexpr double kMonitorRelTol = 1e-8;
constexpr double kNegativeClampFloor = -1e-12;
constexpr double kGrowthCapActivation = 0.97;  // fraction of blowup_threshold

double fast_pow(double base, double expo) {
    if (expo == 1.0) return base;
    if (expo == 2.0) return base * base;
    if (expo == 0.5) return std::sqrt(base);
    if (expo == 0.25) return std::sqrt(std::sqrt(base));
    if (expo == -1.0) return 1.0 / base;
    return std::pow(base, expo);
}

// ---------------------------------------------------------------------------
// Scalar kinetics, inlined per concrete model
// ---------------------------------------------------------------------------

template <class M>
struct Kin;

template <>
struct Kin<GrayScott> {
    GrayScott m;
    static constexpr bool clamp_negatives = true;
    bool admissible_xi(double) const { return true; }
    double f(double u, double xi) const { return -(m.B + m.k) * u + u * u * xi; }
    double g(double u, double xi) const { return -xi * u * u + m.B * (1.0 - xi); }
};

template <>
struct Kin<ActivatorInhibitor> {
    ActivatorInhibitor m;
    static constexpr bool clamp_negatives = true;
    bool admissible_xi(double xi) const { return xi > 0.0; }
    double f(double u, double xi) const {
        return -u + fast_pow(u, m.p) * fast_pow(xi, -m.q);
    }
    double g(double u, double xi) const {
        return (-xi + fast_pow(u, m.r) * fast_pow(xi, -m.s)) / m.tau;
    }
};

template <>
struct Kin<Carcinogenesis> {
    Carcinogenesis m;
    static constexpr bool clamp_negatives = true;
    bool admissible_xi(double) const { return true; }
    double f(double u, double xi) const {
        const double theta = u * xi;
        return (m.a * theta / (1.0 + theta) - m.d) * u;
    }
    double g(double u, double xi) const { return -xi - xi * u * u + m.kappa0; }
};

template <>
struct Kin<Generic> {
    const Generic& m;
    static constexpr bool clamp_negatives = false;
    bool admissible_xi(double) const { return true; }
    double f(double u, double xi) const { return m.f(u, xi); }
    double g(double u, double xi) const { return m.g(u, xi); }
};

// ---------------------------------------------------------------------------
// RK4 with quadrature-assembled xi stage derivatives
// ---------------------------------------------------------------------------

struct Workspace {
    std::vector<double> k1, k2, k3, k4, stage;
    double kx1 = 0, kx2 = 0, kx3 = 0, kx4 = 0;
    void resize(std::size_t n) {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        stage.resize(n);
    }
};

template <class K>
bool derivative(const K& kin, const SpatialGrid& grid, const std::vector<double>& u,
                double xi, std::vector<double>& du, double& dxi) {
    if (!kin.admissible_xi(xi) || !std::isfinite(xi)) return false;
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        du[i] = kin.f(u[i], xi);
        acc += grid.weights[i] * kin.g(u[i], xi);
    }
    dxi = acc;
    return std::isfinite(acc);
}

template <class K>
bool rk4_step(const K& kin, const SpatialGrid& grid, const std::vector<double>& u, double xi,
              double dt, std::vector<double>& u_out, double& xi_out, Workspace& ws) {
    const std::size_t n = u.size();
    if (!derivative(kin, grid, u, xi, ws.k1, ws.kx1)) return false;
    for (std::size_t i = 0; i < n; ++i) ws.stage[i] = u[i] + 0.5 * dt * ws.k1[i];
    if (!derivative(kin, grid, ws.stage, xi + 0.5 * dt * ws.kx1, ws.k2, ws.kx2)) return false;
    for (std::size_t i = 0; i < n; ++i) ws.stage[i] = u[i] + 0.5 * dt * ws.k2[i];
    if (!derivative(kin, grid, ws.stage, xi + 0.5 * dt * ws.kx2, ws.k3, ws.kx3)) return false;
    for (std::size_t i = 0; i < n; ++i) ws.stage[i] = u[i] + dt * ws.k3[i];
    if (!derivative(kin, grid, ws.stage, xi + dt * ws.kx3, ws.k4, ws.kx4)) return false;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        u_out[i] = u[i] + dt / 6.0 * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
        finite = finite && std::isfinite(u_out[i]);
    }
    xi_out = xi + dt / 6.0 * (ws.kx1 + 2.0 * ws.kx2 + 2.0 * ws.kx3 + ws.kx4);
    return finite && std::isfinite(xi_out);
}

// ---------------------------------------------------------------------------
// Monitors
// ---------------------------------------------------------------------------

class Monitor {
public:
    explicit Monitor(std::string tag) : tag_(std::move(tag)) {}
    virtual ~Monitor() = default;
    virtual void evaluate(const SpatialGrid& grid, const ShadowState& s,
                          RunReport& report) = 0;
    void finalize(RunReport& report) {
        report.monitor_log.push_back(MonitorRecord{tag_, worst_t_, worst_lhs_, worst_rhs_,
                                                   clean_});
    }

protected:
    // Inequality lhs <= rhs with 1e-8 relative slack; violations are logged,
    // the worst margin over the run is kept for the summary row.
    void check(double t, double lhs, double rhs, RunReport& report) {
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        const double margin = (lhs - rhs) / scale;
        if (margin > worst_margin_) {
            worst_margin_ = margin;
            worst_t_ = t;
            worst_lhs_ = lhs;
            worst_rhs_ = rhs;
        }
        if (lhs - rhs > kMonitorRelTol * scale) {
            clean_ = false;
            report.monitor_log.push_back(MonitorRecord{tag_, t, lhs, rhs, false});
        }
    }

    std::string tag_;
    bool clean_ = true;
    double worst_margin_ = -std::numeric_limits<double>::infinity();
    double worst_t_ = 0.0, worst_lhs_ = 0.0, worst_rhs_ = 0.0;
};

class GsXiBandMonitor : public Monitor {
public:
    GsXiBandMonitor(double xi0) : Monitor("gs-xi-band"), cap_(std::max(xi0, 1.0)) {}
    void evaluate(const SpatialGrid&, const ShadowState& s, RunReport& report) override {
        check(s.t, 0.0, s.xi, report);
        check(s.t, s.xi, cap_, report);
    }

private:
    double cap_;
};

class GsEnvelopeMonitor : public Monitor {
public:
    GsEnvelopeMonitor(const GrayScott& m, const SpatialGrid& grid, const Field& u0,
                      double xi0)
        : Monitor("gs-blowup-envelope"), kappa_(m.B + m.k) {
        const auto ties = argmax_set(grid, u0, 0.0);
        if (ties.size() != 1) {
            throw std::invalid_argument(
                "gs-blowup-envelope: initial datum must have a unique maximum");
        }
        x_star_ = ties.front();
        const double a0 =
            singular_mass_functional(GrayScott{m}, grid, u0, x_star_).value;
        xi_lo_ = std::min(xi0, m.B / (a0 + m.B));
        xi_hi_ = std::max(xi0, 1.0);
        coeff_.resize(u0.size(), 0.0);
        for (std::size_t i = 0; i < u0.size(); ++i) {
            if (i == x_star_) continue;
            coeff_[i] = u0[x_star_] * u0[i] / (u0[x_star_] - u0[i]);
        }
    }
    void evaluate(const SpatialGrid&, const ShadowState& s, RunReport& report) override {
        const double decay = std::exp(-kappa_ * s.t);
        double worst_lhs = 0.0, worst_rhs = 1.0, worst_margin = -1e300;
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            if (i == x_star_) continue;
            const double bound = coeff_[i] * decay;
            const double scale = std::max({std::abs(s.u[i]), std::abs(bound), 1.0});
            const double margin = (s.u[i] - bound) / scale;
            if (margin > worst_margin) {
                worst_margin = margin;
                worst_lhs = s.u[i];
                worst_rhs = bound;
            }
        }
        check(s.t, worst_lhs, worst_rhs, report);
        check(s.t, xi_lo_, s.xi, report);
        check(s.t, s.xi, xi_hi_, report);
    }

private:
    double kappa_;
    std::size_t x_star_ = 0;
    double xi_lo_ = 0.0, xi_hi_ = 0.0;
    std::vector<double> coeff_;
};

class AiXiFloorMonitor : public Monitor {
public:
    AiXiFloorMonitor(double xi0, double tau) : Monitor("ai-xi-floor"), xi0_(xi0), tau_(tau) {}
    void evaluate(const SpatialGrid&, const ShadowState& s, RunReport& report) override {
        check(s.t, xi0_ * std::exp(-s.t / tau_), s.xi, report);
    }

private:
    double xi0_, tau_;
};

class CarcAprioriMonitor : public Monitor {
public:
    CarcAprioriMonitor(const Carcinogenesis& m, const Field& u0, double xi0)
        : Monitor("carc-apriori"), rate_(m.a - m.d), xi_cap_(std::max(xi0, m.kappa0)),
          u0_(u0) {}
    void evaluate(const SpatialGrid&, const ShadowState& s, RunReport& report) override {
        const double growth = std::exp(rate_ * s.t);
        double worst_lhs = 0.0, worst_rhs = 1.0, worst_margin = -1e300, min_u = 0.0;
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            const double bound = growth * u0_[i];
            const double scale = std::max({std::abs(s.u[i]), std::abs(bound), 1.0});
            const double margin = (s.u[i] - bound) / scale;
            if (margin > worst_margin) {
                worst_margin = margin;
                worst_lhs = s.u[i];
                worst_rhs = bound;
            }
            min_u = std::min(min_u, s.u[i]);
        }
        check(s.t, worst_lhs, worst_rhs, report);
        check(s.t, 0.0, min_u, report);
        check(s.t, 0.0, s.xi, report);
        check(s.t, s.xi, xi_cap_, report);
    }

private:
    double rate_, xi_cap_;
    Field u0_;
};

class CarcMassMonitor : public Monitor {
public:
    CarcMassMonitor(const Carcinogenesis& m, const SpatialGrid& grid, const Field& u0,
                    double xi0)
        : Monitor("carc-mass"), a_(m.a) {
        cap_ = std::max(quadrature(grid, u0) + m.a * xi0,
                        m.a * m.kappa0 / std::min(1.0, m.d));
    }
    void evaluate(const SpatialGrid& grid, const ShadowState& s, RunReport& report) override {
        check(s.t, quadrature(grid, s.u) + a_ * s.xi, cap_, report);
    }

private:
    double a_, cap_ = 0.0;
};

class CarcLemmaMonitor : public Monitor {
public:
    CarcLemmaMonitor(const Carcinogenesis& m, double lambda)
        : Monitor("carc-lemma-invariant"), kappa0_(m.kappa0), lambda_(lambda) {}
    void evaluate(const SpatialGrid& grid, const ShadowState& s, RunReport& report) override {
        double mass2 = 0.0;
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            mass2 += grid.weights[i] * s.u[i] * s.u[i];
        }
        check(s.t, lambda_ * kappa0_, s.xi * mass2, report);
        check(s.t, s.xi, (1.0 - lambda_) * kappa0_, report);
    }

private:
    double kappa0_, lambda_;
};

class CarcMaxFloorMonitor : public Monitor {
public:
    CarcMaxFloorMonitor() : Monitor("carc-max-floor") {}
    void evaluate(const SpatialGrid& grid, const ShadowState& s, RunReport& report) override {
        double mass2 = 0.0, umax = 0.0;
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            mass2 += grid.weights[i] * s.u[i] * s.u[i];
            umax = std::max(umax, s.u[i]);
        }
        check(s.t, 1.0, mass2, report);
        check(s.t, mass2, umax * umax, report);
    }
};

class CarcRatioMonitor : public Monitor {
public:
    CarcRatioMonitor(const SpatialGrid& grid, const Field& u0)
        : Monitor("carc-ratio-monotone") {
        x_star_ = argmax_set(grid, u0, 0.0).front();
        for (std::size_t i = 0; i < u0.size(); ++i) {
            if (u0[i] < u0[x_star_]) tracked_.push_back(i);
        }
        prev_.assign(tracked_.size(), 0.0);
    }
    void evaluate(const SpatialGrid&, const ShadowState& s, RunReport& report) override {
        const double u_star = s.u[x_star_];
        if (!(u_star > 0.0)) return;
        if (!initialized_) {
            for (std::size_t j = 0; j < tracked_.size(); ++j) {
                prev_[j] = s.u[tracked_[j]] / u_star;
            }
            initialized_ = true;
            return;
        }
        double worst_lhs = 0.0, worst_rhs = 1.0, worst_margin = -1e300;
        for (std::size_t j = 0; j < tracked_.size(); ++j) {
            const double ratio = s.u[tracked_[j]] / u_star;
            const double margin = ratio - prev_[j];
            if (margin > worst_margin) {
                worst_margin = margin;
                worst_lhs = ratio;
                worst_rhs = prev_[j];
            }
            prev_[j] = ratio;
        }
        if (!tracked_.empty()) check(s.t, worst_lhs, worst_rhs, report);
    }

private:
    std::size_t x_star_ = 0;
    std::vector<std::size_t> tracked_;
    std::vector<double> prev_;
    bool initialized_ = false;
};

std::vector<std::unique_ptr<Monitor>> make_monitors(const ModelKinetics& model,
                                                    const SpatialGrid& grid, const Field& u0,
                                                    double xi0, const IntegratorConfig& cfg) {
    std::vector<std::unique_ptr<Monitor>> out;
    const auto* gs = std::get_if<GrayScott>(&model);
    const auto* ai = std::get_if<ActivatorInhibitor>(&model);
    const auto* carc = std::get_if<Carcinogenesis>(&model);
    for (const auto& tag : cfg.monitors) {
        if (tag == "gs-xi-band") {
            if (!gs) throw std::invalid_argument("monitor gs-xi-band needs Gray-Scott kinetics");
            out.push_back(std::make_unique<GsXiBandMonitor>(xi0));
        } else if (tag == "gs-blowup-envelope") {
            if (!gs) {
                throw std::invalid_argument("monitor gs-blowup-envelope needs Gray-Scott kinetics");
            }
            out.push_back(std::make_unique<GsEnvelopeMonitor>(*gs, grid, u0, xi0));
        } else if (tag == "ai-xi-floor") {
            if (!ai) {
                throw std::invalid_argument("monitor ai-xi-floor needs activator-inhibitor kinetics");
            }
            out.push_back(std::make_unique<AiXiFloorMonitor>(xi0, ai->tau));
        } else if (tag == "carc-apriori") {
            if (!carc) throw std::invalid_argument("monitor carc-apriori needs carcinogenesis kinetics");
            out.push_back(std::make_unique<CarcAprioriMonitor>(*carc, u0, xi0));
        } else if (tag == "carc-mass") {
            if (!carc) throw std::invalid_argument("monitor carc-mass needs carcinogenesis kinetics");
            out.push_back(std::make_unique<CarcMassMonitor>(*carc, grid, u0, xi0));
        } else if (tag == "carc-lemma-invariant") {
            if (!carc) {
                throw std::invalid_argument("monitor carc-lemma-invariant needs carcinogenesis kinetics");
            }
            out.push_back(std::make_unique<CarcLemmaMonitor>(*carc, cfg.lemma_lambda));
        } else if (tag == "carc-max-floor") {
            if (!carc) throw std::invalid_argument("monitor carc-max-floor needs carcinogenesis kinetics");
            out.push_back(std::make_unique<CarcMaxFloorMonitor>());
        } else if (tag == "carc-ratio-monotone") {
            if (!carc) {
                throw std::invalid_argument("monitor carc-ratio-monotone needs carcinogenesis kinetics");
            }
            out.push_back(std::make_unique<CarcRatioMonitor>(grid, u0));
        } else {
            throw std::invalid_argument("unknown monitor tag: " + tag);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Adaptive driver
// ---------------------------------------------------------------------------

std::optional<double> fit_log_rate(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 6) return std::nullopt;
    const double t_end = series.back().first;
    const double t_begin = series.front().first;
    const double window_start = t_end - 0.25 * (t_end - t_begin);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (const auto& [t, v] : series) {
        if (t < window_start || !(v > 0.0)) continue;
        const double y = std::log(v);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++count;
    }
    if (count < 5) return std::nullopt;
    const double denom = count * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) return std::nullopt;
    return (count * sxy - sx * sy) / denom;
}

template <class K>
std::pair<Trajectory, RunReport> run_adaptive(const K& kin, const ModelKinetics& model,
                                              const SpatialGrid& grid, const Field& u0,
                                              double xi0, const IntegratorConfig& cfg) {
    validate_config(cfg);
    Trajectory traj{{}, model, {}};
    RunReport report;

    std::vector<double> u = u0;
    double xi = xi0;
    double t = 0.0;

    Workspace ws;
    ws.resize(u.size());
    std::vector<double> u_full(u.size()), u_half(u.size()), u_next(u.size());

    auto monitors = make_monitors(model, grid, u0, xi0, cfg);
    std::vector<std::pair<double, double>> xi_series;

    auto max_node = [&](const std::vector<double>& v) {
        std::size_t idx = 0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i] > v[idx]) idx = i;
        }
        return idx;
    };
    auto record_sample = [&](double time) {
        traj.samples.push_back(ShadowState{u, xi, time});
        const ShadowState& s = traj.samples.back();
        for (auto& mon : monitors) mon->evaluate(grid, s, report);
        report.max_u_history.emplace_back(time, u[max_node(u)]);
        xi_series.emplace_back(time, xi);
    };
    auto finish = [&](RunStatus status) {
        report.status = status;
        for (auto& mon : monitors) mon->finalize(report);
        report.fitted_u_rate = fit_log_rate(report.max_u_history);
        report.fitted_xi_rate = fit_log_rate(xi_series);
        return std::make_pair(std::move(traj), std::move(report));
    };

    traj.xi_history.append(0.0, xi);
    record_sample(0.0);

    // The recorded xi history is consumed piecewise-linearly downstream, so
    // steps are additionally capped at 0.5*sqrt(rel_tol): interpolation error
    // then scales like the tolerance itself.
    const double hist_cap = 0.5 * std::sqrt(cfg.rel_tol);
    double dt = std::clamp(cfg.dt_init, cfg.dt_min, hist_cap);
    std::size_t sample_index = 1;
    auto next_sample_time = [&]() {
        return std::min(static_cast<double>(sample_index) * cfg.sample_every, cfg.t_end);
    };

    const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);
    while (t < cfg.t_end - t_eps) {
        double dt_try = std::min({dt, hist_cap, next_sample_time() - t});
        double u_max = u[max_node(u)];
        if (u_max >= kGrowthCapActivation * cfg.blowup_threshold) {
            const double rate = std::abs(kin.f(u_max, xi)) / std::max(u_max, 1e-300);
            if (rate > 0.0 && std::isfinite(rate)) {
                dt_try = std::min(dt_try, std::max(cfg.rel_tol / rate, cfg.dt_min));
            }
        }
        dt_try = std::max(dt_try, std::min(cfg.dt_min, next_sample_time() - t));

        double xi_full = 0.0, xi_half = 0.0, xi_next = 0.0;
        bool finite = rk4_step(kin, grid, u, xi, dt_try, u_full, xi_full, ws) &&
                      rk4_step(kin, grid, u, xi, 0.5 * dt_try, u_half, xi_half, ws) &&
                      rk4_step(kin, grid, u_half, xi_half, 0.5 * dt_try, u_next, xi_next, ws);

        double err = 0.0;
        if (finite) {
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double scale =
                    std::max({std::abs(u_next[i]), std::abs(u[i]), 1e-8});
                err = std::max(err, std::abs(u_full[i] - u_next[i]) / scale);
            }
            const double xi_scale = std::max({std::abs(xi_next), std::abs(xi), 1e-8});
            err = std::max(err, std::abs(xi_full - xi_next) / xi_scale);
        }

        const bool at_floor = dt_try <= cfg.dt_min * (1.0 + 1e-9);
        if (!finite || err > cfg.rel_tol) {
            if (!at_floor) {
                ++report.rejected_steps;
                dt = 0.5 * dt_try;
                continue;
            }
            if (!finite) {
                // Overflow that persists at the smallest step: genuine escape
                // if the threshold was already exceeded, otherwise failure.
                if (u_max > cfg.blowup_threshold) {
                    return finish(RunStatus{RunStatusKind::Blowup, t, max_node(u)});
                }
                return finish(RunStatus{RunStatusKind::StepFailure, t, 0});
            }
            if (err > cfg.rel_tol * 1e3) {
                return finish(RunStatus{RunStatusKind::StepFailure, t, 0});
            }
            // tolerate mild excess at the floor and keep going
        }

        ++report.accepted_steps;
        std::swap(u, u_next);
        xi = xi_next;
        t += dt_try;
        const double target = next_sample_time();
        if (std::abs(t - target) <= 1e-9 * std::max(1.0, target)) t = target;

        if constexpr (K::clamp_negatives) {
            for (auto& v : u) {
                if (v < 0.0 && v >= kNegativeClampFloor) {
                    v = 0.0;
                    ++report.clamped_negatives;
                }
            }
            if (xi < 0.0 && xi >= kNegativeClampFloor) {
                xi = 0.0;
                ++report.clamped_negatives;
            }
        }
        traj.xi_history.append(t, xi);

        if (t >= target - t_eps) {
            record_sample(t);
            ++sample_index;
            while (next_sample_time() <= t + t_eps && t < cfg.t_end - t_eps) ++sample_index;
        }

        if (err < cfg.rel_tol / 32.0) dt = dt_try * 1.5;
        else dt = dt_try;

        const std::size_t peak = max_node(u);
        if (u[peak] > cfg.blowup_threshold) {
            // Confirm with one step at the floor so the declaration always
            // happens with dt at dt_min.
            if (rk4_step(kin, grid, u, xi, cfg.dt_min, u_next, xi_next, ws)) {
                std::swap(u, u_next);
                xi = xi_next;
                t += cfg.dt_min;
                traj.xi_history.append(t, xi);
            }
            if (traj.samples.back().t < t - t_eps) record_sample(t);
            return finish(RunStatus{RunStatusKind::Blowup, t, max_node(u)});
        }
    }
    if (traj.samples.back().t < cfg.t_end - t_eps) record_sample(t);
    return finish(RunStatus{RunStatusKind::Completed, t, 0});
}

void check_initial_data(const ModelKinetics& model, const Field& u0, double xi0) {
    validate_model(model);
    if (std::holds_alternative<Generic>(model)) return;
    for (double v : u0) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("run: u0 must be nonnegative pointwise");
        }
    }
    if (std::holds_alternative<ActivatorInhibitor>(model) ||
        std::holds_alternative<Carcinogenesis>(model)) {
        if (!(xi0 > 0.0)) throw std::invalid_argument("run: xi0 must be positive");
    } else if (!(xi0 >= 0.0)) {
        throw std::invalid_argument("run: xi0 must be nonnegative");
    }
}

SpatialGrid point_grid() {
    SpatialGrid g;
    g.n_cells = 1;
    g.nodes = {0.5};
    g.weights = {1.0};
    return g;
}

}  // namespace

void validate_config(const IntegratorConfig& cfg) {
    if (!(cfg.dt_init > 0.0) || !(cfg.dt_min > 0.0)) {
        throw std::invalid_argument("integrator config: dt_init and dt_min must be > 0");
    }
    if (cfg.dt_min > cfg.dt_init) {
        throw std::invalid_argument("integrator config: dt_min must not exceed dt_init");
    }
    if (!(cfg.rel_tol > 0.0)) throw std::invalid_argument("integrator config: rel_tol must be > 0");
    if (!(cfg.blowup_threshold > 1.0)) {
        throw std::invalid_argument("integrator config: blowup_threshold must exceed 1");
    }
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("integrator config: t_end must be > 0");
    if (!(cfg.sample_every > 0.0)) {
        throw std::invalid_argument("integrator config: sample_every must be > 0");
    }
    if (!(cfg.lemma_lambda > 0.0) || !(cfg.lemma_lambda < 1.0)) {
        throw std::invalid_argument("integrator config: lemma_lambda must lie in (0,1)");
    }
}

bool RunReport::monitors_clean() const {
    return std::all_of(monitor_log.begin(), monitor_log.end(),
                       [](const MonitorRecord& r) { return r.pass; });
}

ShadowState step_shadow(const ModelKinetics& model, const SpatialGrid& grid,
                        const ShadowState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_shadow: dt must be > 0");
    if (state.u.size() != grid.n_cells) {
        throw std::invalid_argument("step_shadow: state does not match grid");
    }
    ShadowState out;
    out.u.resize(state.u.size());
    out.t = state.t + dt;
    Workspace ws;
    ws.resize(state.u.size());
    std::visit(
        [&](const auto& m) {
            Kin<std::decay_t<decltype(m)>> kin{m};
            if (!rk4_step(kin, grid, state.u, state.xi, dt, out.u, out.xi, ws)) {
                // leave non-finite values in place; callers treat them as the
                // step-overflow signal
            }
        },
        model);
    return out;
}

std::pair<Trajectory, RunReport> run_shadow(const ModelKinetics& model, const SpatialGrid& grid,
                                            const Field& u0, double xi0,
                                            const IntegratorConfig& cfg) {
    if (u0.size() != grid.n_cells) {
        throw std::invalid_argument("run_shadow: u0 does not match grid");
    }
    check_initial_data(model, u0, xi0);
    return std::visit(
        [&](const auto& m) {
            Kin<std::decay_t<decltype(m)>> kin{m};
            return run_adaptive(kin, model, grid, u0, xi0, cfg);
        },
        model);
}

std::pair<Trajectory, RunReport> run_kinetics(const ModelKinetics& model, double u0, double xi0,
                                              const IntegratorConfig& cfg) {
    const Field u{u0};
    check_initial_data(model, u, xi0);
    static const SpatialGrid grid = point_grid();
    return std::visit(
        [&](const auto& m) {
            Kin<std::decay_t<decltype(m)>> kin{m};
            return run_adaptive(kin, model, grid, u, xi0, cfg);
        },
        model);
}

const std::vector<std::string>& known_monitor_tags() {
    static const std::vector<std::string> tags = {
        "gs-xi-band",     "gs-blowup-envelope", "ai-xi-floor",
        "carc-apriori",   "carc-mass",          "carc-lemma-invariant",
        "carc-max-floor", "carc-ratio-monotone"};
    return tags;
}

}  // namespace shadowsim
