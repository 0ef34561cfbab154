#include "shadowsim/shadow_limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shadowsim {

namespace {

double grid_spacing(const SpatialGrid& grid) {
    if (grid.n_cells < 2) {
        throw std::invalid_argument("shadow_limit: grid must have at least 2 cells");
    }
    const double h = grid.nodes[1] - grid.nodes[0];
    for (std::size_t i = 1; i + 1 < grid.n_cells; ++i) {
        if (std::abs(grid.nodes[i + 1] - grid.nodes[i] - h) > 1e-12) {
            throw std::invalid_argument("shadow_limit: uniform grid required");
        }
    }
    return h;
}

/// Solve (I - r Lap_h) v = rhs with reflecting (zero-flux) end rows, where
/// r = dt D / h^2; Thomas elimination in place.
void backward_euler_diffusion(std::vector<double>& v, double r, std::vector<double>& work_c,
                              std::vector<double>& work_d) {
    const std::size_t n = v.size();
    // diag_i = 1 + 2r except 1 + r at both ends; off-diagonals -r.
    work_c.resize(n);
    work_d.resize(n);
    double diag0 = 1.0 + r;
    work_c[0] = -r / diag0;
    work_d[0] = v[0] / diag0;
    for (std::size_t i = 1; i < n; ++i) {
        const double diag = (i + 1 == n) ? 1.0 + r : 1.0 + 2.0 * r;
        const double denom = diag + r * work_c[i - 1];
        work_c[i] = -r / denom;
        work_d[i] = (v[i] + r * work_d[i - 1]) / denom;
    }
    v[n - 1] = work_d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        v[i] = work_d[i] - work_c[i] * v[i + 1];
    }
}

/// Pointwise reaction RK4 substep on (u_i, v_i) pairs.
void reaction_substep(const ModelKinetics& model, std::vector<double>& u,
                      std::vector<double>& v, double dt) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double u0 = u[i], v0 = v[i];
        const double ku1 = eval_f(model, u0, v0);
        const double kv1 = eval_g(model, u0, v0);
        const double ku2 = eval_f(model, u0 + 0.5 * dt * ku1, v0 + 0.5 * dt * kv1);
        const double kv2 = eval_g(model, u0 + 0.5 * dt * ku1, v0 + 0.5 * dt * kv1);
        const double ku3 = eval_f(model, u0 + 0.5 * dt * ku2, v0 + 0.5 * dt * kv2);
        const double kv3 = eval_g(model, u0 + 0.5 * dt * ku2, v0 + 0.5 * dt * kv2);
        const double ku4 = eval_f(model, u0 + dt * ku3, v0 + dt * kv3);
        const double kv4 = eval_g(model, u0 + dt * ku3, v0 + dt * kv3);
        u[i] = u0 + dt / 6.0 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
        v[i] = v0 + dt / 6.0 * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
    }
}

}  // namespace

Field neumann_laplacian(const SpatialGrid& grid, const Field& f, double D) {
    if (f.size() != grid.n_cells) {
        throw std::invalid_argument("neumann_laplacian: field does not match grid");
    }
    const double h = grid_spacing(grid);
    const double scale = D / (h * h);
    const std::size_t n = f.size();
    Field out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i == 0) ? f[0] : f[i - 1];
        const double right = (i + 1 == n) ? f[n - 1] : f[i + 1];
        out[i] = scale * (left - 2.0 * f[i] + right);
    }
    return out;
}

RdTrajectory run_rdode(const ModelKinetics& model, const SpatialGrid& grid, const Field& u0,
                       const Field& v0, double D, const IntegratorConfig& cfg) {
    validate_model(model);
    validate_config(cfg);
    if (u0.size() != grid.n_cells || v0.size() != grid.n_cells) {
        throw std::invalid_argument("run_rdode: fields do not match grid");
    }
    if (!(D >= 0.0)) throw std::invalid_argument("run_rdode: D must be nonnegative");
    const double h = grid_spacing(grid);
    const bool clamp = !std::holds_alternative<Generic>(model);

    RdTrajectory traj;
    std::vector<double> u = u0;
    std::vector<double> v = v0;
    std::vector<double> work_c, work_d;
    double t = 0.0;
    traj.samples.push_back(RdState{u, v, t});

    std::size_t sample_index = 1;
    auto next_sample = [&]() {
        return std::min(static_cast<double>(sample_index) * cfg.sample_every, cfg.t_end);
    };
    const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);

    while (t < cfg.t_end - t_eps) {
        const double dt = std::min(cfg.dt_init, next_sample() - t);
        reaction_substep(model, u, v, dt);
        backward_euler_diffusion(v, dt * D / (h * h), work_c, work_d);
        if (clamp) {
            for (auto& val : u) {
                if (val < 0.0 && val >= -1e-12) val = 0.0;
            }
        }
        t += dt;
        const double target = next_sample();
        if (std::abs(t - target) <= 1e-9 * std::max(1.0, target)) t = target;
        for (double val : u) {
            if (!std::isfinite(val)) {
                throw std::runtime_error("run_rdode: non-finite state at t = " +
                                         std::to_string(t));
            }
        }
        if (t >= target - t_eps) {
            traj.samples.push_back(RdState{u, v, t});
            ++sample_index;
            while (next_sample() <= t + t_eps && t < cfg.t_end - t_eps) ++sample_index;
        }
    }
    return traj;
}

double convergence_metric(const RdTrajectory& rd_traj, const Trajectory& shadow_traj,
                          double alpha) {
    if (rd_traj.samples.size() != shadow_traj.samples.size()) {
        throw std::invalid_argument(
            "convergence_metric: trajectories have different sample counts (" +
            std::to_string(rd_traj.samples.size()) + " vs " +
            std::to_string(shadow_traj.samples.size()) + ")");
    }
    double metric = 0.0;
    for (std::size_t k = 0; k < rd_traj.samples.size(); ++k) {
        const RdState& rd = rd_traj.samples[k];
        const ShadowState& sh = shadow_traj.samples[k];
        if (std::abs(rd.t - sh.t) > 1e-9 * std::max(1.0, std::abs(sh.t))) {
            throw std::invalid_argument("convergence_metric: sample times misaligned at index " +
                                        std::to_string(k));
        }
        if (rd.u.size() != sh.u.size()) {
            throw std::invalid_argument("convergence_metric: field sizes differ");
        }
        double sup_u = 0.0, sup_v = 0.0;
        for (std::size_t i = 0; i < rd.u.size(); ++i) {
            sup_u = std::max(sup_u, std::abs(rd.u[i] - sh.u[i]));
            sup_v = std::max(sup_v, std::abs(rd.v[i] - sh.xi));
        }
        metric = std::max(metric, std::pow(rd.t, alpha) * (sup_u + sup_v));
    }
    return metric;
}

LimitStudy convergence_study(const ModelKinetics& model, const SpatialGrid& grid,
                             const Field& u0, const Field& v0,
                             const std::vector<double>& d_list, double alpha, double t_end) {
    if (!(alpha > 0.0) || !(alpha < 0.5)) {
        throw std::invalid_argument("convergence_study: alpha must lie in (0, 1/2)");
    }
    if (d_list.empty()) throw std::invalid_argument("convergence_study: empty D list");
    for (std::size_t i = 1; i < d_list.size(); ++i) {
        if (!(d_list[i] > d_list[i - 1])) {
            throw std::invalid_argument("convergence_study: D list must be increasing");
        }
    }

    LimitStudy study;
    study.shadow_xi0 = quadrature(grid, v0);

    IntegratorConfig shadow_cfg;
    shadow_cfg.t_end = t_end;
    // Sampling every t_end/1000 puts the first compared time at t_end/1000,
    // where the t^alpha weight is already meaningful.
    shadow_cfg.sample_every = t_end / 1000.0;
    shadow_cfg.dt_init = shadow_cfg.sample_every;
    shadow_cfg.dt_min = 1e-12;
    shadow_cfg.rel_tol = 1e-6;

    const auto [shadow_traj, shadow_report] =
        run_shadow(model, grid, u0, study.shadow_xi0, shadow_cfg);
    if (shadow_report.status.kind != RunStatusKind::Completed) {
        throw std::runtime_error("convergence_study: shadow reference did not complete");
    }

    IntegratorConfig rd_cfg = shadow_cfg;
    rd_cfg.dt_init = t_end / 8000.0;

    for (double D : d_list) {
        const RdTrajectory rd = run_rdode(model, grid, u0, v0, D, rd_cfg);
        study.rows.push_back(LimitRow{D, convergence_metric(rd, shadow_traj, alpha)});
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (const auto& row : study.rows) {
        if (!(row.metric > 0.0)) continue;
        const double x = std::log(row.D);
        const double y = std::log(row.metric);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2 && std::abs(count * sxx - sx * sx) > 1e-30) {
        study.fitted_exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    }
    return study;
}

}  // namespace shadowsim
