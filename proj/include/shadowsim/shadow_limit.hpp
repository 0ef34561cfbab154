#pragma once

#include <utility>
#include <vector>

#include "shadowsim/grid.hpp"
#include "shadowsim/integrator.hpp"
#include "shadowsim/kinetics.hpp"

namespace shadowsim {

/// State of the reaction-diffusion-ODE system: non-diffusing u, diffusing v.
struct RdState {
    Field u;
    Field v;
    double t = 0.0;
};

struct RdTrajectory {
    std::vector<RdState> samples;
};

/// D * discrete Neumann Laplacian: 3-point stencil on cell centers with
/// ghost-cell reflection (zero flux). Discretely conservative: the quadrature
/// of the result vanishes for any field.
Field neumann_laplacian(const SpatialGrid& grid, const Field& f, double D);

/// Method-of-lines run of u_t = f(u,v), v_t = D Lap v + g(u,v) with Neumann
/// boundary, by operator splitting per step: one explicit RK4 substep for the
/// reactions, then one backward-Euler substep for the stiff diffusion (exact
/// tridiagonal solve), unconditionally stable in D. Fixed step cfg.dt_init;
/// samples every cfg.sample_every plus one early sample at t_end/1000.
RdTrajectory run_rdode(const ModelKinetics& model, const SpatialGrid& grid, const Field& u0,
                       const Field& v0, double D, const IntegratorConfig& cfg);

/// max over matching samples of t^alpha * (sup|u_D - u| + sup|v_D - xi|);
/// sample times must agree within 1e-9 or an alignment error is thrown.
double convergence_metric(const RdTrajectory& rd_traj, const Trajectory& shadow_traj,
                          double alpha);

struct LimitRow {
    double D = 0.0;
    double metric = 0.0;
};

struct LimitStudy {
    std::vector<LimitRow> rows;
    double fitted_exponent = 0.0;  // slope of log(metric) vs log(D)
    double shadow_xi0 = 0.0;       // quadrature of v0, the shadow initial xi
};

/// Runs the shadow reference once with xi0 = quadrature(v0), then the
/// reaction-diffusion system for each diffusivity in increasing d_list, and
/// tabulates the weighted sup-distance metric per D with its log-log decay
/// fit. alpha must lie in (0, 1/2).
LimitStudy convergence_study(const ModelKinetics& model, const SpatialGrid& grid,
                             const Field& u0, const Field& v0,
                             const std::vector<double>& d_list, double alpha, double t_end);

}  // namespace shadowsim
