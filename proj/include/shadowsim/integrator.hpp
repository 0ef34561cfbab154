#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowsim/grid.hpp"
#include "shadowsim/history.hpp"
#include "shadowsim/kinetics.hpp"

namespace shadowsim {

struct IntegratorConfig {
    double dt_init = 1e-3;
    double dt_min = 1e-9;
    double rel_tol = 1e-6;
    double blowup_threshold = 1e8;
    double t_end = 1.0;
    double sample_every = 0.01;
    std::vector<std::string> monitors;
    double lemma_lambda = 0.5;  // lambda for the carc-lemma-invariant monitor
};

void validate_config(const IntegratorConfig& cfg);

enum class RunStatusKind { Completed, Blowup, StepFailure };

struct RunStatus {
    RunStatusKind kind = RunStatusKind::Completed;
    double time = 0.0;      // t_star for blowup, failure time otherwise
    std::size_t node = 0;   // blowup node (argmax of u at declaration)
};

struct MonitorRecord {
    std::string tag;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

struct RunReport {
    RunStatus status;
    /// Violations logged as they occur, plus one end-of-run summary row per
    /// monitor carrying its worst margin.
    std::vector<MonitorRecord> monitor_log;
    std::vector<std::pair<double, double>> max_u_history;  // (t, max u) per sample
    std::size_t clamped_negatives = 0;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    /// Trailing-window least-squares fits of d/dt log(max u) and
    /// d/dt log(xi). Logged for inspection only, never asserted against.
    std::optional<double> fitted_u_rate;
    std::optional<double> fitted_xi_rate;

    bool monitors_clean() const;
};

struct Trajectory {
    std::vector<ShadowState> samples;  // strictly increasing sample times
    ModelKinetics model;
    XiHistory xi_history;  // one knot per accepted step
};

/// One classical RK4 step of the coupled system; the xi right-hand side is
/// assembled by quadrature at every stage. Non-finite results (overflow, or
/// a stage leaving the model's admissible region) are returned as-is; the
/// adaptive driver treats them as a step-overflow signal.
ShadowState step_shadow(const ModelKinetics& model, const SpatialGrid& grid,
                        const ShadowState& state, double dt);

/// Integrate the shadow system to cfg.t_end, or until blowup (max u above
/// cfg.blowup_threshold confirmed with dt at dt_min) or step failure.
/// Adaptive stepping: step-doubling error estimate against rel_tol, a step
/// cap of 0.5*sqrt(rel_tol) so the recorded xi history carries interpolation
/// error commensurate with the tolerance, and a growth cap
/// dt <= rel_tol / (relative growth rate of max u) once max u is within 3%
/// of the threshold. Steps land exactly on sample times; monitors run at
/// every sample.
std::pair<Trajectory, RunReport> run_shadow(const ModelKinetics& model,
                                            const SpatialGrid& grid, const Field& u0,
                                            double xi0, const IntegratorConfig& cfg);

/// Same machinery on the space-homogeneous two-ODE system (one-cell grid of
/// unit weight; samples are scalar pairs stored as one-node states).
std::pair<Trajectory, RunReport> run_kinetics(const ModelKinetics& model, double u0,
                                              double xi0, const IntegratorConfig& cfg);

/// Monitor tags understood by runs:
///   gs-xi-band            0 <= xi <= max(xi0, 1)
///   gs-blowup-envelope    u below the separable-solution envelope off the
///                         peak node; xi within [min(xi0, B/(A0+B)), max(xi0, 1)]
///   ai-xi-floor           xi >= xi0 exp(-t/tau)
///   carc-apriori          0 <= u <= exp((a-d) t) u0; 0 < xi <= max(xi0, kappa0)
///   carc-mass             Int u + a xi <= max(initial, a kappa0 / min(1, d))
///   carc-lemma-invariant  xi Int u^2 > lambda kappa0 and xi <= (1-lambda) kappa0
///   carc-max-floor        (max u)^2 >= Int u^2 >= 1
///   carc-ratio-monotone   u(x,t)/u(x*,t) non-increasing where u0(x) < u0(x*)
/// Violations are judged at relative tolerance 1e-8.
const std::vector<std::string>& known_monitor_tags();

}  // namespace shadowsim
