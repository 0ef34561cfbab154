#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shadowsim/grid.hpp"

namespace shadowsim {

/// u_t = -(B+k) u + u^2 xi,  xi_t = -xi * Int[u^2] + B(1-xi).
struct GrayScott {
    double B = 1.0;
    double k = 0.1;
};

/// u_t = -u + u^p / xi^q,  tau * xi_t = -xi + Int[u^r / xi^s].
/// Requires p > 1; xi must stay positive (xi^-q is singular at 0).
struct ActivatorInhibitor {
    double p = 2.0;
    double q = 1.0;
    double r = 2.0;
    double s = 0.0;
    double tau = 1.0;
};

/// u_t = (a u xi / (1 + u xi) - d) u,  xi_t = -xi - xi * Int[u^2] + kappa0.
struct Carcinogenesis {
    double a = 2.0;
    double d = 1.0;
    double kappa0 = 65.0 / 8.0;
};

/// User-supplied kinetics with analytic first partials. The g integrand
/// follows the same convention as the built-in models: xi_t equals the
/// quadrature of g over the unit-measure domain.
struct Generic {
    std::function<double(double, double)> f;
    std::function<double(double, double)> g;
    std::function<double(double, double)> f_u;
    std::function<double(double, double)> f_xi;
    std::function<double(double, double)> g_u;
    std::function<double(double, double)> g_xi;
};

using ModelKinetics = std::variant<GrayScott, ActivatorInhibitor, Carcinogenesis, Generic>;

struct Partials {
    double f_u = 0.0;
    double f_xi = 0.0;
    double g_u = 0.0;
    double g_xi = 0.0;
};

/// Validates parameter ranges (positivity, p > 1). Throws std::invalid_argument
/// naming the violated bound.
void validate_model(const ModelKinetics& model);

double eval_f(const ModelKinetics& model, double u, double xi);

/// Pointwise integrand of the xi equation. Assembling quadrature(g(u, xi))
/// over the unit-measure domain reproduces the model's xi right-hand side,
/// local terms included (they integrate to themselves since the weights sum
/// to 1). For the activator-inhibitor model the 1/tau factor is folded in,
/// so the assembled value is xi_t itself for every variant.
double eval_g(const ModelKinetics& model, double u, double xi);

Partials eval_partials(const ModelKinetics& model, double u, double xi);

/// True for models whose xi equation is singular at xi <= 0.
bool requires_positive_xi(const ModelKinetics& model);

std::string model_name(const ModelKinetics& model);

enum class StabilityClass {
    TrivialStable,          // designated trivial state, asymptotically stable
    UnstableAutocatalytic,  // f_u > 0 on a positive-measure constant piece
    OdeStable,              // 2x2 kinetic Jacobian eigenvalues in the left half plane
    OdeUnstable,
    Inconclusive,
};

std::string to_string(StabilityClass c);

/// A stationary solution (U, xi_bar). U equals u_on on the masked piece and
/// u_off elsewhere; constant states have no mask (the piece is the whole
/// domain). Construction residual-checks both equations.
struct SteadyState {
    double u_on = 0.0;
    double u_off = 0.0;
    double xi_bar = 0.0;
    std::optional<Mask> mask;
    StabilityClass classification = StabilityClass::Inconclusive;
    double residual_f = 0.0;  // max |f(U_i, xi_bar)| over nodes
    double residual_g = 0.0;  // |quadrature(g(U, xi_bar))|
};

/// Materialize the piecewise-constant profile on a grid.
Field steady_field(const SteadyState& state, const SpatialGrid& grid);

/// All nonnegative constant solutions of the space-homogeneous kinetic system,
/// each classified by the eigenvalues of the 2x2 Jacobian. May be empty.
std::vector<SteadyState> ode_steady_states(const ModelKinetics& model);

/// Piecewise-constant stationary solutions supported on the masked piece
/// (measure m = mask_measure):
///   Gray-Scott:  B xi^2 - B xi + m (B+k)^2 = 0,  U = (B+k)/xi on the piece;
///   act.-inh.:   xi^(r q/(p-1) - s) m = xi,      U = xi^(q/(p-1));
///   carcinogen.: d m u^2 - kappa0 (a-d) u + d = 0, xi = d/((a-d) u).
/// Returns every real admissible root, residual-checked; empty (with the
/// diagnostic out-param set) when no real root exists.
std::vector<SteadyState> shadow_steady_states(const ModelKinetics& model,
                                              const SpatialGrid& grid, const Mask& mask,
                                              std::string* diagnostic = nullptr);

/// Autocatalysis test at the constant piece: unstable when f_u(u_on, xi_bar)
/// > 0 on a positive-measure piece; the designated trivial states classify as
/// stable; anything else is inconclusive.
StabilityClass classify_shadow_stability(const ModelKinetics& model, const SteadyState& steady);

/// Residual of the eigenpair built from the linearization around `steady`:
/// with lambda0 = f_u at the constant piece and candidate eigenvector (w0, 0),
/// returns the sup-norm of L(w0,0)^T - lambda0 (w0,0)^T assembled by
/// quadrature. w0 must vanish off the piece, have zero weighted mean on it
/// (within 1e-12), and not be identically zero; violations throw
/// std::invalid_argument.
double eigenpair_residual(const ModelKinetics& model, const SpatialGrid& grid,
                          const SteadyState& steady, const Field& w0);

}  // namespace shadowsim
