#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shadowsim/grid.hpp"
#include "shadowsim/history.hpp"
#include "shadowsim/kinetics.hpp"

namespace shadowsim {

/// One evaluated certificate hypothesis; the rule is lhs vs rhs with the
/// direction baked into `satisfied`.
struct Hypothesis {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

/// Evaluated sufficient conditions for finite-time blowup (Gray-Scott,
/// activator-inhibitor) or infinite-time spike growth (carcinogenesis),
/// together with the derived bounds.
struct BlowupCertificate {
    std::string model;
    std::vector<Hypothesis> hypotheses;
    bool satisfied = false;  // all hypotheses hold
    bool reliable = true;    // singular-mass refinement check converged
    std::optional<double> singular_mass;                      // A0 / B0
    std::optional<double> tmax_upper;                         // finite-time models only
    std::optional<std::pair<double, double>> lambda_window;   // carcinogenesis
    std::size_t x_star = 0;
    std::vector<std::size_t> max_set;  // argmax tie set of the initial datum
};

/// Discrete singular-mass functional with a two-level convergence check.
struct SingularMass {
    double value = 0.0;         // quadrature over all nodes except x_star's cell
    double coarse_value = 0.0;  // same integrand on the 2h parity subsample
    bool converged = false;     // |value/coarse - 1| <= 5%
};

/// The blowup functionals:
///   Gray-Scott: Int (u0(x*) u0(x) / (u0(x*) - u0(x)))^2
///   act.-inh.:  Int (u0(x*) u0(x) / (u0^{p-1}(x*) - u0^{p-1}(x))^{1/(p-1)})^r
/// The singular cell at x_star is excluded; the coarse value re-sums the
/// integrand on every other node (the parity class containing x_star) with
/// doubled weights, and the 5% two-level ratio decides convergent vs
/// divergent. u0 must attain a strict maximum at x_star; ties throw
/// std::invalid_argument.
SingularMass singular_mass_functional(const ModelKinetics& model, const SpatialGrid& grid,
                                      const Field& u0, std::size_t x_star);

/// Evaluates every hypothesis of the model's blowup/growth theorem for the
/// given initial data. When all hold, Gray-Scott and activator-inhibitor
/// certificates carry the escape-time upper bound obtained by inverting the
/// proof's lower bound on the cumulative xi integral; the carcinogenesis
/// certificate carries the admissible lambda window instead (growth is
/// infinite-time, so no Tmax).
BlowupCertificate blowup_certificate(const ModelKinetics& model, const SpatialGrid& grid,
                                     const Field& u0, double xi0);

/// Thrown by exact_u when the formula denominator has already crossed zero;
/// carries the crossing time found on the history.
class PastBlowupError : public std::runtime_error {
public:
    PastBlowupError(const std::string& msg, double crossing)
        : std::runtime_error(msg), crossing_time(crossing) {}
    double crossing_time;
};

/// Closed-form solution of the u equation given the xi history:
///   Gray-Scott: u = e^{-(B+k)t} / (1/u0 - Int xi e^{-(B+k)s} ds)
///   act.-inh.:  u = e^{-t} / (u0^{1-p} - (p-1) Int xi^{-q} e^{-(p-1)s} ds)^{1/(p-1)}
/// u0 here is the node's initial value; zero maps to zero. Only these two
/// models have closed forms; others throw std::invalid_argument.
double exact_u(const ModelKinetics& model, double u0_value, double t, const XiHistory& hist);

/// exact_u for every node (the cumulative integral is shared across nodes).
Field exact_u_profile(const ModelKinetics& model, const Field& u0, double t,
                      const XiHistory& hist);

/// Escape time of the node with initial value u0_max, i.e. the crossing of
/// the model's cumulative integral with the node's threshold. nullopt when
/// the history never reaches it. Bisection tolerance 1e-12 in t.
std::optional<double> tmax_from_history(const ModelKinetics& model, double u0_max,
                                        const XiHistory& hist);

enum class KineticRegime { Global, BlowupPossible, NeitherClassified };

std::string to_string(KineticRegime r);

/// Classification of the space-homogeneous activator-inhibitor system:
/// p-1 <= r gives global solutions; p-1 > r with q > s+1 admits finite-time
/// blowup; the constant state (1,1) is asymptotically stable iff
/// tau < (s+1)/(p-1). The exponent inequality (p-1)/r < q/(s+1) is reported
/// for information only.
struct AiRegimeReport {
    KineticRegime regime = KineticRegime::NeitherClassified;
    StabilityClass steady_11 = StabilityClass::Inconclusive;
    double tau_threshold = 0.0;  // (s+1)/(p-1)
    bool exponent_condition = false;
};

AiRegimeReport ai_kinetic_regime(double p, double q, double r, double s, double tau);

}  // namespace shadowsim
