#include "shadowsim/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shadowsim {

namespace {

constexpr double kResidualTol = 1e-10;

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " > 0 required");
    }
}

[[noreturn]] void throw_singular_xi(double xi) {
    throw std::domain_error("activator-inhibitor kinetics singular at xi = " +
                            std::to_string(xi) + " (xi > 0 required)");
}

/// Roots of a x^2 + b x + c = 0, ordered ascending. Uses the numerically
/// stable split to avoid cancellation. Empty when the discriminant is
/// negative.
std::vector<double> quadratic_roots(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    std::vector<double> roots;
    if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(c / q);
    } else {
        roots.push_back(0.0);
        roots.push_back(-b / a);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// 2x2 Jacobian classification of the kinetic system at a constant state.
StabilityClass classify_ode(const ModelKinetics& model, double u, double xi) {
    const Partials d = eval_partials(model, u, xi);
    const double trace = d.f_u + d.g_xi;
    const double det = d.f_u * d.g_xi - d.f_xi * d.g_u;
    const double scale = std::max({std::abs(d.f_u), std::abs(d.f_xi), std::abs(d.g_u),
                                   std::abs(d.g_xi), 1.0});
    const double eps = 1e-12 * scale * scale;
    if (det < -eps) return StabilityClass::OdeUnstable;  // saddle
    if (std::abs(det) <= eps || std::abs(trace) <= 1e-12 * scale) {
        return StabilityClass::Inconclusive;
    }
    return trace < 0.0 ? StabilityClass::OdeStable : StabilityClass::OdeUnstable;
}

SteadyState make_constant_state(const ModelKinetics& model, double u, double xi) {
    SteadyState s;
    s.u_on = u;
    s.u_off = u;
    s.xi_bar = xi;
    s.residual_f = std::abs(eval_f(model, u, xi));
    s.residual_g = std::abs(eval_g(model, u, xi));
    s.classification = classify_ode(model, u, xi);
    return s;
}

SteadyState make_piecewise_state(const ModelKinetics& model, const SpatialGrid& grid,
                                 const Mask& mask, double u_on, double xi) {
    SteadyState s;
    s.u_on = u_on;
    s.u_off = 0.0;
    s.xi_bar = xi;
    s.mask = mask;
    const double m = mask_measure(grid, mask);
    s.residual_f = std::max(std::abs(eval_f(model, u_on, xi)), std::abs(eval_f(model, 0.0, xi)));
    s.residual_g = std::abs(m * eval_g(model, u_on, xi) + (1.0 - m) * eval_g(model, 0.0, xi));
    s.classification = classify_shadow_stability(model, s);
    return s;
}

}  // namespace

void validate_model(const ModelKinetics& model) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GrayScott>) {
                require_positive(m.B, "B");
                if (m.k < 0.0) throw std::invalid_argument("k >= 0 required");
            } else if constexpr (std::is_same_v<T, ActivatorInhibitor>) {
                if (!(m.p > 1.0)) throw std::invalid_argument("p>1 required");
                require_positive(m.q, "q");
                require_positive(m.r, "r");
                if (m.s < 0.0) throw std::invalid_argument("s >= 0 required");
                require_positive(m.tau, "tau");
            } else if constexpr (std::is_same_v<T, Carcinogenesis>) {
                require_positive(m.a, "a");
                require_positive(m.d, "d");
                require_positive(m.kappa0, "kappa0");
            } else {
                if (!m.f || !m.g || !m.f_u || !m.f_xi || !m.g_u || !m.g_xi) {
                    throw std::invalid_argument(
                        "generic kinetics require f, g and all four partials");
                }
            }
        },
        model);
}

double eval_f(const ModelKinetics& model, double u, double xi) {
    return std::visit(
        [u, xi](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GrayScott>) {
                return -(m.B + m.k) * u + u * u * xi;
            } else if constexpr (std::is_same_v<T, ActivatorInhibitor>) {
                if (!(xi > 0.0)) throw_singular_xi(xi);
                return -u + std::pow(u, m.p) * std::pow(xi, -m.q);
            } else if constexpr (std::is_same_v<T, Carcinogenesis>) {
                const double theta = u * xi;
                return (m.a * theta / (1.0 + theta) - m.d) * u;
            } else {
                return m.f(u, xi);
            }
        },
        model);
}

double eval_g(const ModelKinetics& model, double u, double xi) {
    return std::visit(
        [u, xi](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GrayScott>) {
                return -xi * u * u + m.B * (1.0 - xi);
            } else if constexpr (std::is_same_v<T, ActivatorInhibitor>) {
                if (!(xi > 0.0)) throw_singular_xi(xi);
                return (-xi + std::pow(u, m.r) * std::pow(xi, -m.s)) / m.tau;
            } else if constexpr (std::is_same_v<T, Carcinogenesis>) {
                return -xi - xi * u * u + m.kappa0;
            } else {
                return m.g(u, xi);
            }
        },
        model);
}

Partials eval_partials(const ModelKinetics& model, double u, double xi) {
    return std::visit(
        [u, xi](const auto& m) -> Partials {
            using T = std::decay_t<decltype(m)>;
            Partials d;
            if constexpr (std::is_same_v<T, GrayScott>) {
                d.f_u = -(m.B + m.k) + 2.0 * u * xi;
                d.f_xi = u * u;
                d.g_u = -2.0 * xi * u;
                d.g_xi = -u * u - m.B;
            } else if constexpr (std::is_same_v<T, ActivatorInhibitor>) {
                if (!(xi > 0.0)) throw_singular_xi(xi);
                d.f_u = -1.0 + m.p * std::pow(u, m.p - 1.0) * std::pow(xi, -m.q);
                d.f_xi = -m.q * std::pow(u, m.p) * std::pow(xi, -m.q - 1.0);
                d.g_u = m.r * std::pow(u, m.r - 1.0) * std::pow(xi, -m.s) / m.tau;
                d.g_xi = (-1.0 - m.s * std::pow(u, m.r) * std::pow(xi, -m.s - 1.0)) / m.tau;
            } else if constexpr (std::is_same_v<T, Carcinogenesis>) {
                const double theta = u * xi;
                const double denom = (1.0 + theta) * (1.0 + theta);
                d.f_u = m.a * theta * (2.0 + theta) / denom - m.d;
                d.f_xi = m.a * u * u / denom;
                d.g_u = -2.0 * xi * u;
                d.g_xi = -1.0 - u * u;
            } else {
                d.f_u = m.f_u(u, xi);
                d.f_xi = m.f_xi(u, xi);
                d.g_u = m.g_u(u, xi);
                d.g_xi = m.g_xi(u, xi);
            }
            return d;
        },
        model);
}

bool requires_positive_xi(const ModelKinetics& model) {
    return std::holds_alternative<ActivatorInhibitor>(model);
}

std::string model_name(const ModelKinetics& model) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GrayScott>) return "grayscott";
            else if constexpr (std::is_same_v<T, ActivatorInhibitor>) return "activatorinhibitor";
            else if constexpr (std::is_same_v<T, Carcinogenesis>) return "carcinogenesis";
            else return "generic";
        },
        model);
}

std::string to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::TrivialStable: return "trivial-stable";
        case StabilityClass::UnstableAutocatalytic: return "unstable-autocatalytic";
        case StabilityClass::OdeStable: return "ode-stable";
        case StabilityClass::OdeUnstable: return "ode-unstable";
        case StabilityClass::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Field steady_field(const SteadyState& state, const SpatialGrid& grid) {
    Field out(grid.n_cells, state.u_on);
    if (state.mask) {
        if (state.mask->size() != grid.n_cells) {
            throw std::invalid_argument("steady_field: mask does not match grid");
        }
        for (std::size_t i = 0; i < grid.n_cells; ++i) {
            out[i] = (*state.mask)[i] ? state.u_on : state.u_off;
        }
    }
    return out;
}

std::vector<SteadyState> ode_steady_states(const ModelKinetics& model) {
    validate_model(model);
    std::vector<SteadyState> out;
    if (const auto* gs = std::get_if<GrayScott>(&model)) {
        out.push_back(make_constant_state(model, 0.0, 1.0));
        // positive states: B xi^2 - B xi + (B+k)^2 = 0, u = (B+k)/xi
        const double bk = gs->B + gs->k;
        for (double xi : quadratic_roots(gs->B, -gs->B, bk * bk)) {
            if (xi > 0.0) out.push_back(make_constant_state(model, bk / xi, xi));
        }
    } else if (std::holds_alternative<ActivatorInhibitor>(model)) {
        // u = 0 would force xi = 0 where the kinetics are singular, so the
        // only admissible constant state is (1,1).
        out.push_back(make_constant_state(model, 1.0, 1.0));
    } else if (const auto* carc = std::get_if<Carcinogenesis>(&model)) {
        out.push_back(make_constant_state(model, 0.0, carc->kappa0));
        if (carc->a > carc->d) {
            // d u^2 - kappa0 (a-d) u + d = 0, xi = d/((a-d) u)
            for (double u : quadratic_roots(carc->d, -carc->kappa0 * (carc->a - carc->d),
                                            carc->d)) {
                if (u > 0.0) {
                    out.push_back(
                        make_constant_state(model, u, carc->d / ((carc->a - carc->d) * u)));
                }
            }
        }
    }
    return out;
}

std::vector<SteadyState> shadow_steady_states(const ModelKinetics& model,
                                              const SpatialGrid& grid, const Mask& mask,
                                              std::string* diagnostic) {
    validate_model(model);
    const double m = mask_measure(grid, mask);
    if (!(m > 0.0) || m > 1.0 + 1e-12) {
        throw std::invalid_argument("shadow_steady_states: mask measure must lie in (0,1]");
    }
    auto diag = [diagnostic](const std::string& msg) {
        if (diagnostic) *diagnostic = msg;
    };
    std::vector<SteadyState> out;
    if (const auto* gs = std::get_if<GrayScott>(&model)) {
        const double bk = gs->B + gs->k;
        const auto roots = quadratic_roots(gs->B, -gs->B, m * bk * bk);
        if (roots.empty()) {
            diag("no real root: B^2 < 4 B m (B+k)^2");
            return out;
        }
        // Vieta: the two roots sum to 1 with positive product, so both are
        // positive whenever real (reported in full; see catalog diagnostics).
        for (double xi : roots) {
            if (xi > 0.0) out.push_back(make_piecewise_state(model, grid, mask, bk / xi, xi));
        }
    } else if (const auto* ai = std::get_if<ActivatorInhibitor>(&model)) {
        const double expo = ai->r * ai->q / (ai->p - 1.0) - ai->s;
        if (std::abs(expo - 1.0) < 1e-12) {
            if (std::abs(m - 1.0) < 1e-12) {
                out.push_back(make_piecewise_state(model, grid, mask, 1.0, 1.0));
            } else {
                diag("degenerate exponent r*q/(p-1) - s = 1 with mask measure != 1: "
                     "no isolated root");
            }
            return out;
        }
        const double xi = std::exp(-std::log(m) / (expo - 1.0));
        const double u_on = std::pow(xi, ai->q / (ai->p - 1.0));
        out.push_back(make_piecewise_state(model, grid, mask, u_on, xi));
    } else if (const auto* carc = std::get_if<Carcinogenesis>(&model)) {
        if (!(carc->a > carc->d)) {
            diag("a <= d: no positive piecewise state (xi = d/((a-d)u) requires a > d)");
            return out;
        }
        const auto roots =
            quadratic_roots(carc->d * m, -carc->kappa0 * (carc->a - carc->d), carc->d);
        if (roots.empty()) {
            diag("no real root: kappa0^2 (a-d)^2 < 4 d^2 m");
            return out;
        }
        for (double u : roots) {
            if (u > 0.0) {
                out.push_back(make_piecewise_state(model, grid, mask, u,
                                                   carc->d / ((carc->a - carc->d) * u)));
            }
        }
    } else {
        diag("no closed-form catalog for generic kinetics");
    }
    return out;
}

StabilityClass classify_shadow_stability(const ModelKinetics& model, const SteadyState& steady) {
    if (steady.residual_f > kResidualTol || steady.residual_g > kResidualTol) {
        return StabilityClass::Inconclusive;
    }
    // Autocatalysis on any positive-measure constant piece implies instability.
    const bool has_off_piece = steady.mask.has_value();
    auto fu = [&](double u) { return eval_partials(model, u, steady.xi_bar).f_u; };
    if (fu(steady.u_on) > 0.0) return StabilityClass::UnstableAutocatalytic;
    if (has_off_piece && fu(steady.u_off) > 0.0) return StabilityClass::UnstableAutocatalytic;

    // Designated trivial states.
    if (const auto* gs = std::get_if<GrayScott>(&model)) {
        (void)gs;
        if (steady.u_on == 0.0 && (!has_off_piece || steady.u_off == 0.0) &&
            std::abs(steady.xi_bar - 1.0) < 1e-12) {
            return StabilityClass::TrivialStable;
        }
    } else if (const auto* carc = std::get_if<Carcinogenesis>(&model)) {
        if (steady.u_on == 0.0 && (!has_off_piece || steady.u_off == 0.0) &&
            std::abs(steady.xi_bar - carc->kappa0) < 1e-12 * carc->kappa0) {
            return StabilityClass::TrivialStable;
        }
    }
    return StabilityClass::Inconclusive;
}

double eigenpair_residual(const ModelKinetics& model, const SpatialGrid& grid,
                          const SteadyState& steady, const Field& w0) {
    if (w0.size() != grid.n_cells) {
        throw std::invalid_argument("eigenpair_residual: w0 does not match grid");
    }
    Mask piece(grid.n_cells, true);
    if (steady.mask) piece = *steady.mask;

    double mean_on_piece = 0.0;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        if (piece[i]) {
            mean_on_piece += grid.weights[i] * w0[i];
        } else if (w0[i] != 0.0) {
            throw std::invalid_argument(
                "eigenpair_residual: w0 must vanish outside the constant piece");
        }
        max_abs = std::max(max_abs, std::abs(w0[i]));
    }
    if (max_abs == 0.0) {
        throw std::invalid_argument("eigenpair_residual: w0 must not be identically zero");
    }
    if (std::abs(mean_on_piece) > 1e-12 * std::max(1.0, max_abs)) {
        throw std::invalid_argument(
            "eigenpair_residual: w0 must have zero weighted mean on the piece");
    }

    const double lambda0 = eval_partials(model, steady.u_on, steady.xi_bar).f_u;
    const Field profile = steady_field(steady, grid);
    double field_residual = 0.0;
    double eta_component = 0.0;
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        const Partials d = eval_partials(model, profile[i], steady.xi_bar);
        field_residual = std::max(field_residual, std::abs(d.f_u * w0[i] - lambda0 * w0[i]));
        eta_component += grid.weights[i] * d.g_u * w0[i];
    }
    return std::max(field_residual, std::abs(eta_component));
}

}  // namespace shadowsim
