#include "shadowsim/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace shadowsim {

namespace {

double gs_integrand(double u0_max, double u0, double /*p unused*/, double /*r unused*/) {
    if (u0 == 0.0) return 0.0;
    const double ratio = u0_max * u0 / (u0_max - u0);
    return ratio * ratio;
}

double ai_integrand(double u0_max, double u0, double p, double r) {
    if (u0 == 0.0) return 0.0;
    const double gap = std::pow(u0_max, p - 1.0) - std::pow(u0, p - 1.0);
    const double ratio = u0_max * u0 / std::pow(gap, 1.0 / (p - 1.0));
    return std::pow(ratio, r);
}

using Integrand = double (*)(double, double, double, double);

SingularMass singular_mass_impl(const SpatialGrid& grid, const Field& u0, std::size_t x_star,
                                Integrand integrand, double p, double r) {
    const double u0_max = u0[x_star];
    for (std::size_t i = 0; i < u0.size(); ++i) {
        if (i != x_star && !(u0[i] < u0_max)) {
            throw std::invalid_argument(
                "singular_mass_functional: u0 must attain a strict maximum at x_star "
                "(tie at node " + std::to_string(i) + ")");
        }
        if (u0[i] < 0.0) {
            throw std::invalid_argument("singular_mass_functional: u0 must be nonnegative");
        }
    }
    SingularMass out;
    double coarse_weight_sum = 0.0;
    const std::size_t parity = x_star % 2;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        if (i % 2 == parity) coarse_weight_sum += grid.weights[i];
    }
    for (std::size_t i = 0; i < u0.size(); ++i) {
        if (i == x_star) continue;
        const double val = integrand(u0_max, u0[i], p, r);
        out.value += grid.weights[i] * val;
        if (i % 2 == parity) out.coarse_value += grid.weights[i] / coarse_weight_sum * val;
    }
    const double scale = std::max(std::abs(out.value), std::abs(out.coarse_value));
    out.converged = scale == 0.0 || std::abs(out.value - out.coarse_value) <= 0.05 * scale;
    return out;
}

void push(std::vector<Hypothesis>& hs, std::string name, double lhs, double rhs,
          bool satisfied) {
    hs.push_back(Hypothesis{std::move(name), lhs, rhs, satisfied});
}

}  // namespace

SingularMass singular_mass_functional(const ModelKinetics& model, const SpatialGrid& grid,
                                      const Field& u0, std::size_t x_star) {
    if (u0.size() != grid.n_cells) {
        throw std::invalid_argument("singular_mass_functional: field does not match grid");
    }
    if (x_star >= grid.n_cells) {
        throw std::invalid_argument("singular_mass_functional: x_star out of range");
    }
    if (std::holds_alternative<GrayScott>(model)) {
        return singular_mass_impl(grid, u0, x_star, gs_integrand, 0.0, 0.0);
    }
    if (const auto* ai = std::get_if<ActivatorInhibitor>(&model)) {
        return singular_mass_impl(grid, u0, x_star, ai_integrand, ai->p, ai->r);
    }
    throw std::invalid_argument(
        "singular_mass_functional: defined for Gray-Scott and activator-inhibitor only");
}

BlowupCertificate blowup_certificate(const ModelKinetics& model, const SpatialGrid& grid,
                                     const Field& u0, double xi0) {
    validate_model(model);
    if (u0.size() != grid.n_cells) {
        throw std::invalid_argument("blowup_certificate: field does not match grid");
    }
    BlowupCertificate cert;
    cert.model = model_name(model);
    cert.max_set = argmax_set(grid, u0, 0.0);
    cert.x_star = cert.max_set.front();
    const double u0_max = u0[cert.x_star];
    const bool unique_max = cert.max_set.size() == 1;

    if (const auto* gs = std::get_if<GrayScott>(&model)) {
        push(cert.hypotheses, "xi0-nonnegative", xi0, 0.0, xi0 >= 0.0);
        push(cert.hypotheses, "unique-strict-max", static_cast<double>(cert.max_set.size()),
             1.0, unique_max);
        if (unique_max && u0_max > 0.0) {
            const SingularMass a0 = singular_mass_functional(model, grid, u0, cert.x_star);
            cert.singular_mass = a0.value;
            cert.reliable = a0.converged;
            push(cert.hypotheses, "singular-mass-converged", a0.value, a0.coarse_value,
                 a0.converged);
            const double kappa = gs->B + gs->k;
            const double floor = std::min(xi0, gs->B / (a0.value + gs->B));
            push(cert.hypotheses, "xi-floor-beats-escape-threshold", floor / kappa,
                 1.0 / u0_max, floor / kappa > 1.0 / u0_max);
            cert.satisfied = std::all_of(cert.hypotheses.begin(), cert.hypotheses.end(),
                                         [](const Hypothesis& h) { return h.satisfied; });
            if (cert.satisfied) {
                cert.tmax_upper = -std::log(1.0 - kappa / (u0_max * floor)) / kappa;
            }
        }
        return cert;
    }

    if (const auto* ai = std::get_if<ActivatorInhibitor>(&model)) {
        push(cert.hypotheses, "xi0-positive", xi0, 0.0, xi0 > 0.0);
        push(cert.hypotheses, "unique-strict-max", static_cast<double>(cert.max_set.size()),
             1.0, unique_max);
        if (unique_max && u0_max > 0.0 && xi0 > 0.0) {
            const SingularMass b0 = singular_mass_functional(model, grid, u0, cert.x_star);
            cert.singular_mass = b0.value;
            cert.reliable = b0.converged;
            push(cert.hypotheses, "singular-mass-converged", b0.value, b0.coarse_value,
                 b0.converged);
            const double cap = std::max(xi0, std::pow(b0.value, 1.0 / (1.0 + ai->s)));
            const double lhs = std::pow(cap, -ai->q);
            const double rhs = std::pow(u0_max, 1.0 - ai->p);
            push(cert.hypotheses, "xi-cap-beats-escape-threshold", lhs, rhs, lhs > rhs);
            cert.satisfied = std::all_of(cert.hypotheses.begin(), cert.hypotheses.end(),
                                         [](const Hypothesis& h) { return h.satisfied; });
            if (cert.satisfied) {
                cert.tmax_upper = -std::log(1.0 - rhs / lhs) / (ai->p - 1.0);
            }
        }
        return cert;
    }

    if (const auto* carc = std::get_if<Carcinogenesis>(&model)) {
        const double a = carc->a, d = carc->d, k0 = carc->kappa0;
        Field u0_sq(u0.size());
        for (std::size_t i = 0; i < u0.size(); ++i) u0_sq[i] = u0[i] * u0[i];
        const double mass2 = quadrature(grid, u0_sq);

        push(cert.hypotheses, "growth-margin", 2.0 * (a - d), 1.0, 2.0 * (a - d) >= 1.0);
        push(cert.hypotheses, "source-strength", k0, 4.0 * a, k0 >= 4.0 * a);
        const double lo = 0.5;
        const double hi_coeff = 1.0 - 2.0 * a / k0;
        const double hi_xi = 1.0 - xi0 / k0;
        const double hi_mass = xi0 * mass2 / k0;
        const double hi = std::min({hi_coeff, hi_xi, hi_mass});
        cert.lambda_window = std::make_pair(lo, hi);
        push(cert.hypotheses, "lambda-window-nonempty", lo, std::min(hi_coeff, hi_xi),
             lo <= std::min(hi_coeff, hi_xi));
        push(cert.hypotheses, "initial-activity", xi0 * mass2, lo * k0, xi0 * mass2 > lo * k0);
        push(cert.hypotheses, "xi0-positive", xi0, 0.0, xi0 > 0.0);
        push(cert.hypotheses, "max-set-singleton", static_cast<double>(cert.max_set.size()),
             1.0, unique_max);
        cert.satisfied = std::all_of(cert.hypotheses.begin(), cert.hypotheses.end(),
                                     [](const Hypothesis& h) { return h.satisfied; });
        return cert;
    }

    throw std::invalid_argument("blowup_certificate: no theorem for generic kinetics");
}

double exact_u(const ModelKinetics& model, double u0_value, double t, const XiHistory& hist) {
    if (u0_value == 0.0) return 0.0;
    if (u0_value < 0.0) throw std::invalid_argument("exact_u: u0 must be nonnegative");
    if (const auto* gs = std::get_if<GrayScott>(&model)) {
        const double kappa = gs->B + gs->k;
        CumulativeKernelIntegral integral(hist, [](double xi) { return xi; }, kappa);
        const double denom = 1.0 / u0_value - integral.value(t);
        if (denom <= 0.0) {
            const auto cross = integral.crossing(1.0 / u0_value);
            throw PastBlowupError("exact_u: denominator crossed zero at t = " +
                                      std::to_string(cross.value_or(t)),
                                  cross.value_or(t));
        }
        return std::exp(-kappa * t) / denom;
    }
    if (const auto* ai = std::get_if<ActivatorInhibitor>(&model)) {
        const double pm1 = ai->p - 1.0;
        const double q = ai->q;
        CumulativeKernelIntegral integral(
            hist, [q](double xi) { return std::pow(xi, -q); }, pm1);
        const double denom = std::pow(u0_value, -pm1) - pm1 * integral.value(t);
        if (denom <= 0.0) {
            const auto cross = integral.crossing(std::pow(u0_value, -pm1) / pm1);
            throw PastBlowupError("exact_u: denominator crossed zero at t = " +
                                      std::to_string(cross.value_or(t)),
                                  cross.value_or(t));
        }
        return std::exp(-t) / std::pow(denom, 1.0 / pm1);
    }
    throw std::invalid_argument("exact_u: closed form exists for Gray-Scott and "
                                "activator-inhibitor kinetics only");
}

Field exact_u_profile(const ModelKinetics& model, const Field& u0, double t,
                      const XiHistory& hist) {
    Field out(u0.size(), 0.0);
    if (const auto* gs = std::get_if<GrayScott>(&model)) {
        const double kappa = gs->B + gs->k;
        CumulativeKernelIntegral integral(hist, [](double xi) { return xi; }, kappa);
        const double cumulative = integral.value(t);
        const double decay = std::exp(-kappa * t);
        for (std::size_t i = 0; i < u0.size(); ++i) {
            if (u0[i] == 0.0) continue;
            const double denom = 1.0 / u0[i] - cumulative;
            if (denom <= 0.0) {
                const auto cross = integral.crossing(1.0 / u0[i]);
                throw PastBlowupError("exact_u_profile: node " + std::to_string(i) +
                                          " past blowup",
                                      cross.value_or(t));
            }
            out[i] = decay / denom;
        }
        return out;
    }
    if (std::holds_alternative<ActivatorInhibitor>(model)) {
        for (std::size_t i = 0; i < u0.size(); ++i) out[i] = exact_u(model, u0[i], t, hist);
        return out;
    }
    throw std::invalid_argument("exact_u_profile: closed form exists for Gray-Scott and "
                                "activator-inhibitor kinetics only");
}

std::optional<double> tmax_from_history(const ModelKinetics& model, double u0_max,
                                        const XiHistory& hist) {
    if (!(u0_max > 0.0)) throw std::invalid_argument("tmax_from_history: u0_max must be > 0");
    if (const auto* gs = std::get_if<GrayScott>(&model)) {
        CumulativeKernelIntegral integral(hist, [](double xi) { return xi; },
                                          gs->B + gs->k);
        return integral.crossing(1.0 / u0_max);
    }
    if (const auto* ai = std::get_if<ActivatorInhibitor>(&model)) {
        const double pm1 = ai->p - 1.0;
        const double q = ai->q;
        CumulativeKernelIntegral integral(
            hist, [q](double xi) { return std::pow(xi, -q); }, pm1);
        return integral.crossing(std::pow(u0_max, -pm1) / pm1);
    }
    throw std::invalid_argument("tmax_from_history: closed form exists for Gray-Scott and "
                                "activator-inhibitor kinetics only");
}

std::string to_string(KineticRegime r) {
    switch (r) {
        case KineticRegime::Global: return "global";
        case KineticRegime::BlowupPossible: return "blowup-possible";
        case KineticRegime::NeitherClassified: return "neither-classified";
    }
    return "neither-classified";
}

AiRegimeReport ai_kinetic_regime(double p, double q, double r, double s, double tau) {
    validate_model(ActivatorInhibitor{p, q, r, s, tau});
    AiRegimeReport report;
    if (p - 1.0 <= r) {
        report.regime = KineticRegime::Global;
    } else if (q > s + 1.0) {
        report.regime = KineticRegime::BlowupPossible;
    } else {
        report.regime = KineticRegime::NeitherClassified;
    }
    report.tau_threshold = (s + 1.0) / (p - 1.0);
    if (tau < report.tau_threshold) {
        report.steady_11 = StabilityClass::OdeStable;
    } else if (tau > report.tau_threshold) {
        report.steady_11 = StabilityClass::OdeUnstable;
    } else {
        report.steady_11 = StabilityClass::Inconclusive;
    }
    report.exponent_condition = (p - 1.0) / r < q / (s + 1.0);
    return report;
}

}  // namespace shadowsim
