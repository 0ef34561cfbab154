#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shadowsim/analytic.hpp"
#include "shadowsim/csv.hpp"
#include "shadowsim/figures.hpp"
#include "shadowsim/integrator.hpp"
#include "shadowsim/runspec.hpp"
#include "shadowsim/shadow_limit.hpp"
#include "shadowsim/sweep.hpp"

namespace {

using namespace shadowsim;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBlowup = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunSpec load_spec(const std::string& config_path, const std::vector<std::string>& overrides,
                  Command command) {
    RunSpec spec;
    if (!config_path.empty()) spec = parse_config(read_file(config_path));
    spec.command = command;
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        }
        apply_override(spec, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (spec.command == Command::Figure) {
        RunSpec preset = figure_runspec(spec.figure_id);
        preset.output_dir = spec.output_dir;
        spec = preset;
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            apply_override(spec, kv.substr(0, eq), kv.substr(eq + 1));
        }
    }
    return spec;
}

int report_run(const RunReport& report, const std::vector<std::string>& files) {
    switch (report.status.kind) {
        case RunStatusKind::Completed:
            std::cout << "status: completed\n";
            break;
        case RunStatusKind::Blowup:
            std::cout << "status: blowup t_star=" << format_csv_real(report.status.time)
                      << " node=" << report.status.node << "\n";
            break;
        case RunStatusKind::StepFailure:
            std::cout << "status: step-failure t=" << format_csv_real(report.status.time)
                      << "\n";
            break;
    }
    std::cout << "accepted_steps: " << report.accepted_steps
              << " rejected_steps: " << report.rejected_steps
              << " clamped_negatives: " << report.clamped_negatives << "\n";
    if (report.fitted_u_rate) {
        std::cout << "fitted_max_u_rate: " << format_csv_real(*report.fitted_u_rate) << "\n";
    }
    if (report.fitted_xi_rate) {
        std::cout << "fitted_xi_rate: " << format_csv_real(*report.fitted_xi_rate) << "\n";
    }
    std::cout << "monitors_clean: " << (report.monitors_clean() ? "yes" : "no") << "\n";
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
    if (report.status.kind == RunStatusKind::Blowup) return kExitBlowup;
    if (report.status.kind == RunStatusKind::StepFailure) return kExitError;
    return kExitOk;
}

int cmd_simulate(const RunSpec& spec) {
    const ModelKinetics model = build_model(spec);
    const SpatialGrid grid = make_uniform_grid(spec.grid_n);
    const Field u0 = build_u0(spec, grid);
    const auto [traj, report] = run_shadow(model, grid, u0, spec.xi0, spec.run);
    const auto files =
        emit_csv(traj, report, grid, spec.output_dir + "/" + spec.output_prefix);
    return report_run(report, files);
}

int cmd_kinetics(const RunSpec& spec) {
    const ModelKinetics model = build_model(spec);
    const auto [traj, report] = run_kinetics(model, spec.u0_const, spec.xi0, spec.run);
    SpatialGrid point;
    point.n_cells = 1;
    point.nodes = {0.5};
    point.weights = {1.0};
    const auto files =
        emit_csv(traj, report, point, spec.output_dir + "/" + spec.output_prefix);
    return report_run(report, files);
}

int cmd_steady(const RunSpec& spec) {
    const ModelKinetics model = build_model(spec);
    const SpatialGrid grid = make_uniform_grid(spec.grid_n);
    const Mask mask = build_mask(spec, grid);
    const auto ode_states = ode_steady_states(model);
    std::string diagnostic;
    const auto shadow_states = shadow_steady_states(model, grid, mask, &diagnostic);
    std::cout << "kinetic steady states: " << ode_states.size() << "\n";
    for (const auto& s : ode_states) {
        std::cout << "  (u, xi) = (" << format_csv_real(s.u_on) << ", "
                  << format_csv_real(s.xi_bar) << ")  " << to_string(s.classification) << "\n";
    }
    std::cout << "piecewise steady states on mask [" << spec.mask_lo << ", " << spec.mask_hi
              << "]: " << shadow_states.size() << "\n";
    for (const auto& s : shadow_states) {
        std::cout << "  (u_on, xi) = (" << format_csv_real(s.u_on) << ", "
                  << format_csv_real(s.xi_bar) << ")  " << to_string(s.classification) << "\n";
    }
    if (!diagnostic.empty()) std::cout << "diagnostic: " << diagnostic << "\n";
    const std::string prefix = spec.output_dir + "/" + spec.output_prefix;
    std::cout << "wrote " << emit_steady_csv(ode_states, prefix + "_ode_steady.csv") << "\n";
    std::cout << "wrote " << emit_steady_csv(shadow_states, prefix + "_shadow_steady.csv")
              << "\n";
    return kExitOk;
}

int cmd_certify(const RunSpec& spec) {
    const ModelKinetics model = build_model(spec);
    const SpatialGrid grid = make_uniform_grid(spec.grid_n);
    const Field u0 = build_u0(spec, grid);
    const BlowupCertificate cert = blowup_certificate(model, grid, u0, spec.xi0);
    for (const auto& h : cert.hypotheses) {
        std::cout << (h.satisfied ? "  [ok]   " : "  [fail] ") << h.name
                  << "  lhs=" << format_csv_real(h.lhs) << " rhs=" << format_csv_real(h.rhs)
                  << "\n";
    }
    if (cert.singular_mass) {
        std::cout << "singular_mass: " << format_csv_real(*cert.singular_mass)
                  << (cert.reliable ? "" : " (refinement NOT converged)") << "\n";
    }
    if (cert.tmax_upper) {
        std::cout << "tmax_upper: " << format_csv_real(*cert.tmax_upper) << "\n";
    }
    if (cert.lambda_window) {
        std::cout << "lambda_window: [" << format_csv_real(cert.lambda_window->first) << ", "
                  << format_csv_real(cert.lambda_window->second) << "]\n";
    }
    std::cout << "certified: " << (cert.satisfied ? "yes" : "no") << "\n";
    const std::string path = spec.output_dir + "/" + spec.output_prefix + "_certificate.csv";
    std::cout << "wrote " << emit_certificate_csv(cert, path) << "\n";
    return kExitOk;
}

int cmd_limit(const RunSpec& spec) {
    const ModelKinetics model = build_model(spec);
    const SpatialGrid grid = make_uniform_grid(spec.grid_n);
    const Field u0 = build_u0(spec, grid);
    Field v0(grid.n_cells, spec.xi0);
    if (!spec.v0_expr.empty()) {
        const Expression expr = parse_expression(spec.v0_expr);
        v0 = sample_field(grid, expr);
    }
    const LimitStudy study =
        convergence_study(model, grid, u0, v0, spec.limit_d_list, spec.limit_alpha,
                          spec.limit_t);
    std::cout << "shadow xi0 = " << format_csv_real(study.shadow_xi0) << "\n";
    for (const auto& row : study.rows) {
        std::cout << "  D=" << format_csv_real(row.D)
                  << "  metric=" << format_csv_real(row.metric) << "\n";
    }
    std::cout << "fitted_exponent: " << format_csv_real(study.fitted_exponent) << "\n";
    const std::string path = spec.output_dir + "/" + spec.output_prefix + "_limit.csv";
    std::cout << "wrote " << emit_limit_csv(study, path) << "\n";
    return kExitOk;
}

int cmd_sweep(const RunSpec& spec) {
    RunSpec base = spec;
    base.command = base.sweep_axis.empty() ? Command::Simulate : base.command;
    // the swept rows execute the base command stored in the spec file
    if (base.command == Command::Sweep) base.command = Command::Simulate;
    const auto rows = sweep(base, spec.sweep_axis, spec.sweep_values);
    for (const auto& row : rows) {
        std::cout << "  " << spec.sweep_axis << "=" << format_csv_real(row.value) << "  "
                  << row.status;
        if (row.t_star) std::cout << "  t_star=" << format_csv_real(*row.t_star);
        if (row.certified) std::cout << "  certified=" << (*row.certified ? "yes" : "no");
        if (!row.steady_11.empty()) std::cout << "  steady11=" << row.steady_11;
        if (!row.error.empty()) std::cout << "  error=" << row.error;
        std::cout << "\n";
    }
    const std::string path = spec.output_dir + "/" + spec.output_prefix + "_sweep.csv";
    std::cout << "wrote " << emit_sweep_csv(rows, path) << "\n";
    return kExitOk;
}

int cmd_figure(const RunSpec& spec) {
    const FigureResult result = reproduce_figure(spec.figure_id, spec.output_dir);
    return report_run(result.report, result.files);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shadow pattern-formation simulator and certificate checker"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    int figure_id = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (key = value per line)");
        sub->add_option("--set", overrides, "override a config key, e.g. --set model.a=2");
        sub->add_option("--out", out_dir, "output directory");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the shadow system");
    CLI::App* kinetics = app.add_subcommand("kinetics", "integrate the space-homogeneous system");
    CLI::App* steady = app.add_subcommand("steady", "catalog stationary solutions");
    CLI::App* certify = app.add_subcommand("certify", "evaluate the blowup/growth certificate");
    CLI::App* limit = app.add_subcommand("limit", "reaction-diffusion shadow-limit study");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep with summary table");
    CLI::App* figure = app.add_subcommand("figure", "reproduce a published simulation preset");
    for (CLI::App* sub : {simulate, kinetics, steady, certify, limit, sweep_cmd, figure}) {
        add_common(sub);
    }
    figure->add_option("--id", figure_id, "preset id (1-4)");

    CLI11_PARSE(app, argc, argv);

    try {
        Command command = Command::Simulate;
        if (kinetics->parsed()) command = Command::Kinetics;
        if (steady->parsed()) command = Command::Steady;
        if (certify->parsed()) command = Command::Certify;
        if (limit->parsed()) command = Command::Limit;
        if (sweep_cmd->parsed()) command = Command::Sweep;
        if (figure->parsed()) command = Command::Figure;

        RunSpec spec = load_spec(config_path, overrides, command);
        if (!out_dir.empty()) spec.output_dir = out_dir;
        if (figure->parsed() && figure_id > 0) {
            spec = figure_runspec(figure_id);
            spec.command = Command::Figure;
            if (!out_dir.empty()) spec.output_dir = out_dir;
            for (const auto& kv : overrides) {
                const auto eq = kv.find('=');
                apply_override(spec, kv.substr(0, eq), kv.substr(eq + 1));
            }
        }

        switch (spec.command) {
            case Command::Simulate: return cmd_simulate(spec);
            case Command::Kinetics: return cmd_kinetics(spec);
            case Command::Steady: return cmd_steady(spec);
            case Command::Certify: return cmd_certify(spec);
            case Command::Limit: return cmd_limit(spec);
            case Command::Sweep: return cmd_sweep(spec);
            case Command::Figure: return cmd_figure(spec);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
