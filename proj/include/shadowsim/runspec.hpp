#pragma once

#include <map>
#include <string>
#include <vector>

#include "shadowsim/expression.hpp"
#include "shadowsim/integrator.hpp"
#include "shadowsim/kinetics.hpp"

namespace shadowsim {

enum class Command { Simulate, Kinetics, Steady, Certify, Limit, Sweep, Figure };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

/// A fully specified run: model, grid, initial data, integrator settings and
/// per-command extras. Parsed from the flat dotted-key config document and
/// serializable back to it (parse of serialize is the identity).
struct RunSpec {
    Command command = Command::Simulate;

    std::string model_type = "carcinogenesis";  // grayscott | activatorinhibitor | carcinogenesis
    std::map<std::string, double> model_params;

    std::size_t grid_n = 256;

    std::string u0_expr = "8";
    double xi0 = 0.125;
    double u0_const = 1.0;  // kinetics command initial u

    IntegratorConfig run;

    double mask_lo = 0.0;  // steady command: the constant piece is [lo, hi]
    double mask_hi = 1.0;

    std::vector<double> limit_d_list = {100.0, 1000.0, 10000.0};
    double limit_alpha = 0.25;
    double limit_t = 2.0;
    std::string v0_expr;  // limit command; empty means v0 = xi0 everywhere

    std::string sweep_axis;
    std::vector<double> sweep_values;

    int figure_id = 1;

    std::string output_dir = ".";
    std::string output_prefix = "run";
};

/// Parse the flat key-value document (one `key = value` per line, `#`
/// comments). Unknown keys and malformed values are rejected with the line
/// number; model/integrator constraints are validated with the violated
/// bound named.
RunSpec parse_config(const std::string& text);

/// Canonical serialization; deterministic key order.
std::string serialize_config(const RunSpec& spec);

/// Apply one `key = value` override (the CLI flag / sweep-axis mechanism).
void apply_override(RunSpec& spec, const std::string& key, const std::string& value);

/// Build the kinetics object from the spec's model section; validates
/// parameter constraints.
ModelKinetics build_model(const RunSpec& spec);

/// Evaluate the spec's initial-data expression on a grid.
Field build_u0(const RunSpec& spec, const SpatialGrid& grid);

/// Node mask for the [mask_lo, mask_hi] interval.
Mask build_mask(const RunSpec& spec, const SpatialGrid& grid);

/// Simulation presets reproducing the published single-spike, spike
/// competition, double-spike and plateau runs. All use the carcinogenesis
/// model with a=2, d=1, kappa0=65/8, xi0=1/8 on 512 cells.
struct FigurePreset {
    int id = 1;
    Carcinogenesis model;
    double xi0 = 0.125;
    std::string u0_expr;
    double t_end = 12.0;
    std::size_t grid_n = 512;
};

FigurePreset figure_preset(int id);

/// The preset expanded to a ready-to-run spec (monitors included).
RunSpec figure_runspec(int id);

}  // namespace shadowsim
