#include "shadowsim/runspec.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace shadowsim {

namespace {

const std::map<std::string, std::vector<std::string>>& model_param_names() {
    static const std::map<std::string, std::vector<std::string>> names = {
        {"grayscott", {"B", "k"}},
        {"activatorinhibitor", {"p", "q", "r", "s", "tau"}},
        {"carcinogenesis", {"a", "d", "kappa0"}},
    };
    return names;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_real(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        while (used < value.size() && std::isspace(static_cast<unsigned char>(value[used]))) {
            ++used;
        }
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("key '" + key + "': expected a number, got '" + value + "'");
    }
}

std::vector<double> parse_real_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        out.push_back(parse_real(item.substr(first, last - first + 1), key));
    }
    return out;
}

std::vector<std::string> parse_string_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

std::string strip_quotes(const std::string& value) {
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        return value.substr(1, value.size() - 2);
    }
    return value;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

std::string join_reals(const std::vector<double>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += format_real(parts[i]);
    }
    return out;
}

void set_key(RunSpec& spec, const std::string& key, const std::string& raw_value) {
    const std::string value = strip_quotes(raw_value);
    if (key == "command") {
        spec.command = command_from_string(value);
    } else if (key == "model.type") {
        if (model_param_names().count(value) == 0) {
            throw std::invalid_argument("key 'model.type': unknown model '" + value + "'");
        }
        spec.model_type = value;
    } else if (key.rfind("model.", 0) == 0) {
        spec.model_params[key.substr(6)] = parse_real(value, key);
    } else if (key == "grid.n") {
        const double n = parse_real(value, key);
        if (n < 2 || n != static_cast<double>(static_cast<std::size_t>(n))) {
            throw std::invalid_argument("key 'grid.n': integer >= 2 required");
        }
        spec.grid_n = static_cast<std::size_t>(n);
    } else if (key == "init.u0") {
        parse_expression(value);  // reject malformed expressions at parse time
        spec.u0_expr = value;
    } else if (key == "init.xi0") {
        spec.xi0 = parse_real(value, key);
    } else if (key == "init.u0_const") {
        spec.u0_const = parse_real(value, key);
    } else if (key == "init.v0") {
        if (!value.empty()) parse_expression(value);
        spec.v0_expr = value;
    } else if (key == "run.t_end") {
        spec.run.t_end = parse_real(value, key);
    } else if (key == "run.dt_init") {
        spec.run.dt_init = parse_real(value, key);
    } else if (key == "run.dt_min") {
        spec.run.dt_min = parse_real(value, key);
    } else if (key == "run.rel_tol") {
        spec.run.rel_tol = parse_real(value, key);
    } else if (key == "run.blowup_threshold") {
        spec.run.blowup_threshold = parse_real(value, key);
    } else if (key == "run.sample_every") {
        spec.run.sample_every = parse_real(value, key);
    } else if (key == "run.monitors") {
        spec.run.monitors = parse_string_list(value);
        const auto& known = known_monitor_tags();
        for (const auto& tag : spec.run.monitors) {
            if (std::find(known.begin(), known.end(), tag) == known.end()) {
                throw std::invalid_argument("key 'run.monitors': unknown monitor tag '" + tag +
                                            "'");
            }
        }
    } else if (key == "run.lemma_lambda") {
        spec.run.lemma_lambda = parse_real(value, key);
    } else if (key == "mask.lo") {
        spec.mask_lo = parse_real(value, key);
    } else if (key == "mask.hi") {
        spec.mask_hi = parse_real(value, key);
    } else if (key == "limit.d_list") {
        spec.limit_d_list = parse_real_list(value, key);
    } else if (key == "limit.alpha") {
        spec.limit_alpha = parse_real(value, key);
    } else if (key == "limit.t") {
        spec.limit_t = parse_real(value, key);
    } else if (key == "sweep.axis") {
        spec.sweep_axis = value;
    } else if (key == "sweep.values") {
        spec.sweep_values = parse_real_list(value, key);
    } else if (key == "figure.id") {
        const double id = parse_real(value, key);
        if (id < 1 || id > 4 || id != static_cast<double>(static_cast<int>(id))) {
            throw std::invalid_argument("key 'figure.id': integer in 1..4 required");
        }
        spec.figure_id = static_cast<int>(id);
    } else if (key == "output.dir") {
        spec.output_dir = value;
    } else if (key == "output.prefix") {
        spec.output_prefix = value;
    } else {
        throw std::invalid_argument("unknown key '" + key + "'");
    }
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Kinetics: return "kinetics";
        case Command::Steady: return "steady";
        case Command::Certify: return "certify";
        case Command::Limit: return "limit";
        case Command::Sweep: return "sweep";
        case Command::Figure: return "figure";
    }
    return "simulate";
}

Command command_from_string(const std::string& name) {
    if (name == "simulate") return Command::Simulate;
    if (name == "kinetics") return Command::Kinetics;
    if (name == "steady") return Command::Steady;
    if (name == "certify") return Command::Certify;
    if (name == "limit") return Command::Limit;
    if (name == "sweep") return Command::Sweep;
    if (name == "figure") return Command::Figure;
    throw std::invalid_argument("unknown command '" + name + "'");
}

RunSpec parse_config(const std::string& text) {
    RunSpec spec;
    spec.model_params.clear();
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": empty key");
        }
        try {
            set_key(spec, key, value);
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " +
                                        e.what());
        }
    }
    build_model(spec);  // surface model constraint violations now
    return spec;
}

std::string serialize_config(const RunSpec& spec) {
    std::ostringstream out;
    out << "command = " << to_string(spec.command) << "\n";
    out << "model.type = " << spec.model_type << "\n";
    for (const auto& [name, value] : spec.model_params) {
        out << "model." << name << " = " << format_real(value) << "\n";
    }
    out << "grid.n = " << spec.grid_n << "\n";
    out << "init.u0 = \"" << spec.u0_expr << "\"\n";
    out << "init.xi0 = " << format_real(spec.xi0) << "\n";
    out << "init.u0_const = " << format_real(spec.u0_const) << "\n";
    if (!spec.v0_expr.empty()) out << "init.v0 = \"" << spec.v0_expr << "\"\n";
    out << "run.t_end = " << format_real(spec.run.t_end) << "\n";
    out << "run.dt_init = " << format_real(spec.run.dt_init) << "\n";
    out << "run.dt_min = " << format_real(spec.run.dt_min) << "\n";
    out << "run.rel_tol = " << format_real(spec.run.rel_tol) << "\n";
    out << "run.blowup_threshold = " << format_real(spec.run.blowup_threshold) << "\n";
    out << "run.sample_every = " << format_real(spec.run.sample_every) << "\n";
    if (!spec.run.monitors.empty()) out << "run.monitors = " << join(spec.run.monitors) << "\n";
    out << "run.lemma_lambda = " << format_real(spec.run.lemma_lambda) << "\n";
    out << "mask.lo = " << format_real(spec.mask_lo) << "\n";
    out << "mask.hi = " << format_real(spec.mask_hi) << "\n";
    out << "limit.d_list = " << join_reals(spec.limit_d_list) << "\n";
    out << "limit.alpha = " << format_real(spec.limit_alpha) << "\n";
    out << "limit.t = " << format_real(spec.limit_t) << "\n";
    if (!spec.sweep_axis.empty()) out << "sweep.axis = " << spec.sweep_axis << "\n";
    if (!spec.sweep_values.empty()) {
        out << "sweep.values = " << join_reals(spec.sweep_values) << "\n";
    }
    out << "figure.id = " << spec.figure_id << "\n";
    out << "output.dir = " << spec.output_dir << "\n";
    out << "output.prefix = " << spec.output_prefix << "\n";
    return out.str();
}

void apply_override(RunSpec& spec, const std::string& key, const std::string& value) {
    set_key(spec, key, value);
}

ModelKinetics build_model(const RunSpec& spec) {
    const auto& allowed = model_param_names().at(spec.model_type);
    for (const auto& [name, value] : spec.model_params) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
            throw std::invalid_argument("model parameter '" + name + "' does not belong to " +
                                        spec.model_type);
        }
    }
    auto param = [&](const std::string& name, double fallback) {
        const auto it = spec.model_params.find(name);
        return it == spec.model_params.end() ? fallback : it->second;
    };
    ModelKinetics model;
    if (spec.model_type == "grayscott") {
        model = GrayScott{param("B", 1.0), param("k", 0.1)};
    } else if (spec.model_type == "activatorinhibitor") {
        model = ActivatorInhibitor{param("p", 2.0), param("q", 1.0), param("r", 2.0),
                                   param("s", 0.0), param("tau", 1.0)};
    } else {
        model = Carcinogenesis{param("a", 2.0), param("d", 1.0), param("kappa0", 65.0 / 8.0)};
    }
    validate_model(model);
    return model;
}

Field build_u0(const RunSpec& spec, const SpatialGrid& grid) {
    const Expression expr = parse_expression(spec.u0_expr);
    return sample_field(grid, expr);
}

Mask build_mask(const RunSpec& spec, const SpatialGrid& grid) {
    if (!(spec.mask_lo < spec.mask_hi)) {
        throw std::invalid_argument("mask.lo < mask.hi required");
    }
    Mask mask(grid.n_cells, false);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        mask[i] = grid.nodes[i] >= spec.mask_lo && grid.nodes[i] <= spec.mask_hi;
    }
    return mask;
}

FigurePreset figure_preset(int id) {
    FigurePreset preset;
    preset.id = id;
    preset.model = Carcinogenesis{2.0, 1.0, 65.0 / 8.0};
    preset.xi0 = 0.125;
    switch (id) {
        case 1:
            preset.u0_expr = "8 - 0.05*(cos(2*pi*x) + 0.25*(1 - x))";
            preset.t_end = 20.0;
            break;
        case 2:
            preset.u0_expr = "8 + 0.05*sin(3*pi*x)*(1 + 0.1*x)";
            preset.t_end = 12.0;
            break;
        case 3:
            preset.u0_expr = "8 + 0.05*sin(3*pi*x)";
            preset.t_end = 12.0;
            break;
        case 4:
            preset.u0_expr = "piecewise(0.25, 0.75, 8, 8 - 0.05*sin(2*pi*x + 0.5*pi))";
            preset.t_end = 12.0;
            break;
        default:
            throw std::invalid_argument("figure id must be 1..4, got " + std::to_string(id));
    }
    return preset;
}

RunSpec figure_runspec(int id) {
    const FigurePreset preset = figure_preset(id);
    RunSpec spec;
    spec.command = Command::Figure;
    spec.figure_id = id;
    spec.model_type = "carcinogenesis";
    spec.model_params = {{"a", preset.model.a}, {"d", preset.model.d},
                         {"kappa0", preset.model.kappa0}};
    spec.grid_n = preset.grid_n;
    spec.u0_expr = preset.u0_expr;
    spec.xi0 = preset.xi0;
    spec.run.t_end = preset.t_end;
    spec.run.dt_init = 1e-3;
    spec.run.dt_min = 1e-10;
    spec.run.rel_tol = 1e-6;
    spec.run.blowup_threshold = 1e8;
    spec.run.sample_every = 0.05;
    spec.run.monitors = {"carc-apriori", "carc-mass", "carc-lemma-invariant", "carc-max-floor",
                         "carc-ratio-monotone"};
    spec.output_prefix = "fig" + std::to_string(id);
    return spec;
}

}  // namespace shadowsim
