#include "shadowsim/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "shadowsim/analytic.hpp"
#include "shadowsim/csv.hpp"
#include "shadowsim/integrator.hpp"

namespace shadowsim {

namespace {

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SHADOWSIM_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) n = static_cast<std::size_t>(parsed);
    }
    if (n == 0) n = 1;
    return std::min(n, std::max<std::size_t>(jobs, 1));
}

SweepRow run_row(const RunSpec& base, const std::string& axis, double value) {
    SweepRow row;
    row.value = value;
    try {
        RunSpec spec = base;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        apply_override(spec, axis, buf);
        const ModelKinetics model = build_model(spec);

        if (const auto* ai = std::get_if<ActivatorInhibitor>(&model)) {
            const AiRegimeReport regime =
                ai_kinetic_regime(ai->p, ai->q, ai->r, ai->s, ai->tau);
            row.steady_11 = to_string(regime.steady_11);
        }

        if (spec.command == Command::Kinetics) {
            const auto [traj, report] = run_kinetics(model, spec.u0_const, spec.xi0, spec.run);
            (void)traj;
            row.status = report.status.kind == RunStatusKind::Completed ? "completed"
                         : report.status.kind == RunStatusKind::Blowup  ? "blowup"
                                                                        : "step-failure";
            if (report.status.kind == RunStatusKind::Blowup) row.t_star = report.status.time;
            return row;
        }

        const SpatialGrid grid = make_uniform_grid(spec.grid_n);
        const Field u0 = build_u0(spec, grid);
        if (!std::holds_alternative<Generic>(model)) {
            row.certified = blowup_certificate(model, grid, u0, spec.xi0).satisfied;
        }
        if (spec.command == Command::Certify) {
            row.status = "completed";
            return row;
        }
        if (spec.command != Command::Simulate) {
            throw std::invalid_argument("sweep supports simulate, kinetics and certify");
        }
        const auto [traj, report] = run_shadow(model, grid, u0, spec.xi0, spec.run);
        (void)traj;
        row.status = report.status.kind == RunStatusKind::Completed ? "completed"
                     : report.status.kind == RunStatusKind::Blowup  ? "blowup"
                                                                    : "step-failure";
        if (report.status.kind == RunStatusKind::Blowup) row.t_star = report.status.time;
    } catch (const std::exception& e) {
        row.status = "error";
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> sweep(const RunSpec& base, const std::string& axis,
                            const std::vector<double>& values) {
    if (axis.empty()) throw std::invalid_argument("sweep: axis must name a config key");
    std::vector<SweepRow> rows(values.size());
    if (values.empty()) return rows;

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) break;
            rows[i] = run_row(base, axis, values[i]);
        }
    };
    const std::size_t n_workers = worker_count(values.size());
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

std::string emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "value,status,t_star,certified,steady_11,error\n";
    for (const auto& row : rows) {
        out << format_csv_real(row.value) << ',' << row.status << ',';
        if (row.t_star) out << format_csv_real(*row.t_star);
        out << ',';
        if (row.certified) out << (*row.certified ? "yes" : "no");
        out << ',' << row.steady_11 << ',' << row.error << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
    return path;
}

}  // namespace shadowsim
