#include "shadowsim/figures.hpp"

#include "shadowsim/csv.hpp"

namespace shadowsim {

FigureResult reproduce_figure(int id, const std::string& output_dir) {
    const RunSpec spec = figure_runspec(id);
    const ModelKinetics model = build_model(spec);
    FigureResult result;
    result.grid = make_uniform_grid(spec.grid_n);
    const Field u0 = build_u0(spec, result.grid);
    auto [traj, report] = run_shadow(model, result.grid, u0, spec.xi0, spec.run);
    result.trajectory = std::move(traj);
    result.report = std::move(report);
    if (!output_dir.empty()) {
        const std::string prefix = output_dir + "/" + spec.output_prefix;
        result.files = emit_csv(result.trajectory, result.report, result.grid, prefix);
    }
    return result;
}

}  // namespace shadowsim
