#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shadowsim/integrator.hpp"
#include "shadowsim/runspec.hpp"

namespace shadowsim {

struct FigureResult {
    Trajectory trajectory;
    RunReport report;
    SpatialGrid grid;
    std::vector<std::string> files;
};

/// Run the figure preset on its 512-cell grid to its preset horizon (20 for
/// the single-spike run, 12 otherwise) and emit the surface data (t, x, u)
/// plus the scalar series. output_dir empty suppresses file emission.
FigureResult reproduce_figure(int id, const std::string& output_dir);

}  // namespace shadowsim
