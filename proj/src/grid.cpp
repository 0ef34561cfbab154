#include "shadowsim/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace shadowsim {

SpatialGrid make_uniform_grid(std::size_t n_cells) {
    if (n_cells < 2) {
        throw std::invalid_argument("make_uniform_grid: n_cells must be >= 2, got " +
                                    std::to_string(n_cells));
    }
    SpatialGrid grid;
    grid.n_cells = n_cells;
    grid.nodes.resize(n_cells);
    grid.weights.assign(n_cells, 1.0 / static_cast<double>(n_cells));
    const double h = 1.0 / static_cast<double>(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) {
        grid.nodes[i] = (static_cast<double>(i) + 0.5) * h;
    }
    return grid;
}

double quadrature(const SpatialGrid& grid, const Field& f) {
    if (f.size() != grid.n_cells) {
        throw std::invalid_argument("quadrature: field length " + std::to_string(f.size()) +
                                    " does not match grid with " +
                                    std::to_string(grid.n_cells) + " cells");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += grid.weights[i] * f[i];
    return acc;
}

std::vector<std::size_t> argmax_set(const SpatialGrid& grid, const Field& f, double tol) {
    if (f.size() != grid.n_cells) {
        throw std::invalid_argument("argmax_set: field does not match grid");
    }
    if (tol < 0.0) throw std::invalid_argument("argmax_set: tol must be >= 0");
    if (f.empty()) return {};
    const double fmax = *std::max_element(f.begin(), f.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] >= fmax - tol) out.push_back(i);
    }
    return out;
}

double mask_measure(const SpatialGrid& grid, const Mask& mask) {
    if (mask.size() != grid.n_cells) {
        throw std::invalid_argument("mask_measure: mask does not match grid");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) m += grid.weights[i];
    }
    return m;
}

}  // namespace shadowsim
