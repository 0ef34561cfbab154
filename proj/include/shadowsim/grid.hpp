#pragma once

#include <cstddef>
#include <vector>

namespace shadowsim {

/// Scalar samples over the grid nodes, one value per cell center.
using Field = std::vector<double>;

/// Node subset indicator (e.g. the constant piece of a piecewise steady state).
using Mask = std::vector<bool>;

/// Midpoint discretization of the unit interval: cell centers plus cell
/// measures. Weights always sum to 1, matching the unit-measure domain
/// normalization used throughout.
struct SpatialGrid {
    std::size_t n_cells = 0;
    std::vector<double> nodes;    // strictly increasing, inside (0,1)
    std::vector<double> weights;  // positive, sum to 1
};

/// State of the nonlocal system: field u(x), scalar xi, time t.
struct ShadowState {
    Field u;
    double xi = 0.0;
    double t = 0.0;
};

/// Uniform midpoint grid with n_cells cells. Throws std::invalid_argument
/// for n_cells < 2.
SpatialGrid make_uniform_grid(std::size_t n_cells);

/// Sum of w_i * f_i; the discrete realization of the domain integral.
/// Throws std::invalid_argument on length mismatch.
double quadrature(const SpatialGrid& grid, const Field& f);

/// Indices i with f_i >= max(f) - tol. Ties are returned in full, never
/// collapsed to a single index.
std::vector<std::size_t> argmax_set(const SpatialGrid& grid, const Field& f,
                                    double tol);

/// Measure of the masked subset: sum of masked weights.
double mask_measure(const SpatialGrid& grid, const Mask& mask);

/// Sample fn(x) at every node.
template <typename F>
Field sample_field(const SpatialGrid& grid, F&& fn) {
    Field out(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) out[i] = fn(grid.nodes[i]);
    return out;
}

}  // namespace shadowsim
