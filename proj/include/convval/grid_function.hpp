#pragma once
#include <array>
#include <functional>
#include <vector>

#include "convval/vec.hpp"

namespace convval {

// dense samples of a finite convex function on a regular box grid,
// row-major with the last axis fastest
struct GridFunction {
    int dim = 0;
    std::array<double, 3> lo{}, hi{};
    std::array<int, 3> res{};
    std::vector<double> values;

    double h(int axis) const { return (hi[axis] - lo[axis]) / (res[axis] - 1); }
    double node(int axis, int i) const {
        return lo[axis] + (hi[axis] - lo[axis]) * (static_cast<double>(i) / (res[axis] - 1));
    }
    size_t index(int i, int j = 0, int k = 0) const {
        size_t r = static_cast<size_t>(i);
        if (dim > 1) r = r * res[1] + static_cast<size_t>(j);
        if (dim > 2) r = r * res[2] + static_cast<size_t>(k);
        return r;
    }
    double at(int i, int j = 0, int k = 0) const { return values[index(i, j, k)]; }
    size_t node_count() const {
        size_t c = 1;
        for (int a = 0; a < dim; ++a) c *= static_cast<size_t>(res[a]);
        return c;
    }
    double value_scale() const;
};

// validated constructor: checks shape, finiteness, and discrete convexity
GridFunction make_grid_function(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                                const std::array<int, 3>& res, std::vector<double> values);

// sample a callable on the box (validates the result)
GridFunction sample_grid(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                         const std::array<int, 3>& res, const std::function<double(const Vec&)>& f);

// structure checks without convexity validation (for conjugates of clipped data etc.)
GridFunction make_grid_function_unchecked(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                                          const std::array<int, 3>& res, std::vector<double> values);

// multilinear interpolation; throws std::domain_error outside the box
double eval(const GridFunction& f, const Vec& x);

// discrete convexity: second differences along every axis-parallel line and
// both diagonals of every 2D slice are >= -tol_rel * value scale
bool is_discretely_convex(const GridFunction& f, double tol_rel = 1e-9);

// one separable [1/4, 1/2, 1/4] averaging pass per axis (boundary kept);
// preserves affine parts and additive separability
GridFunction mollify(const GridFunction& f);

// every interior second difference consistent with a C^2 function at this
// resolution (no kink-scale jumps)
bool looks_smooth(const GridFunction& f);

// curvature concentrated on few nodes (piecewise-linear-like samples)
bool looks_piecewise_linear(const GridFunction& f);

// stride-2 subsampling (resolution must be odd)
GridFunction coarsen(const GridFunction& f);

GridFunction grid_add_linear(const GridFunction& f, const Vec& y, double c = 0.0);
GridFunction grid_add_quadratic(const GridFunction& f, double r);
GridFunction grid_scale_values(const GridFunction& f, double lambda);
GridFunction grid_epi_multiply(const GridFunction& f, double lambda);

} // namespace convval
