#pragma once
#include <optional>
#include <vector>

#include "convval/grid_function.hpp"
#include "convval/max_affine.hpp"
#include "convval/polytope.hpp"

namespace convval {

// conjugate of a max-affine function: a polyhedral complex on dom(v*) = conv{a_i}.
// each full-dimensional cell C_k is the subdifferential of v at the primal
// subdivision vertex x_k, and v* is affine on C_k with gradient x_k
struct DualCellComplex {
    struct DualCell {
        Vec x;          // primal subdivision vertex (gradient of v* on the cell)
        Polytope cell;  // subdifferential dv(x)
        double value;   // v(x): v*(y) = <x, y> - value on the cell
    };
    int dim = 0;
    Polytope domain;                 // conv of the slopes
    std::vector<DualCell> cells;     // full-dimensional cells only
    MaxAffineFunction pre_conjugate; // canonical v with v* = this complex
};

DualCellComplex conjugate_max_affine(const MaxAffineFunction& v);

// evaluate v from the complex: max over cell vertices of <x, y> - v*(y)
double biconjugate_eval(const DualCellComplex& u, const Vec& x);

DualCellComplex epi_multiply(const DualCellComplex& u, double lambda);

struct ConjugateGridOptions {
    std::optional<std::array<double, 3>> dual_lo, dual_hi;
    std::optional<std::array<int, 3>> dual_res;
};

// discrete Legendre transform, axis-separable (lower hull + monotone scan per
// axis). default dual box covers the sampled slope range; a requested box that
// clips the slope range throws std::domain_error
GridFunction conjugate_grid(const GridFunction& f, const ConjugateGridOptions& opts = {});

// per-axis sampled slope range (forward differences)
std::array<std::pair<double, double>, 3> slope_range(const GridFunction& f);

} // namespace convval
