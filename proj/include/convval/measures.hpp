#pragma once
#include <functional>
#include <vector>

#include "convval/conjugate.hpp"
#include "convval/grid_function.hpp"
#include "convval/max_affine.hpp"
#include "convval/radial_density.hpp"
#include "convval/vec.hpp"

namespace convval {

// atomic measure with per-atom subdifferential data: mass = vol(C_k),
// cell_moment = m(C_k)
struct AtomicMeasure {
    struct Atom {
        Vec x;
        double mass = 0.0;
        Vec cell_moment;
    };
    int dim = 0;
    std::vector<Atom> atoms;

    double total_mass() const;
};

AtomicMeasure ma_atoms(const DualCellComplex& u);
AtomicMeasure ma_atoms(const MaxAffineFunction& v);

// discrete Monge-Ampere atoms of the convex envelope of the samples (n <= 2):
// per-node activity cells of the sample conjugate, exact for piecewise-linear
// samples. used by the grid pathway for determinant-class integrands
AtomicMeasure grid_envelope_atoms(const GridFunction& f);

struct ScalarWeight {
    std::function<double(const Vec&)> f;
    double support_radius = 0.0;
};

ScalarWeight radial_weight(const RadialDensity& d);

enum class Pathway { exact, grid };

struct ScalarResult {
    double value = 0.0;
    double error_estimate = 0.0;
    Pathway pathway = Pathway::exact;
    bool mollified = false;
};

struct VectorResult {
    Vec value;
    double error_estimate = 0.0;
    Pathway pathway = Pathway::exact;
    bool mollified = false;
};

// atom sums shared by the exact pathway and the dual-side operators (identical
// arithmetic: results agree bit-for-bit)
double atom_mass_sum(const AtomicMeasure& mu, const ScalarWeight& zeta);
Vec atom_moment_sum(const AtomicMeasure& mu, const ScalarWeight& zeta);
Vec atom_point_sum(const AtomicMeasure& mu, const ScalarWeight& zeta); // sum zeta(x_k) x_k mass_k

// exact pathway
ScalarResult ma_integrate(const MaxAffineFunction& v, const ScalarWeight& zeta);
VectorResult ma_integrate_vec(const MaxAffineFunction& v, const std::function<Vec(const Vec&)>& psi,
                              double support_radius);
VectorResult theta0_integrate(const MaxAffineFunction& v, const ScalarWeight& zeta);

// grid pathway: quadrature of weight * e_j(FD Hessian); routes non-smooth
// determinant-class integrands through the envelope atoms, other non-smooth
// inputs through one averaging pass (flagged in the result)
ScalarResult hess_j_scalar(const GridFunction& f, int j, const ScalarWeight& zeta);
VectorResult hess_j_x(const GridFunction& f, int j, const ScalarWeight& zeta);
VectorResult hess_j_grad(const GridFunction& f, int j, const ScalarWeight& zeta);

ScalarResult ma_integrate(const GridFunction& f, const ScalarWeight& zeta);
VectorResult ma_integrate_vec(const GridFunction& f, const std::function<Vec(const Vec&)>& psi,
                              double support_radius);
VectorResult theta0_integrate(const GridFunction& f, const ScalarWeight& zeta);

} // namespace convval
