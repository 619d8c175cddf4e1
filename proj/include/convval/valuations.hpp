#pragma once
#include <functional>
#include <vector>

#include "convval/measures.hpp"
#include "convval/radial_density.hpp"

namespace convval {

// functional intrinsic moment of top degree: integral of alpha(|x|) grad v
// against det(Hess v); exact pathway sums weighted cell moments
VectorResult m_alpha_star(const MaxAffineFunction& v, const RadialDensity& alpha);
VectorResult m_alpha_star(const GridFunction& f, const RadialDensity& alpha);

// functional Minkowski vectors: integral of weight(|x|) x against the j-th
// Hessian class; j = n takes xi-kind (admissible) or alpha-kind densities,
// j < n takes alpha only
VectorResult t_j_xi_star(const MaxAffineFunction& v, const RadialDensity& density, int j);
VectorResult t_j_xi_star(const GridFunction& f, const RadialDensity& density, int j);

// functional intrinsic moments of intermediate degree: alpha(|x|) grad v
// against the j-th Hessian class; j = n delegates to m_alpha_star
VectorResult z_j_alpha_star(const MaxAffineFunction& v, const RadialDensity& alpha, int j);
VectorResult z_j_alpha_star(const GridFunction& f, const RadialDensity& alpha, int j);

// functional intrinsic volumes: alpha(|x|) against the j-th Hessian class
ScalarResult V_j_alpha_star(const MaxAffineFunction& v, const RadialDensity& alpha, int j);
ScalarResult V_j_alpha_star(const GridFunction& f, const RadialDensity& alpha, int j);

// dual-side forms on the conjugate function u: integrals of weight(|grad u|)
// over dom u; the complex overloads share the atom sums with the primal exact
// pathway and agree with it bit-for-bit
VectorResult dual_m_alpha(const DualCellComplex& u, const RadialDensity& alpha);
VectorResult dual_t_n_xi(const DualCellComplex& u, const RadialDensity& density);
VectorResult dual_m_alpha(const GridFunction& u, const RadialDensity& alpha);
VectorResult dual_t_n_xi(const GridFunction& u, const RadialDensity& density);

// max-affine representation of the dual function (pieces <x_k, .> - value_k),
// for sampling u on its domain box
MaxAffineFunction dual_representation(const DualCellComplex& u);

// rotation-field variant in the plane: sum of xi(|x_k|) Phi(|x_k|) x_k vol(C_k)
VectorResult so2_variant(const DualCellComplex& u, const RadialDensity& density,
                         const std::function<Mat(double)>& phi);

// Steiner-type expansion of r -> m_alpha_star(v + r q): least-squares fit of a
// degree-(n+1) vector polynomial, with each coefficient attributed to the
// moment part (exponent n-j) and Minkowski part (exponent n-j+1) it aggregates
struct SteinerExpansion {
    int dim = 0;
    int degree = 0; // n + 1
    std::vector<Vec> coefficients; // c_0 .. c_{n+1}
    double fit_residual = 0.0;
    double condition = 0.0;
    bool ill_conditioned = false;
    struct Part {
        int power = 0;
        bool has_z = false;
        bool has_t = false;
        VectorResult z_part;
        VectorResult t_part;
        Vec total;
        double budget = 0.0; // bound on |c_k - total| from fit + quadrature
    };
    std::vector<Part> attributed;
    std::vector<double> cross_residual;
    std::vector<double> r_values;
    std::vector<Vec> samples;
};

SteinerExpansion steiner_expand(const GridFunction& v, const RadialDensity& alpha,
                                const std::vector<double>& r_values);

std::vector<double> default_r_values(int dim);

// scalar expansion of r -> V-type top integral of v + r q; the coefficient of
// r^n is the degree-0 functional intrinsic volume, independent of v
struct VSteinerExpansion {
    int dim = 0;
    std::vector<double> coefficients; // c_0 .. c_n
    double fit_residual = 0.0;
    double condition = 0.0;
};

VSteinerExpansion steiner_expand_vtype(const GridFunction& v, const RadialDensity& alpha,
                                       const std::vector<double>& r_values);

} // namespace convval
