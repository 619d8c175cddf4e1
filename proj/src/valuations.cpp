#include "convval/valuations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convval/reduce.hpp"

namespace convval {

namespace {

void require_alpha(const RadialDensity& d) {
    if (d.kind != DensityKind::alpha)
        throw std::invalid_argument("operator requires an alpha-kind density");
}

// j = n accepts xi-kind (admissible) or alpha-kind weights; j < n only alpha
void require_t_density(const RadialDensity& d, bool top_degree) {
    if (top_degree) {
        if (d.kind == DensityKind::xi && !d.admissible)
            throw std::invalid_argument("inadmissible xi density (xi(t) t must vanish at 0+)");
        return;
    }
    if (d.kind != DensityKind::alpha)
        throw std::invalid_argument("t-operators below the top degree require an alpha-kind density");
}

void require_j(int j, int n) {
    if (j < 0 || j > n) throw std::invalid_argument("degree index j out of [0, n]");
}

// weight x -> xi(|x|) x extended by zero at the origin
std::function<Vec(const Vec&)> guarded_psi(const RadialDensity& d) {
    RadialDensity copy = d;
    return [copy](const Vec& x) {
        double t = norm(x);
        if (t == 0.0) return zero_vec(x.n);
        return x * copy(t);
    };
}

Vec atom_psi_sum(const AtomicMeasure& mu, const std::function<Vec(const Vec&)>& psi) {
    Vec out = zero_vec(mu.dim);
    std::vector<double> terms(mu.atoms.size());
    for (int c = 0; c < mu.dim; ++c) {
        for (size_t k = 0; k < mu.atoms.size(); ++k)
            terms[k] = psi(mu.atoms[k].x).a[c] * mu.atoms[k].mass;
        out.a[c] = pairwise_sum(terms.data(), terms.size());
    }
    return out;
}

bool coarsenable(const GridFunction& f) {
    for (int a = 0; a < f.dim; ++a)
        if (f.res[a] < 5 || f.res[a] % 2 == 0) return false;
    return true;
}

// Riemann sum of F(x, grad_h u) over interior nodes (dual-side integrals have
// no Hessian factor; the box is the effective-domain restriction)
Vec dual_grid_sums(const GridFunction& u, const std::function<Vec(const Vec&, const Vec&)>& F) {
    int n = u.dim;
    double h[3] = {0, 0, 0};
    size_t stride[3] = {0, 0, 0};
    size_t nin[3] = {1, 1, 1};
    double cellvol = 1.0;
    for (int a = 0; a < n; ++a) {
        h[a] = u.h(a);
        cellvol *= h[a];
        nin[a] = static_cast<size_t>(u.res[a] - 2);
    }
    stride[n - 1] = 1;
    for (int a = n - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<size_t>(u.res[a + 1]);
    size_t count = nin[0] * nin[1] * nin[2];
    std::vector<std::vector<double>> contrib(static_cast<size_t>(n));
    for (auto& c : contrib) c.assign(count, 0.0);
    const double* V = u.values.data();
    parallel_for(count, [&](size_t t) {
        size_t rest = t;
        int mi[3] = {0, 0, 0};
        for (int a = n - 1; a >= 0; --a) {
            mi[a] = static_cast<int>(rest % nin[a]) + 1;
            rest /= nin[a];
        }
        size_t idx = 0;
        Vec x = zero_vec(n);
        for (int a = 0; a < n; ++a) {
            idx += static_cast<size_t>(mi[a]) * stride[a];
            x.a[a] = u.node(a, mi[a]);
        }
        Vec g = zero_vec(n);
        for (int a = 0; a < n; ++a)
            g.a[a] = (V[idx + stride[a]] - V[idx - stride[a]]) / (2.0 * h[a]);
        Vec val = F(x, g);
        for (int c = 0; c < n; ++c) contrib[static_cast<size_t>(c)][t] = val.a[c] * cellvol;
    });
    Vec out = zero_vec(n);
    for (int c = 0; c < n; ++c)
        out.a[c] = pairwise_sum(contrib[static_cast<size_t>(c)].data(), count);
    return out;
}

VectorResult dual_grid_integrate(const GridFunction& u,
                                 const std::function<Vec(const Vec&, const Vec&)>& F) {
    VectorResult r;
    r.value = dual_grid_sums(u, F);
    r.pathway = Pathway::grid;
    if (coarsenable(u)) {
        Vec coarse = dual_grid_sums(coarsen(u), F);
        r.error_estimate = 1.5 * norm(r.value - coarse) + 1e-14 * (1.0 + norm(r.value));
    } else {
        r.error_estimate = 0.5 * (1.0 + norm(r.value));
    }
    return r;
}

// least-squares polynomial fit with a 1-norm condition estimate and per-power
// amplification factors (row sums of the pseudo-inverse), used to budget how
// much sample error can leak into each coefficient
struct PolyFit {
    std::vector<std::vector<double>> coef; // [component][power]
    double residual = 0.0;
    double condition = 0.0;
    std::vector<double> amp;
};

PolyFit poly_fit(const std::vector<double>& rs, const std::vector<std::vector<double>>& ys,
                 int degree) {
    size_t m = rs.size();
    int p = degree + 1;
    size_t comps = ys.size();
    std::vector<double> Vm(m * static_cast<size_t>(p));
    for (size_t i = 0; i < m; ++i) {
        double pw = 1.0;
        for (int k = 0; k < p; ++k) {
            Vm[i * static_cast<size_t>(p) + static_cast<size_t>(k)] = pw;
            pw *= rs[i];
        }
    }
    std::vector<double> G(static_cast<size_t>(p) * static_cast<size_t>(p), 0.0);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) {
            double s = 0.0;
            for (size_t i = 0; i < m; ++i)
                s += Vm[i * static_cast<size_t>(p) + static_cast<size_t>(a)] *
                     Vm[i * static_cast<size_t>(p) + static_cast<size_t>(b)];
            G[static_cast<size_t>(a * p + b)] = s;
        }

    PolyFit fit;
    fit.coef.assign(comps, std::vector<double>(static_cast<size_t>(p), 0.0));
    for (size_t c = 0; c < comps; ++c) {
        std::vector<double> A = G;
        std::vector<double> rhs(static_cast<size_t>(p), 0.0);
        for (int k = 0; k < p; ++k) {
            double s = 0.0;
            for (size_t i = 0; i < m; ++i)
                s += Vm[i * static_cast<size_t>(p) + static_cast<size_t>(k)] * ys[c][i];
            rhs[static_cast<size_t>(k)] = s;
        }
        if (!gauss_solve(A, rhs, p)) throw std::invalid_argument("singular polynomial fit");
        fit.coef[c] = rhs;
    }

    // residual: worst sample misfit across components
    for (size_t i = 0; i < m; ++i) {
        double d2 = 0.0;
        for (size_t c = 0; c < comps; ++c) {
            double pred = 0.0;
            for (int k = p - 1; k >= 0; --k) pred = pred * rs[i] + fit.coef[c][static_cast<size_t>(k)];
            double d = pred - ys[c][i];
            d2 += d * d;
        }
        fit.residual = std::max(fit.residual, std::sqrt(d2));
    }

    // inverse of the normal matrix for condition and amplification
    std::vector<double> Ginv(static_cast<size_t>(p) * static_cast<size_t>(p), 0.0);
    for (int col = 0; col < p; ++col) {
        std::vector<double> A = G;
        std::vector<double> e(static_cast<size_t>(p), 0.0);
        e[static_cast<size_t>(col)] = 1.0;
        if (!gauss_solve(A, e, p)) throw std::invalid_argument("singular polynomial fit");
        for (int r = 0; r < p; ++r) Ginv[static_cast<size_t>(r * p + col)] = e[static_cast<size_t>(r)];
    }
    double g1 = 0.0, gi1 = 0.0;
    for (int col = 0; col < p; ++col) {
        double s = 0.0, si = 0.0;
        for (int r = 0; r < p; ++r) {
            s += std::abs(G[static_cast<size_t>(r * p + col)]);
            si += std::abs(Ginv[static_cast<size_t>(r * p + col)]);
        }
        g1 = std::max(g1, s);
        gi1 = std::max(gi1, si);
    }
    fit.condition = g1 * gi1;
    fit.amp.assign(static_cast<size_t>(p), 0.0);
    for (int k = 0; k < p; ++k) {
        double s = 0.0;
        for (size_t i = 0; i < m; ++i) {
            double pik = 0.0;
            for (int r = 0; r < p; ++r)
                pik += Ginv[static_cast<size_t>(k * p + r)] *
                       Vm[i * static_cast<size_t>(p) + static_cast<size_t>(r)];
            s += std::abs(pik);
        }
        fit.amp[static_cast<size_t>(k)] = s;
    }
    return fit;
}

void check_r_values(const std::vector<double>& rs, int n) {
    if (static_cast<int>(rs.size()) < n + 2)
        throw std::invalid_argument("need at least n+2 expansion radii");
    for (size_t i = 0; i < rs.size(); ++i) {
        if (!(rs[i] >= 0.0)) throw std::invalid_argument("expansion radii must be >= 0");
        for (size_t j = i + 1; j < rs.size(); ++j)
            if (std::abs(rs[i] - rs[j]) <= 1e-12)
                throw std::invalid_argument("expansion radii must be distinct");
    }
}

} // namespace

VectorResult m_alpha_star(const MaxAffineFunction& v, const RadialDensity& alpha) {
    require_alpha(alpha);
    return theta0_integrate(v, radial_weight(alpha));
}

VectorResult m_alpha_star(const GridFunction& f, const RadialDensity& alpha) {
    require_alpha(alpha);
    return theta0_integrate(f, radial_weight(alpha));
}

VectorResult t_j_xi_star(const MaxAffineFunction& v, const RadialDensity& density, int j) {
    require_j(j, v.dim);
    if (j != v.dim)
        throw std::invalid_argument("exact pathway covers the determinant class (j = n) only");
    require_t_density(density, true);
    AtomicMeasure mu = ma_atoms(v);
    VectorResult r;
    r.value = atom_psi_sum(mu, guarded_psi(density));
    r.error_estimate = 1e-14 * (1.0 + norm(r.value));
    r.pathway = Pathway::exact;
    return r;
}

VectorResult t_j_xi_star(const GridFunction& f, const RadialDensity& density, int j) {
    require_j(j, f.dim);
    require_t_density(density, j == f.dim);
    if (j == f.dim) return ma_integrate_vec(f, guarded_psi(density), density.support_radius);
    return hess_j_x(f, j, radial_weight(density));
}

VectorResult z_j_alpha_star(const MaxAffineFunction& v, const RadialDensity& alpha, int j) {
    require_j(j, v.dim);
    if (j != v.dim)
        throw std::invalid_argument("exact pathway covers the determinant class (j = n) only");
    return m_alpha_star(v, alpha);
}

VectorResult z_j_alpha_star(const GridFunction& f, const RadialDensity& alpha, int j) {
    require_alpha(alpha);
    require_j(j, f.dim);
    return hess_j_grad(f, j, radial_weight(alpha));
}

ScalarResult V_j_alpha_star(const MaxAffineFunction& v, const RadialDensity& alpha, int j) {
    require_alpha(alpha);
    require_j(j, v.dim);
    if (j != v.dim)
        throw std::invalid_argument("exact pathway covers the determinant class (j = n) only");
    AtomicMeasure mu = ma_atoms(v);
    ScalarResult r;
    r.value = atom_mass_sum(mu, radial_weight(alpha));
    r.error_estimate = 1e-14 * (1.0 + std::abs(r.value));
    r.pathway = Pathway::exact;
    return r;
}

ScalarResult V_j_alpha_star(const GridFunction& f, const RadialDensity& alpha, int j) {
    require_alpha(alpha);
    require_j(j, f.dim);
    return hess_j_scalar(f, j, radial_weight(alpha));
}

VectorResult dual_m_alpha(const DualCellComplex& u, const RadialDensity& alpha) {
    require_alpha(alpha);
    VectorResult r;
    r.value = atom_moment_sum(ma_atoms(u), radial_weight(alpha));
    r.error_estimate = 1e-14 * (1.0 + norm(r.value));
    r.pathway = Pathway::exact;
    return r;
}

VectorResult dual_t_n_xi(const DualCellComplex& u, const RadialDensity& density) {
    require_t_density(density, true);
    VectorResult r;
    r.value = atom_psi_sum(ma_atoms(u), guarded_psi(density));
    r.error_estimate = 1e-14 * (1.0 + norm(r.value));
    r.pathway = Pathway::exact;
    return r;
}

VectorResult dual_m_alpha(const GridFunction& u, const RadialDensity& alpha) {
    require_alpha(alpha);
    RadialDensity d = alpha;
    return dual_grid_integrate(
        u, [d](const Vec& x, const Vec& g) { return x * d(norm(g)); });
}

VectorResult dual_t_n_xi(const GridFunction& u, const RadialDensity& density) {
    require_t_density(density, true);
    auto psi = guarded_psi(density);
    return dual_grid_integrate(u, [psi](const Vec&, const Vec& g) { return psi(g); });
}

MaxAffineFunction dual_representation(const DualCellComplex& u) {
    if (u.cells.empty())
        throw std::invalid_argument("dual representation needs a full-dimensional domain");
    std::vector<MaxAffineFunction::Piece> pieces;
    pieces.reserve(u.cells.size());
    for (const auto& c : u.cells) pieces.push_back({c.x, -c.value});
    return make_max_affine(u.dim, pieces);
}

VectorResult so2_variant(const DualCellComplex& u, const RadialDensity& density,
                         const std::function<Mat(double)>& phi) {
    if (u.dim != 2) throw std::invalid_argument("rotation-field variant is planar only");
    require_t_density(density, true);
    AtomicMeasure mu = ma_atoms(u);
    VectorResult r;
    r.value = zero_vec(2);
    std::vector<double> terms(mu.atoms.size());
    for (int c = 0; c < 2; ++c) {
        for (size_t k = 0; k < mu.atoms.size(); ++k) {
            double t = norm(mu.atoms[k].x);
            if (t == 0.0) {
                terms[k] = 0.0;
                continue;
            }
            Vec rotated = apply(phi(t), mu.atoms[k].x);
            terms[k] = density(t) * rotated.a[c] * mu.atoms[k].mass;
        }
        r.value.a[c] = pairwise_sum(terms.data(), terms.size());
    }
    r.error_estimate = 1e-14 * (1.0 + norm(r.value));
    r.pathway = Pathway::exact;
    return r;
}

std::vector<double> default_r_values(int dim) {
    std::vector<double> rs;
    for (int k = 0; k <= dim + 3; ++k) rs.push_back(0.25 * k);
    return rs;
}

SteinerExpansion steiner_expand(const GridFunction& v, const RadialDensity& alpha,
                                const std::vector<double>& r_values) {
    require_alpha(alpha);
    int n = v.dim;
    check_r_values(r_values, n);

    SteinerExpansion ex;
    ex.dim = n;
    ex.degree = n + 1;
    ex.r_values = r_values;

    std::vector<std::vector<double>> ys(static_cast<size_t>(n),
                                        std::vector<double>(r_values.size(), 0.0));
    double max_sample_est = 0.0;
    for (size_t i = 0; i < r_values.size(); ++i) {
        GridFunction vr = grid_add_quadratic(v, r_values[i]);
        VectorResult s = m_alpha_star(vr, alpha);
        ex.samples.push_back(s.value);
        max_sample_est = std::max(max_sample_est, s.error_estimate);
        for (int c = 0; c < n; ++c) ys[static_cast<size_t>(c)][i] = s.value.a[c];
    }

    PolyFit fit = poly_fit(r_values, ys, n + 1);
    ex.fit_residual = fit.residual;
    ex.condition = fit.condition;
    ex.ill_conditioned = fit.condition > 1e12;
    for (int k = 0; k <= n + 1; ++k) {
        Vec c = zero_vec(n);
        for (int comp = 0; comp < n; ++comp)
            c.a[comp] = fit.coef[static_cast<size_t>(comp)][static_cast<size_t>(k)];
        ex.coefficients.push_back(c);
    }

    for (int k = 0; k <= n + 1; ++k) {
        SteinerExpansion::Part part;
        part.power = k;
        part.total = zero_vec(n);
        double part_est = 0.0;
        if (k <= n) {
            part.has_z = true;
            part.z_part = z_j_alpha_star(v, alpha, n - k);
            part.total += part.z_part.value;
            part_est += part.z_part.error_estimate;
        }
        if (k >= 1) {
            part.has_t = true;
            part.t_part = t_j_xi_star(v, alpha, n - k + 1);
            part.total += part.t_part.value;
            part_est += part.t_part.error_estimate;
        }
        part.budget = fit.amp[static_cast<size_t>(k)] * max_sample_est + ex.fit_residual +
                      part_est + 1e-12 * (1.0 + norm(ex.coefficients[static_cast<size_t>(k)]));
        ex.attributed.push_back(part);
        ex.cross_residual.push_back(norm(ex.coefficients[static_cast<size_t>(k)] - part.total));
    }
    return ex;
}

VSteinerExpansion steiner_expand_vtype(const GridFunction& v, const RadialDensity& alpha,
                                       const std::vector<double>& r_values) {
    require_alpha(alpha);
    int n = v.dim;
    check_r_values(r_values, n);
    std::vector<std::vector<double>> ys(1, std::vector<double>(r_values.size(), 0.0));
    for (size_t i = 0; i < r_values.size(); ++i) {
        GridFunction vr = grid_add_quadratic(v, r_values[i]);
        ys[0][i] = V_j_alpha_star(vr, alpha, n).value;
    }
    PolyFit fit = poly_fit(r_values, ys, n);
    VSteinerExpansion ex;
    ex.dim = n;
    ex.coefficients = fit.coef[0];
    ex.fit_residual = fit.residual;
    ex.condition = fit.condition;
    return ex;
}

} // namespace convval
