#include "convval/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "convval/reduce.hpp"

namespace convval {

namespace {

constexpr double kResultFloor = 1e-14;

double box_h(const GridFunction& f, int a) { return f.h(a); }

// weight support must sit strictly inside the box with one-cell margin so the
// interior-node quadrature sees all of it
void check_coverage(const GridFunction& f, double support_radius) {
    for (int a = 0; a < f.dim; ++a) {
        double ha = box_h(f, a);
        if (!(-f.lo[a] >= support_radius + ha) || !(f.hi[a] >= support_radius + ha))
            throw std::domain_error("weight support is not strictly inside the grid box");
    }
}

// ---- envelope atoms ----

double shoelace_area(const std::vector<Vec>& poly) {
    size_t m = poly.size();
    if (m < 3) return 0.0;
    std::vector<double> terms(m);
    for (size_t i = 0; i < m; ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % m];
        terms[i] = p.a[0] * q.a[1] - q.a[0] * p.a[1];
    }
    return 0.5 * pairwise_sum(terms.data(), terms.size());
}

Vec shoelace_moment(const std::vector<Vec>& poly) {
    size_t m = poly.size();
    Vec out = zero_vec(2);
    if (m < 3) return out;
    std::vector<double> tx(m), ty(m);
    for (size_t i = 0; i < m; ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % m];
        double w = p.a[0] * q.a[1] - q.a[0] * p.a[1];
        tx[i] = (p.a[0] + q.a[0]) * w;
        ty[i] = (p.a[1] + q.a[1]) * w;
    }
    out.a[0] = pairwise_sum(tx.data(), m) / 6.0;
    out.a[1] = pairwise_sum(ty.data(), m) / 6.0;
    return out;
}

// keep the part of a ccw polygon with <p, nrm> <= c; reports whether it cut
bool clip_halfplane(std::vector<Vec>& poly, const Vec& nrm, double c, double eps) {
    size_t m = poly.size();
    if (m == 0) return false;
    bool all_inside = true;
    for (const Vec& p : poly)
        if (dot(p, nrm) - c > eps) { all_inside = false; break; }
    if (all_inside) return false;
    std::vector<Vec> out;
    out.reserve(m + 2);
    for (size_t i = 0; i < m; ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % m];
        double dp = dot(p, nrm) - c;
        double dq = dot(q, nrm) - c;
        if (dp <= eps) out.push_back(p);
        if ((dp <= eps) != (dq <= eps)) {
            double t = dp / (dp - dq);
            Vec s = p + (q - p) * t;
            out.push_back(s);
        }
    }
    poly = std::move(out);
    return true;
}

AtomicMeasure envelope_atoms_1d(const GridFunction& f) {
    AtomicMeasure mu;
    mu.dim = 1;
    int n = f.res[0];
    double h = box_h(f, 0);
    std::vector<double> d(n - 1);
    double gscale = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        d[i] = (f.values[i + 1] - f.values[i]) / h;
        gscale = std::max(gscale, std::abs(d[i]));
    }
    double tol = 1e-12 * std::max(1.0, gscale);
    for (int i = 1; i + 1 < n; ++i) {
        double mass = d[i] - d[i - 1];
        if (mass <= tol) continue;
        AtomicMeasure::Atom atom;
        atom.x = vec1(f.node(0, i));
        atom.mass = mass;
        atom.cell_moment = vec1(0.5 * (d[i] * d[i] - d[i - 1] * d[i - 1]));
        mu.atoms.push_back(atom);
    }
    return mu;
}

AtomicMeasure envelope_atoms_2d(const GridFunction& f) {
    AtomicMeasure mu;
    mu.dim = 2;
    int n0 = f.res[0];
    int n1 = f.res[1];
    double scale = f.value_scale();
    double flat_tol = 1e-11 * std::max(1.0, scale);

    // slope bound for the starting square in the dual plane
    double gmax = 0.0;
    for (int a = 0; a < 2; ++a) {
        double ha = box_h(f, a);
        int s0 = (a == 0) ? 1 : 0;
        int s1 = (a == 1) ? 1 : 0;
        for (int i = 0; i + s0 < n0; ++i)
            for (int j = 0; j + s1 < n1; ++j)
                gmax = std::max(gmax, std::abs(f.at(i + s0, j + s1) - f.at(i, j)) / ha);
    }
    double big = 1.05 * gmax + 1e-9;
    double sliver_tol = 1e-10 * (2.0 * big) * (2.0 * big);

    // competitors: boundary nodes plus interior nodes that are not star-flat
    struct Node {
        Vec x;
        double v;
        bool piece;
    };
    std::vector<Node> nodes;
    nodes.reserve(static_cast<size_t>(n0) * 4);
    static const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
            bool boundary = (i == 0 || j == 0 || i == n0 - 1 || j == n1 - 1);
            bool flat = false;
            if (!boundary) {
                flat = true;
                for (auto& d : dirs) {
                    double s = f.at(i + d[0], j + d[1]) - 2.0 * f.at(i, j) + f.at(i - d[0], j - d[1]);
                    if (std::abs(s) > flat_tol) { flat = false; break; }
                }
            }
            if (boundary || !flat)
                nodes.push_back({vec2(f.node(0, i), f.node(1, j)), f.at(i, j), !boundary});
        }
    }

    // clip the nearest constraints first so the polygon is nearly final when
    // the far ones get their cheap inside-test pass; a full per-node sort is
    // quadratic-by-log and dominates on densely curved inputs
    const size_t kNear = 24;
    std::vector<size_t> order(nodes.size());
    std::vector<double> dist2(nodes.size());
    std::vector<char> done(nodes.size());
    std::vector<Vec> poly;
    auto clip_node = [&](std::vector<Vec>& p, size_t k, size_t j) {
        Vec nrm = nodes[j].x - nodes[k].x;
        double c = nodes[j].v - nodes[k].v;
        double eps = 1e-13 * std::max({1.0, std::abs(c), big * norm(nrm)});
        return clip_halfplane(p, nrm, c, eps);
    };
    for (size_t k = 0; k < nodes.size(); ++k) {
        if (!nodes[k].piece) continue;
        const Vec xk = nodes[k].x;
        for (size_t j = 0; j < nodes.size(); ++j) {
            order[j] = j;
            dist2[j] = norm2(nodes[j].x - xk);
            done[j] = 0;
        }
        size_t nn = std::min(kNear, nodes.size() > 0 ? nodes.size() - 1 : size_t(0));
        std::partial_sort(order.begin(), order.begin() + static_cast<long>(nn) + 1, order.end(),
                          [&](size_t a, size_t b) { return dist2[a] < dist2[b]; });
        poly = {vec2(-big, -big), vec2(big, -big), vec2(big, big), vec2(-big, big)};
        for (size_t oi = 0; oi <= nn && poly.size() >= 3; ++oi) {
            size_t j = order[oi];
            done[j] = 1;
            if (j == k) continue;
            clip_node(poly, k, j);
        }
        // a far plane can only cut the cell if it reaches inside the cell's
        // bounding circle, which one dot product decides
        Vec center = zero_vec(2);
        double r2 = 0.0;
        bool bound_ok = false;
        auto rebound = [&]() {
            center = zero_vec(2);
            for (const Vec& p : poly) center = center + p;
            center = center * (1.0 / static_cast<double>(poly.size()));
            r2 = 0.0;
            for (const Vec& p : poly) r2 = std::max(r2, norm2(p - center));
            bound_ok = true;
        };
        if (poly.size() >= 3) rebound();
        const double vk = nodes[k].v;
        for (size_t j = 0; j < nodes.size() && poly.size() >= 3; ++j) {
            if (done[j] || j == k) continue;
            if (bound_ok) {
                Vec nrm = nodes[j].x - xk;
                double gap = nodes[j].v - vk - dot(center, nrm);
                if (gap > 0.0 && gap * gap > r2 * dist2[j] * (1.0 + 1e-9) + 1e-30) continue;
            }
            if (clip_node(poly, k, j) && poly.size() >= 3) rebound();
        }
        double area = shoelace_area(poly);
        if (area <= sliver_tol) continue;
        AtomicMeasure::Atom atom;
        atom.x = xk;
        atom.mass = area;
        atom.cell_moment = shoelace_moment(poly);
        mu.atoms.push_back(atom);
    }
    return mu;
}

// ---- finite-difference quadrature ----

enum class FdKind { scalar, vec_of_x, gradient };

struct FdWeight {
    FdKind kind = FdKind::scalar;
    const std::function<double(const Vec&)>* zeta = nullptr;
    const std::function<Vec(const Vec&)>* psi = nullptr;
};

struct Route {
    bool use_atoms = false;
    bool mollify = false;
};

Route choose_route(const GridFunction& f, int j) {
    // raw differencing is kept for smooth samples (exact on quadratics, which
    // the expansion fits rely on); anything kinked diverges through the mixed
    // FD terms in the top class, where the interpolant's facet measure is
    // robust whether or not the input is piecewise linear
    if (looks_smooth(f)) return {false, false};
    if (j == f.dim && f.dim <= 2) return {true, false};
    return {false, j >= 1};
}

// sum of weight(x) * e_j(FD Hessian) * cell volume over interior nodes, fixed
// order, pairwise reduction per component
void fd_sums(const GridFunction& g, int j, const FdWeight& w, int out_dim, double* out) {
    int n = g.dim;
    double h[3] = {0, 0, 0};
    size_t stride[3] = {0, 0, 0};
    size_t nin[3] = {1, 1, 1};
    double cellvol = 1.0;
    for (int a = 0; a < n; ++a) {
        h[a] = box_h(g, a);
        cellvol *= h[a];
        nin[a] = static_cast<size_t>(g.res[a] - 2);
    }
    stride[n - 1] = 1;
    for (int a = n - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<size_t>(g.res[a + 1]);
    size_t count = nin[0] * nin[1] * nin[2];
    std::vector<std::vector<double>> contrib(static_cast<size_t>(out_dim));
    for (auto& c : contrib) c.assign(count, 0.0);
    const double* V = g.values.data();

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
            x.a[a] = g.node(a, mi[a]);
        }
        double wscalar = 0.0;
        Vec wvec = zero_vec(n);
        if (w.kind == FdKind::vec_of_x) {
            wvec = (*w.psi)(x);
            if (norm_inf(wvec) == 0.0) return;
        } else {
            wscalar = (*w.zeta)(x);
            if (wscalar == 0.0) return;
        }
        Mat hess(n);
        for (int a = 0; a < n; ++a) {
            hess.m[a][a] =
                (V[idx + stride[a]] - 2.0 * V[idx] + V[idx - stride[a]]) / (h[a] * h[a]);
            for (int b = a + 1; b < n; ++b) {
                double v = (V[idx + stride[a] + stride[b]] - V[idx + stride[a] - stride[b]] -
                            V[idx - stride[a] + stride[b]] + V[idx - stride[a] - stride[b]]) /
                           (4.0 * h[a] * h[b]);
                hess.m[a][b] = v;
                hess.m[b][a] = v;
            }
        }
        double ej = elem_sym(hess, j);
        double base = ej * cellvol;
        switch (w.kind) {
        case FdKind::scalar:
            contrib[0][t] = wscalar * base;
            break;
        case FdKind::vec_of_x:
            for (int c = 0; c < n; ++c) contrib[static_cast<size_t>(c)][t] = wvec.a[c] * base;
            break;
        case FdKind::gradient: {
            for (int c = 0; c < n; ++c) {
                double gc = (V[idx + stride[c]] - V[idx - stride[c]]) / (2.0 * h[c]);
                contrib[static_cast<size_t>(c)][t] = wscalar * gc * base;
            }
            break;
        }
        }
    });

    for (int c = 0; c < out_dim; ++c)
        out[c] = pairwise_sum(contrib[static_cast<size_t>(c)].data(), count);
}

bool coarsenable(const GridFunction& f) {
    for (int a = 0; a < f.dim; ++a)
        if (f.res[a] < 5 || f.res[a] % 2 == 0) return false;
    return true;
}

void run_grid(const GridFunction& f, int j, const FdWeight& w, const Route& route, int out_dim,
              double* out) {
    if (route.use_atoms) {
        AtomicMeasure mu = grid_envelope_atoms(f);
        std::vector<double> terms(mu.atoms.size());
        for (int c = 0; c < out_dim; ++c) {
            for (size_t k = 0; k < mu.atoms.size(); ++k) {
                const auto& atom = mu.atoms[k];
                double factor;
                switch (w.kind) {
                case FdKind::scalar:
                    factor = (*w.zeta)(atom.x) * atom.mass;
                    break;
                case FdKind::vec_of_x:
                    factor = (*w.psi)(atom.x).a[c] * atom.mass;
                    break;
                default: // gradient against the determinant class: cell moment
                    factor = (*w.zeta)(atom.x) * atom.cell_moment.a[c];
                    break;
                }
                terms[k] = factor;
            }
            out[c] = pairwise_sum(terms.data(), terms.size());
        }
        return;
    }
    if (route.mollify) {
        GridFunction m = mollify(f);
        fd_sums(m, j, w, out_dim, out);
    } else {
        fd_sums(f, j, w, out_dim, out);
    }
}

// atoms sit on subdivision vertices, displaced from the true support points
// by up to about one cell diagonal; bound the resulting weight error by
// probing the per-atom factor one step away in each direction
double atoms_quantization_term(const GridFunction& f, const FdWeight& w, int out_dim) {
    AtomicMeasure mu = grid_envelope_atoms(f);
    double hmax = 0.0;
    for (int a = 0; a < f.dim; ++a) hmax = std::max(hmax, box_h(f, a));
    double total = 0.0;
    for (const auto& atom : mu.atoms) {
        double dev = 0.0;
        for (int a = 0; a < f.dim; ++a) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                Vec p = atom.x;
                p.a[a] += sgn * hmax;
                for (int c = 0; c < out_dim; ++c) {
                    double df;
                    switch (w.kind) {
                    case FdKind::scalar:
                        df = ((*w.zeta)(p) - (*w.zeta)(atom.x)) * atom.mass;
                        break;
                    case FdKind::vec_of_x:
                        df = ((*w.psi)(p).a[c] - (*w.psi)(atom.x).a[c]) * atom.mass;
                        break;
                    default:
                        df = ((*w.zeta)(p) - (*w.zeta)(atom.x)) * atom.cell_moment.a[c];
                        break;
                    }
                    dev = std::max(dev, std::abs(df));
                }
            }
        }
        total += dev;
    }
    return std::sqrt(static_cast<double>(f.dim)) * total;
}

// two-resolution comparison on the same route; the coarse run subsamples the
// raw values so both runs see the same underlying function.  quantization
// error is not monotone in h, so a second coarsening level guards against the
// two finest runs agreeing by coincidence
double grid_estimate(const GridFunction& f, int j, const FdWeight& w, const Route& route,
                     int out_dim, const double* fine) {
    double nf = 0.0;
    for (int c = 0; c < out_dim; ++c) nf += fine[c] * fine[c];
    nf = std::sqrt(nf);
    if (!coarsenable(f)) return 0.5 * (1.0 + nf);
    GridFunction c1 = coarsen(f);
    double coarse[3] = {0, 0, 0};
    run_grid(c1, j, w, route, out_dim, coarse);
    double d2 = 0.0;
    for (int k = 0; k < out_dim; ++k) d2 += (fine[k] - coarse[k]) * (fine[k] - coarse[k]);
    double spread = std::sqrt(d2);
    if (coarsenable(c1)) {
        GridFunction c2 = coarsen(c1);
        double coarser[3] = {0, 0, 0};
        run_grid(c2, j, w, route, out_dim, coarser);
        double e2 = 0.0;
        for (int k = 0; k < out_dim; ++k)
            e2 += (coarse[k] - coarser[k]) * (coarse[k] - coarser[k]);
        spread = std::max(spread, 0.5 * std::sqrt(e2));
    }
    double est = 1.5 * spread + kResultFloor * (1.0 + nf);
    if (route.use_atoms) est += atoms_quantization_term(f, w, out_dim);
    return est;
}

void validate_j(const GridFunction& f, int j) {
    if (j < 0 || j > f.dim) throw std::invalid_argument("hessian class index out of range");
}

} // namespace

double AtomicMeasure::total_mass() const {
    std::vector<double> m(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i) m[i] = atoms[i].mass;
    return pairwise_sum(m.data(), m.size());
}

AtomicMeasure ma_atoms(const DualCellComplex& u) {
    AtomicMeasure mu;
    mu.dim = u.dim;
    for (const auto& c : u.cells) {
        AtomicMeasure::Atom atom;
        atom.x = c.x;
        atom.mass = volume(c.cell);
        atom.cell_moment = moment_vector(c.cell);
        if (atom.mass <= 0.0) continue;
        mu.atoms.push_back(atom);
    }
    return mu;
}

AtomicMeasure ma_atoms(const MaxAffineFunction& v) { return ma_atoms(conjugate_max_affine(v)); }

namespace {

// the same sampled function is hit by several operators plus the two-level
// estimate, so memoize per thread; keyed by grid metadata and a value hash
struct AtomsCacheEntry {
    bool valid = false;
    uint64_t key = 0;
    int dim = 0;
    std::array<int, 3> res{};
    AtomicMeasure mu;
};

uint64_t atoms_cache_key(const GridFunction& f) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* p, size_t n) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    mix(&f.dim, sizeof f.dim);
    mix(f.res.data(), sizeof f.res);
    mix(f.lo.data(), sizeof f.lo);
    mix(f.hi.data(), sizeof f.hi);
    mix(f.values.data(), f.values.size() * sizeof(double));
    return h;
}

} // namespace

AtomicMeasure grid_envelope_atoms(const GridFunction& f) {
    if (f.dim != 1 && f.dim != 2)
        throw std::invalid_argument("envelope atoms are implemented for dim <= 2");
    thread_local std::array<AtomsCacheEntry, 64> cache;
    thread_local size_t next_slot = 0;
    uint64_t key = atoms_cache_key(f);
    for (const auto& e : cache)
        if (e.valid && e.key == key && e.dim == f.dim && e.res == f.res) return e.mu;
    AtomicMeasure mu = f.dim == 1 ? envelope_atoms_1d(f) : envelope_atoms_2d(f);
    AtomsCacheEntry& slot = cache[next_slot];
    next_slot = (next_slot + 1) % cache.size();
    slot.valid = true;
    slot.key = key;
    slot.dim = f.dim;
    slot.res = f.res;
    slot.mu = mu;
    return mu;
}

ScalarWeight radial_weight(const RadialDensity& d) {
    ScalarWeight w;
    w.f = [d](const Vec& x) { return d(norm(x)); };
    w.support_radius = d.support_radius;
    return w;
}

double atom_mass_sum(const AtomicMeasure& mu, const ScalarWeight& zeta) {
    std::vector<double> terms(mu.atoms.size());
    for (size_t k = 0; k < mu.atoms.size(); ++k)
        terms[k] = zeta.f(mu.atoms[k].x) * mu.atoms[k].mass;
    return pairwise_sum(terms.data(), terms.size());
}

Vec atom_moment_sum(const AtomicMeasure& mu, const ScalarWeight& zeta) {
    Vec out = zero_vec(mu.dim);
    std::vector<double> terms(mu.atoms.size());
    for (int c = 0; c < mu.dim; ++c) {
        for (size_t k = 0; k < mu.atoms.size(); ++k)
            terms[k] = zeta.f(mu.atoms[k].x) * mu.atoms[k].cell_moment.a[c];
        out.a[c] = pairwise_sum(terms.data(), terms.size());
    }
    return out;
}

Vec atom_point_sum(const AtomicMeasure& mu, const ScalarWeight& zeta) {
    Vec out = zero_vec(mu.dim);
    std::vector<double> terms(mu.atoms.size());
    for (int c = 0; c < mu.dim; ++c) {
        for (size_t k = 0; k < mu.atoms.size(); ++k)
            terms[k] = zeta.f(mu.atoms[k].x) * mu.atoms[k].x.a[c] * mu.atoms[k].mass;
        out.a[c] = pairwise_sum(terms.data(), terms.size());
    }
    return out;
}

ScalarResult ma_integrate(const MaxAffineFunction& v, const ScalarWeight& zeta) {
    AtomicMeasure mu = ma_atoms(v);
    ScalarResult r;
    r.value = atom_mass_sum(mu, zeta);
    r.error_estimate = kResultFloor * (1.0 + std::abs(r.value));
    r.pathway = Pathway::exact;
    return r;
}

VectorResult ma_integrate_vec(const MaxAffineFunction& v, const std::function<Vec(const Vec&)>& psi,
                              double) {
    AtomicMeasure mu = ma_atoms(v);
    VectorResult r;
    r.value = zero_vec(mu.dim);
    std::vector<double> terms(mu.atoms.size());
    for (int c = 0; c < mu.dim; ++c) {
        for (size_t k = 0; k < mu.atoms.size(); ++k)
            terms[k] = psi(mu.atoms[k].x).a[c] * mu.atoms[k].mass;
        r.value.a[c] = pairwise_sum(terms.data(), terms.size());
    }
    r.error_estimate = kResultFloor * (1.0 + norm(r.value));
    r.pathway = Pathway::exact;
    return r;
}

VectorResult theta0_integrate(const MaxAffineFunction& v, const ScalarWeight& zeta) {
    AtomicMeasure mu = ma_atoms(v);
    VectorResult r;
    r.value = atom_moment_sum(mu, zeta);
    r.error_estimate = kResultFloor * (1.0 + norm(r.value));
    r.pathway = Pathway::exact;
    return r;
}

ScalarResult hess_j_scalar(const GridFunction& f, int j, const ScalarWeight& zeta) {
    validate_j(f, j);
    check_coverage(f, zeta.support_radius);
    FdWeight w;
    w.kind = FdKind::scalar;
    w.zeta = &zeta.f;
    Route route = choose_route(f, j);
    double out[1] = {0};
    run_grid(f, j, w, route, 1, out);
    ScalarResult r;
    r.value = out[0];
    r.error_estimate = grid_estimate(f, j, w, route, 1, out);
    r.pathway = Pathway::grid;
    r.mollified = route.mollify;
    return r;
}

VectorResult hess_j_x(const GridFunction& f, int j, const ScalarWeight& zeta) {
    validate_j(f, j);
    check_coverage(f, zeta.support_radius);
    std::function<Vec(const Vec&)> psi = [&zeta](const Vec& x) { return x * zeta.f(x); };
    FdWeight w;
    w.kind = FdKind::vec_of_x;
    w.psi = &psi;
    Route route = choose_route(f, j);
    double out[3] = {0, 0, 0};
    run_grid(f, j, w, route, f.dim, out);
    VectorResult r;
    r.value = zero_vec(f.dim);
    for (int c = 0; c < f.dim; ++c) r.value.a[c] = out[c];
    r.error_estimate = grid_estimate(f, j, w, route, f.dim, out);
    r.pathway = Pathway::grid;
    r.mollified = route.mollify;
    return r;
}

VectorResult hess_j_grad(const GridFunction& f, int j, const ScalarWeight& zeta) {
    validate_j(f, j);
    check_coverage(f, zeta.support_radius);
    FdWeight w;
    w.kind = FdKind::gradient;
    w.zeta = &zeta.f;
    Route route = choose_route(f, j);
    double out[3] = {0, 0, 0};
    run_grid(f, j, w, route, f.dim, out);
    VectorResult r;
    r.value = zero_vec(f.dim);
    for (int c = 0; c < f.dim; ++c) r.value.a[c] = out[c];
    r.error_estimate = grid_estimate(f, j, w, route, f.dim, out);
    r.pathway = Pathway::grid;
    r.mollified = route.mollify;
    return r;
}

ScalarResult ma_integrate(const GridFunction& f, const ScalarWeight& zeta) {
    return hess_j_scalar(f, f.dim, zeta);
}

VectorResult ma_integrate_vec(const GridFunction& f, const std::function<Vec(const Vec&)>& psi,
                              double support_radius) {
    check_coverage(f, support_radius);
    FdWeight w;
    w.kind = FdKind::vec_of_x;
    w.psi = &psi;
    Route route = choose_route(f, f.dim);
    double out[3] = {0, 0, 0};
    run_grid(f, f.dim, w, route, f.dim, out);
    VectorResult r;
    r.value = zero_vec(f.dim);
    for (int c = 0; c < f.dim; ++c) r.value.a[c] = out[c];
    r.error_estimate = grid_estimate(f, f.dim, w, route, f.dim, out);
    r.pathway = Pathway::grid;
    r.mollified = route.mollify;
    return r;
}

VectorResult theta0_integrate(const GridFunction& f, const ScalarWeight& zeta) {
    return hess_j_grad(f, f.dim, zeta);
}

} // namespace convval
