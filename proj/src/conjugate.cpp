#include "convval/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace convval {
namespace {

// subdivision vertices: points where n+1 affinely independent pieces tie at
// the maximum. robust to weakly redundant pieces (their subsets solve to
// points that fail the global-max check or reproduce existing vertices)
std::vector<Vec> subdivision_vertices(const MaxAffineFunction& v, double tol_rel = 1e-9) {
    int n = v.dim;
    size_t m = v.pieces.size();
    std::vector<Vec> verts;
    if (m < static_cast<size_t>(n) + 1) return verts;
    double scale_a = 1.0, scale_b = 1.0;
    for (const auto& p : v.pieces) {
        scale_a = std::max(scale_a, norm_inf(p.a));
        scale_b = std::max(scale_b, std::abs(p.b));
    }

    std::vector<size_t> idx(static_cast<size_t>(n) + 1);
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<double> A, b;
    for (;;) {
        const auto& p0 = v.pieces[idx[0]];
        A.assign(static_cast<size_t>(n * n), 0.0);
        b.assign(static_cast<size_t>(n), 0.0);
        for (int r = 0; r < n; ++r) {
            const auto& pr = v.pieces[idx[static_cast<size_t>(r) + 1]];
            for (int c = 0; c < n; ++c) A[static_cast<size_t>(r * n + c)] = pr.a[c] - p0.a[c];
            b[static_cast<size_t>(r)] = p0.b - pr.b;
        }
        if (gauss_solve(A, b, n, 1e-10)) {
            Vec x(n);
            for (int c = 0; c < n; ++c) x[c] = b[static_cast<size_t>(c)];
            bool finite = true;
            for (int c = 0; c < n; ++c) finite = finite && std::isfinite(x[c]);
            if (finite) {
                double tie = dot(p0.a, x) + p0.b;
                double vx = eval(v, x);
                double tol = tol_rel * std::max({1.0, std::abs(vx), scale_a * norm_inf(x), scale_b});
                if (vx - tie <= tol) {
                    bool dup = false;
                    double xtol = 1e-9 * std::max(1.0, norm_inf(x));
                    for (const Vec& q : verts)
                        if (norm_inf(q - x) <= xtol) { dup = true; break; }
                    if (!dup) verts.push_back(x);
                }
            }
        }
        int pos = n;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - (static_cast<size_t>(n) + 1 - static_cast<size_t>(pos))) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int q = pos + 1; q <= n; ++q) idx[static_cast<size_t>(q)] = idx[static_cast<size_t>(q - 1)] + 1;
    }
    return verts;
}

} // namespace

DualCellComplex conjugate_max_affine(const MaxAffineFunction& raw) {
    MaxAffineFunction v = canonicalize(raw);
    if (v.dim > 3) throw std::invalid_argument("conjugate: dim must be <= 3");
    DualCellComplex u;
    u.dim = v.dim;
    u.pre_conjugate = v;
    std::vector<Vec> slopes;
    slopes.reserve(v.pieces.size());
    for (const auto& p : v.pieces) slopes.push_back(p.a);
    u.domain = make_polytope(v.dim, slopes);

    double scale_a = 1.0, scale_b = 1.0;
    for (const auto& p : v.pieces) {
        scale_a = std::max(scale_a, norm_inf(p.a));
        scale_b = std::max(scale_b, std::abs(p.b));
    }

    for (const Vec& x : subdivision_vertices(v)) {
        double vx = eval(v, x);
        double tol = 1e-9 * std::max({1.0, std::abs(vx), scale_a * norm_inf(x), scale_b});
        std::vector<Vec> active;
        for (const auto& p : v.pieces)
            if (vx - (dot(p.a, x) + p.b) <= tol) active.push_back(p.a);
        Polytope cell = make_polytope(v.dim, active);
        if (cell.aff_dim == v.dim) u.cells.push_back({x, std::move(cell), vx});
    }
    std::sort(u.cells.begin(), u.cells.end(), [](const auto& a, const auto& b) {
        for (int i = 0; i < a.x.n; ++i) {
            if (a.x[i] < b.x[i]) return true;
            if (a.x[i] > b.x[i]) return false;
        }
        return false;
    });
    return u;
}

double biconjugate_eval(const DualCellComplex& u, const Vec& x) {
    if (u.cells.empty()) {
        // no full-dimensional cells: fall back to the canonical pre-conjugate
        return eval(u.pre_conjugate, x);
    }
    double best = -1e300;
    for (const auto& c : u.cells)
        for (const Vec& y : c.cell.verts)
            best = std::max(best, dot(x - c.x, y) + c.value);
    return best;
}

DualCellComplex epi_multiply(const DualCellComplex& u, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("epi_multiply: lambda must be > 0");
    DualCellComplex r;
    r.dim = u.dim;
    r.pre_conjugate = ma_scale(u.pre_conjugate, lambda);
    r.domain = polytope_scale(u.domain, lambda);
    for (const auto& c : u.cells)
        r.cells.push_back({c.x, polytope_scale(c.cell, lambda), lambda * c.value});
    return r;
}

std::array<std::pair<double, double>, 3> slope_range(const GridFunction& f) {
    std::array<std::pair<double, double>, 3> out{};
    for (int a = 0; a < f.dim; ++a) {
        double lo = 1e300, hi = -1e300;
        double h = f.h(a);
        int n1 = f.res[0], n2 = f.dim > 1 ? f.res[1] : 1, n3 = f.dim > 2 ? f.res[2] : 1;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j)
                for (int k = 0; k < n3; ++k) {
                    std::array<int, 3> idx{i, j, k};
                    if (idx[a] + 1 >= f.res[a]) continue;
                    std::array<int, 3> nxt = idx;
                    nxt[a] += 1;
                    double s = (f.at(nxt[0], nxt[1], nxt[2]) - f.at(idx[0], idx[1], idx[2])) / h;
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
        out[a] = {lo, hi};
    }
    return out;
}

namespace {

// exact discrete conjugate along one axis: T(y) = max_i (x_i y - g_i),
// computed on the lower hull of (x_i, g_i) with a monotone argmax scan.
// ys must be nondecreasing
void conjugate_1d(const std::vector<double>& xs, const std::vector<double>& g,
                  const std::vector<double>& ys, std::vector<double>& out) {
    size_t m = xs.size();
    // lower convex hull indices of (x_i, g_i)
    static thread_local std::vector<size_t> hull;
    hull.clear();
    for (size_t i = 0; i < m; ++i) {
        while (hull.size() >= 2) {
            size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            // keep b only when it lies strictly below segment (a, i)
            double cross = (xs[b] - xs[a]) * (g[i] - g[a]) - (g[b] - g[a]) * (xs[i] - xs[a]);
            if (cross <= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    size_t p = 0;
    out.resize(ys.size());
    for (size_t j = 0; j < ys.size(); ++j) {
        double y = ys[j];
        while (p + 1 < hull.size()) {
            size_t cur = hull[p], nxt = hull[p + 1];
            if (xs[nxt] * y - g[nxt] >= xs[cur] * y - g[cur]) ++p;
            else break;
        }
        out[j] = xs[hull[p]] * y - g[hull[p]];
    }
}

} // namespace

GridFunction conjugate_grid(const GridFunction& f, const ConjugateGridOptions& opts) {
    auto ranges = slope_range(f);
    std::array<double, 3> dlo{}, dhi{};
    std::array<int, 3> dres{};
    for (int a = 0; a < f.dim; ++a) {
        double margin = 1e-9 * std::max(1.0, std::abs(ranges[a].first) + std::abs(ranges[a].second));
        dlo[a] = opts.dual_lo ? (*opts.dual_lo)[a] : ranges[a].first;
        dhi[a] = opts.dual_hi ? (*opts.dual_hi)[a] : ranges[a].second;
        dres[a] = opts.dual_res ? (*opts.dual_res)[a] : f.res[a];
        if (dlo[a] > ranges[a].first + margin || dhi[a] < ranges[a].second - margin)
            throw std::domain_error("conjugate_grid: requested dual box clips the sampled gradient range");
        if (!(dhi[a] > dlo[a])) throw std::domain_error("conjugate_grid: empty dual box");
    }

    // iterated one-dimensional transforms with a sign flip between axes:
    // f*(y) = T_n(-T_{n-1}(-...(-T_1 f)...))
    GridFunction cur = f;
    for (int a = 0; a < f.dim; ++a) {
        GridFunction nxt = cur;
        nxt.lo[a] = dlo[a];
        nxt.hi[a] = dhi[a];
        nxt.res[a] = dres[a];
        nxt.values.assign([&] {
            size_t c = 1;
            for (int q = 0; q < f.dim; ++q) c *= static_cast<size_t>(nxt.res[q]);
            return c;
        }(), 0.0);

        std::vector<double> xs(static_cast<size_t>(cur.res[a]));
        for (int i = 0; i < cur.res[a]; ++i) xs[static_cast<size_t>(i)] = cur.node(a, i);
        std::vector<double> ys(static_cast<size_t>(nxt.res[a]));
        for (int i = 0; i < nxt.res[a]; ++i) ys[static_cast<size_t>(i)] = nxt.node(a, i);

        // lines along axis a
        int n1 = cur.res[0], n2 = cur.dim > 1 ? cur.res[1] : 1, n3 = cur.dim > 2 ? cur.res[2] : 1;
        std::array<int, 3> lim{n1, n2, n3};
        lim[a] = 1;
        std::vector<double> line(xs.size()), out;
        for (int i = 0; i < lim[0]; ++i)
            for (int j = 0; j < lim[1]; ++j)
                for (int k = 0; k < lim[2]; ++k) {
                    std::array<int, 3> at{i, j, k};
                    for (int q = 0; q < cur.res[a]; ++q) {
                        at[a] = q;
                        line[static_cast<size_t>(q)] = cur.at(at[0], at[1], at[2]);
                    }
                    conjugate_1d(xs, line, ys, out);
                    bool flip = a + 1 < f.dim; // negate between axes, not after the last
                    for (int q = 0; q < nxt.res[a]; ++q) {
                        at[a] = q;
                        nxt.values[nxt.index(at[0], at[1], at[2])] = flip ? -out[static_cast<size_t>(q)]
                                                                          : out[static_cast<size_t>(q)];
                    }
                }
        cur = std::move(nxt);
    }
    return cur;
}

} // namespace convval
