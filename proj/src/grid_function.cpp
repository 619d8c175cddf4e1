#include "convval/grid_function.hpp"

#include <cmath>
#include <stdexcept>

namespace convval {
namespace {

size_t validate_box_res(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                        const std::array<int, 3>& res) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("grid: dim must be 1, 2, or 3");
    size_t count = 1;
    for (int a = 0; a < dim; ++a) {
        if (res[a] < 3) throw std::invalid_argument("grid: resolution must be >= 3 per axis");
        if (!(hi[a] > lo[a])) throw std::invalid_argument("grid: box bounds must satisfy lo < hi");
        count *= static_cast<size_t>(res[a]);
    }
    return count;
}

void check_shape(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                 const std::array<int, 3>& res, const std::vector<double>& values) {
    size_t count = validate_box_res(dim, lo, hi, res);
    if (values.size() != count) throw std::invalid_argument("grid: value count does not match resolution");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("grid: non-finite sample");
}

// iterate over all nodes, calling body(i, j, k) with unused trailing indices = 0
template <typename F>
void for_nodes(const GridFunction& f, F&& body) {
    int n1 = f.res[0], n2 = f.dim > 1 ? f.res[1] : 1, n3 = f.dim > 2 ? f.res[2] : 1;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n3; ++k) body(i, j, k);
}

} // namespace

double GridFunction::value_scale() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s == 0.0 ? 1.0 : s;
}

GridFunction make_grid_function_unchecked(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                                          const std::array<int, 3>& res, std::vector<double> values) {
    check_shape(dim, lo, hi, res, values);
    GridFunction f;
    f.dim = dim;
    f.lo = lo;
    f.hi = hi;
    f.res = res;
    f.values = std::move(values);
    return f;
}

GridFunction make_grid_function(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                                const std::array<int, 3>& res, std::vector<double> values) {
    GridFunction f = make_grid_function_unchecked(dim, lo, hi, res, std::move(values));
    if (!is_discretely_convex(f))
        throw std::invalid_argument("grid: samples fail the discrete convexity check");
    return f;
}

GridFunction sample_grid(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                         const std::array<int, 3>& res, const std::function<double(const Vec&)>& fn) {
    size_t count = validate_box_res(dim, lo, hi, res);
    GridFunction f;
    f.dim = dim;
    f.lo = lo;
    f.hi = hi;
    f.res = res;
    f.values.assign(count, 0.0);
    for_nodes(f, [&](int i, int j, int k) {
        Vec x(dim);
        x[0] = f.node(0, i);
        if (dim > 1) x[1] = f.node(1, j);
        if (dim > 2) x[2] = f.node(2, k);
        f.values[f.index(i, j, k)] = fn(x);
    });
    for (double v : f.values)
        if (!std::isfinite(v)) throw std::invalid_argument("grid: non-finite sample");
    if (!is_discretely_convex(f))
        throw std::invalid_argument("grid: samples fail the discrete convexity check");
    return f;
}

double eval(const GridFunction& f, const Vec& x) {
    std::array<int, 3> base{};
    std::array<double, 3> frac{};
    for (int a = 0; a < f.dim; ++a) {
        double t = (x[a] - f.lo[a]) / (f.hi[a] - f.lo[a]);
        if (t < -1e-12 || t > 1.0 + 1e-12) throw std::domain_error("grid eval: point outside the box");
        double u = std::min(std::max(t, 0.0), 1.0) * (f.res[a] - 1);
        base[a] = std::min(static_cast<int>(u), f.res[a] - 2);
        frac[a] = u - base[a];
    }
    double acc = 0.0;
    int corners = 1 << f.dim;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        std::array<int, 3> idx = base;
        for (int a = 0; a < f.dim; ++a) {
            if (c & (1 << a)) { w *= frac[a]; idx[a] += 1; }
            else w *= 1.0 - frac[a];
        }
        acc += w * f.at(idx[0], idx[1], idx[2]);
    }
    return acc;
}

namespace {

// minimum second difference along a lattice direction (di,dj,dk)
double min_second_difference(const GridFunction& f, int di, int dj, int dk) {
    double worst = 0.0;
    int n1 = f.res[0], n2 = f.dim > 1 ? f.res[1] : 1, n3 = f.dim > 2 ? f.res[2] : 1;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n3; ++k) {
                int ip = i + di, jp = j + dj, kp = k + dk;
                int im = i - di, jm = j - dj, km = k - dk;
                if (ip < 0 || ip >= n1 || im < 0 || im >= n1) continue;
                if (jp < 0 || jp >= n2 || jm < 0 || jm >= n2) continue;
                if (kp < 0 || kp >= n3 || km < 0 || km >= n3) continue;
                double d2 = f.at(ip, jp, kp) - 2.0 * f.at(i, j, k) + f.at(im, jm, km);
                worst = std::min(worst, d2);
            }
    return worst;
}

std::vector<std::array<int, 3>> convexity_directions(int dim) {
    std::vector<std::array<int, 3>> dirs;
    for (int a = 0; a < dim; ++a) {
        std::array<int, 3> d{0, 0, 0};
        d[a] = 1;
        dirs.push_back(d);
    }
    // both diagonals of every 2D slice
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b) {
            std::array<int, 3> d{0, 0, 0};
            d[a] = 1; d[b] = 1;
            dirs.push_back(d);
            d[b] = -1;
            dirs.push_back(d);
        }
    return dirs;
}

} // namespace

bool is_discretely_convex(const GridFunction& f, double tol_rel) {
    double tol = tol_rel * f.value_scale();
    for (const auto& d : convexity_directions(f.dim))
        if (min_second_difference(f, d[0], d[1], d[2]) < -tol) return false;
    return true;
}

GridFunction mollify(const GridFunction& f) {
    GridFunction g = f;
    for (int a = 0; a < f.dim; ++a) {
        GridFunction src = g;
        for_nodes(g, [&](int i, int j, int k) {
            std::array<int, 3> idx{i, j, k};
            if (idx[a] == 0 || idx[a] == f.res[a] - 1) return; // boundary kept
            std::array<int, 3> p = idx, m = idx;
            p[a] += 1; m[a] -= 1;
            g.values[g.index(i, j, k)] = 0.25 * src.at(m[0], m[1], m[2])
                                       + 0.5 * src.at(i, j, k)
                                       + 0.25 * src.at(p[0], p[1], p[2]);
        });
    }
    return g;
}

namespace {

} // namespace

bool looks_smooth(const GridFunction& f) {
    // C^2 samples keep axis second differences on one scale (~ f'' h^2); a
    // kink adds a thin band of much larger ones (~ jump * h), so compare the
    // extreme against the bulk instead of against an absolute threshold
    std::vector<double> d2s;
    d2s.reserve(static_cast<size_t>(f.dim) * f.values.size());
    for (int a = 0; a < f.dim; ++a) {
        std::array<int, 3> d{0, 0, 0};
        d[a] = 1;
        int n1 = f.res[0], n2 = f.dim > 1 ? f.res[1] : 1, n3 = f.dim > 2 ? f.res[2] : 1;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j)
                for (int k = 0; k < n3; ++k) {
                    int ip = i + d[0], jp = j + d[1], kp = k + d[2];
                    int im = i - d[0], jm = j - d[1], km = k - d[2];
                    if (ip >= n1 || im < 0) continue;
                    if (f.dim > 1 && (jp >= n2 || jm < 0)) continue;
                    if (f.dim > 2 && (kp >= n3 || km < 0)) continue;
                    d2s.push_back(std::abs(f.at(ip, jp, kp) - 2.0 * f.at(i, j, k)
                                           + f.at(im, jm, km)));
                }
    }
    if (d2s.empty()) return true;
    size_t mid = d2s.size() / 2;
    std::nth_element(d2s.begin(), d2s.begin() + mid, d2s.end());
    double med = d2s[mid];
    double worst = *std::max_element(d2s.begin() + mid, d2s.end());
    return worst <= 6.0 * med + 1e-12 * (1.0 + f.value_scale());
}

bool looks_piecewise_linear(const GridFunction& f) {
    // count interior nodes carrying curvature above the flat-noise level
    double flat_tol = 1e-8 * f.value_scale();
    size_t curved = 0, interior = 0;
    int n1 = f.res[0], n2 = f.dim > 1 ? f.res[1] : 1, n3 = f.dim > 2 ? f.res[2] : 1;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n3; ++k) {
                if (i == 0 || i == n1 - 1) continue;
                if (f.dim > 1 && (j == 0 || j == n2 - 1)) continue;
                if (f.dim > 2 && (k == 0 || k == n3 - 1)) continue;
                ++interior;
                bool c = false;
                for (int a = 0; a < f.dim && !c; ++a) {
                    std::array<int, 3> d{0, 0, 0};
                    d[a] = 1;
                    double d2 = f.at(i + d[0], j + d[1], k + d[2]) - 2.0 * f.at(i, j, k)
                              + f.at(i - d[0], j - d[1], k - d[2]);
                    if (std::abs(d2) > flat_tol) c = true;
                }
                if (c) ++curved;
            }
    return interior > 0 && curved * 4 < interior;
}

GridFunction coarsen(const GridFunction& f) {
    GridFunction g;
    g.dim = f.dim;
    g.lo = f.lo;
    g.hi = f.hi;
    for (int a = 0; a < f.dim; ++a) {
        if (f.res[a] % 2 == 0 || f.res[a] < 5)
            throw std::invalid_argument("coarsen: resolution must be odd and >= 5");
        g.res[a] = (f.res[a] + 1) / 2;
    }
    g.values.assign(g.node_count(), 0.0);
    int n1 = g.res[0], n2 = g.dim > 1 ? g.res[1] : 1, n3 = g.dim > 2 ? g.res[2] : 1;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n3; ++k)
                g.values[g.index(i, j, k)] = f.at(2 * i, 2 * j, 2 * k);
    return g;
}

GridFunction grid_add_linear(const GridFunction& f, const Vec& y, double c) {
    GridFunction g = f;
    for_nodes(g, [&](int i, int j, int k) {
        double lin = c + y[0] * g.node(0, i);
        if (g.dim > 1) lin += y[1] * g.node(1, j);
        if (g.dim > 2) lin += y[2] * g.node(2, k);
        g.values[g.index(i, j, k)] += lin;
    });
    return g;
}

GridFunction grid_add_quadratic(const GridFunction& f, double r) {
    if (r < 0.0) throw std::invalid_argument("add_quadratic: r must be >= 0");
    GridFunction g = f;
    for_nodes(g, [&](int i, int j, int k) {
        double q = g.node(0, i) * g.node(0, i);
        if (g.dim > 1) q += g.node(1, j) * g.node(1, j);
        if (g.dim > 2) q += g.node(2, k) * g.node(2, k);
        g.values[g.index(i, j, k)] += 0.5 * r * q;
    });
    return g;
}

GridFunction grid_scale_values(const GridFunction& f, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("scale: lambda must be > 0");
    GridFunction g = f;
    for (double& v : g.values) v *= lambda;
    return g;
}

GridFunction grid_epi_multiply(const GridFunction& f, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("epi_multiply: lambda must be > 0");
    // (lambda ⊙ u)(x) = lambda u(x / lambda) on the scaled box: nodes map to nodes
    GridFunction g;
    g.dim = f.dim;
    g.res = f.res;
    for (int a = 0; a < f.dim; ++a) { g.lo[a] = lambda * f.lo[a]; g.hi[a] = lambda * f.hi[a]; }
    g.values = f.values;
    for (double& v : g.values) v *= lambda;
    return g;
}

} // namespace convval
