#include "convval/max_affine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace convval {
namespace {

bool piece_lex_less(const MaxAffineFunction::Piece& p, const MaxAffineFunction::Piece& q) {
    for (int i = 0; i < p.a.n; ++i) {
        if (p.a[i] < q.a[i]) return true;
        if (p.a[i] > q.a[i]) return false;
    }
    return p.b < q.b;
}

double slope_scale(const MaxAffineFunction& v) {
    double s = 1.0;
    for (const auto& p : v.pieces) s = std::max(s, norm_inf(p.a));
    return s;
}

double offset_scale(const MaxAffineFunction& v) {
    double s = 1.0;
    for (const auto& p : v.pieces) s = std::max(s, std::abs(p.b));
    return s;
}

// maximize t subject to <c_j, y> + t <= d_j and t <= 1, by vertex enumeration
// (y has at most 3 coordinates, constraint counts are small)
double max_margin(const std::vector<Vec>& c, const std::vector<double>& d, int r) {
    size_t m = c.size();
    int k = r + 1;
    // rows: m margin constraints then the cap t <= 1
    auto row = [&](size_t j, std::vector<double>& out, double& rhs) {
        out.assign(static_cast<size_t>(k), 0.0);
        if (j < m) {
            for (int q = 0; q < r; ++q) out[static_cast<size_t>(q)] = c[j][q];
            out[static_cast<size_t>(r)] = 1.0;
            rhs = d[j];
        } else {
            out[static_cast<size_t>(r)] = 1.0;
            rhs = 1.0;
        }
    };
    double best = -1e300;
    std::vector<size_t> pick(static_cast<size_t>(k));
    std::vector<double> A, b, rrow;
    // iterate over k-subsets of the m+1 constraints
    std::vector<size_t> idx(static_cast<size_t>(k));
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (m + 1 < static_cast<size_t>(k)) return best;
    for (;;) {
        A.assign(static_cast<size_t>(k * k), 0.0);
        b.assign(static_cast<size_t>(k), 0.0);
        double rhs = 0.0;
        for (int rI = 0; rI < k; ++rI) {
            row(idx[static_cast<size_t>(rI)], rrow, rhs);
            for (int cI = 0; cI < k; ++cI) A[static_cast<size_t>(rI * k + cI)] = rrow[static_cast<size_t>(cI)];
            b[static_cast<size_t>(rI)] = rhs;
        }
        if (gauss_solve(A, b, k)) {
            double t = b[static_cast<size_t>(k - 1)];
            if (t > best) {
                // feasibility of the remaining constraints
                bool ok = true;
                double scale = 1.0;
                for (size_t j = 0; j <= m && ok; ++j) {
                    std::vector<double> rw;
                    double rh = 0.0;
                    row(j, rw, rh);
                    double lhs = 0.0;
                    for (int q = 0; q < k; ++q) lhs += rw[static_cast<size_t>(q)] * b[static_cast<size_t>(q)];
                    scale = std::max({scale, std::abs(lhs), std::abs(rh)});
                    if (lhs > rh + 1e-9 * scale) ok = false;
                }
                if (ok) best = t;
            }
        }
        // next combination
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == m + 1 - static_cast<size_t>(k - pos)) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int q = pos + 1; q < k; ++q) idx[static_cast<size_t>(q)] = idx[static_cast<size_t>(q - 1)] + 1;
    }
    return best;
}

} // namespace

double eval(const MaxAffineFunction& v, const Vec& x) {
    if (v.pieces.empty()) throw std::invalid_argument("max-affine eval: no pieces");
    double best = dot(v.pieces.front().a, x) + v.pieces.front().b;
    for (const auto& p : v.pieces) best = std::max(best, dot(p.a, x) + p.b);
    return best;
}

bool piece_strictly_active(const MaxAffineFunction& v, size_t piece_index, double tol) {
    if (v.pieces.size() == 1) return true;
    const auto& pi = v.pieces[piece_index];
    // orthonormal basis of span{a_j - a_i}
    std::vector<Vec> basis;
    for (const auto& pj : v.pieces) {
        Vec dvec = pj.a - pi.a;
        for (const Vec& bq : basis) dvec -= dot(dvec, bq) * bq;
        double len = norm(dvec);
        if (len > 1e-12 * slope_scale(v)) basis.push_back((1.0 / len) * dvec);
        if (static_cast<int>(basis.size()) == v.dim) break;
    }
    int r = static_cast<int>(basis.size());
    std::vector<Vec> c;
    std::vector<double> d;
    for (size_t j = 0; j < v.pieces.size(); ++j) {
        if (j == piece_index) continue;
        Vec diff = v.pieces[j].a - pi.a;
        Vec red(std::max(1, r));
        red.n = r;
        for (int q = 0; q < r; ++q) red[q] = dot(diff, basis[static_cast<size_t>(q)]);
        c.push_back(red);
        d.push_back(pi.b - v.pieces[j].b);
    }
    double scale = std::max(offset_scale(v), slope_scale(v));
    return max_margin(c, d, r) > tol * scale;
}

MaxAffineFunction canonicalize(const MaxAffineFunction& v) {
    if (v.pieces.empty()) throw std::invalid_argument("max-affine: at least one piece required");
    double stol = 1e-12 * slope_scale(v);
    // merge coincident slopes, keeping the larger offset
    std::vector<MaxAffineFunction::Piece> merged;
    for (const auto& p : v.pieces) {
        for (int i = 0; i < v.dim; ++i)
            if (!std::isfinite(p.a[i]) || !std::isfinite(p.b))
                throw std::invalid_argument("max-affine: non-finite piece");
        bool found = false;
        for (auto& q : merged) {
            if (norm_inf(p.a - q.a) <= stol) {
                q.b = std::max(q.b, p.b);
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(p);
    }
    MaxAffineFunction w;
    w.dim = v.dim;
    w.pieces = std::move(merged);
    // batch-drop pieces that are never strictly active
    std::vector<MaxAffineFunction::Piece> kept;
    for (size_t i = 0; i < w.pieces.size(); ++i)
        if (piece_strictly_active(w, i)) kept.push_back(w.pieces[i]);
    if (kept.empty()) kept.push_back(w.pieces.front()); // degenerate guard
    w.pieces = std::move(kept);
    std::sort(w.pieces.begin(), w.pieces.end(), piece_lex_less);
    return w;
}

MaxAffineFunction make_max_affine(int dim, const std::vector<MaxAffineFunction::Piece>& pieces) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("max-affine: dim must be 1, 2, or 3");
    for (const auto& p : pieces)
        if (p.a.n != dim) throw std::invalid_argument("max-affine: slope dimension mismatch");
    MaxAffineFunction v;
    v.dim = dim;
    v.pieces = pieces;
    return canonicalize(v);
}

MaxAffineFunction support_function(const Polytope& K) {
    if (K.empty()) throw std::invalid_argument("support_function: empty polytope");
    std::vector<MaxAffineFunction::Piece> pieces;
    for (const Vec& y : K.verts) pieces.push_back({y, 0.0});
    return make_max_affine(K.dim, pieces);
}

MaxAffineFunction max_of(const MaxAffineFunction& v, const MaxAffineFunction& w) {
    MaxAffineFunction r;
    r.dim = v.dim;
    r.pieces = v.pieces;
    r.pieces.insert(r.pieces.end(), w.pieces.begin(), w.pieces.end());
    return canonicalize(r);
}

MaxAffineFunction sum_of(const MaxAffineFunction& v, const MaxAffineFunction& w) {
    MaxAffineFunction r;
    r.dim = v.dim;
    for (const auto& p : v.pieces)
        for (const auto& q : w.pieces) r.pieces.push_back({p.a + q.a, p.b + q.b});
    return canonicalize(r);
}

MaxAffineFunction ma_add_linear(const MaxAffineFunction& v, const Vec& y, double c) {
    MaxAffineFunction r = v;
    for (auto& p : r.pieces) { p.a += y; p.b += c; }
    return canonicalize(r);
}

MaxAffineFunction ma_rotate(const MaxAffineFunction& v, const Mat& rot) {
    MaxAffineFunction r = v;
    for (auto& p : r.pieces) p.a = apply(rot, p.a);
    return canonicalize(r);
}

MaxAffineFunction ma_scale(const MaxAffineFunction& v, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("scale: lambda must be > 0");
    MaxAffineFunction r = v;
    for (auto& p : r.pieces) { p.a *= lambda; p.b *= lambda; }
    return canonicalize(r);
}

MaxAffineFunction ma_epi_multiply(const MaxAffineFunction& u, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("epi_multiply: lambda must be > 0");
    MaxAffineFunction r = u;
    for (auto& p : r.pieces) p.b *= lambda;
    return canonicalize(r);
}

MaxAffineFunction ma_compose_inverse_scale(const MaxAffineFunction& v, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("compose scale: lambda must be > 0");
    MaxAffineFunction r = v;
    for (auto& p : r.pieces) p.a *= 1.0 / lambda;
    return canonicalize(r);
}

} // namespace convval
