#include "convval/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convval/reduce.hpp"

namespace convval {
namespace {

bool lex_less(const Vec& p, const Vec& q) {
    for (int i = 0; i < p.n; ++i) {
        if (p[i] < q[i]) return true;
        if (p[i] > q[i]) return false;
    }
    return false;
}

double coord_scale(const std::vector<Vec>& pts) {
    double s = 1.0;
    for (const Vec& p : pts)
        for (int i = 0; i < p.n; ++i) s = std::max(s, std::abs(p[i]));
    return s;
}

std::vector<Vec> dedupe(std::vector<Vec> pts, double tol) {
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<Vec> out;
    for (const Vec& p : pts) {
        bool dup = false;
        for (const Vec& q : out) {
            double d = 0.0;
            for (int i = 0; i < p.n; ++i) d = std::max(d, std::abs(p[i] - q[i]));
            if (d <= tol) { dup = true; break; }
        }
        if (!dup) out.push_back(p);
    }
    return out;
}

// monotone chain; returns ccw ring of extreme points (strictly convex turns)
std::vector<Vec> hull_2d(std::vector<Vec> pts, double eps) {
    std::sort(pts.begin(), pts.end(), lex_less);
    size_t m = pts.size();
    if (m <= 2) return pts;
    std::vector<Vec> h(2 * m);
    size_t k = 0;
    for (size_t i = 0; i < m; ++i) {           // lower chain
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = m - 1; i-- > 0;) {         // upper chain
        while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// orthonormal basis of the affine hull, by greedy Gram-Schmidt on centered points
struct AffineFrame {
    Vec origin;
    std::vector<Vec> basis;
};

AffineFrame affine_frame(int dim, const std::vector<Vec>& pts, double tol) {
    AffineFrame f;
    f.origin = pts.empty() ? Vec(dim) : pts.front();
    for (const Vec& p : pts) {
        Vec d = p - f.origin;
        for (const Vec& b : f.basis) d -= dot(d, b) * b;
        double len = norm(d);
        if (len > tol) f.basis.push_back((1.0 / len) * d);
        if (static_cast<int>(f.basis.size()) == dim) break;
    }
    return f;
}

Vec project(const AffineFrame& f, const Vec& p) {
    Vec r(static_cast<int>(f.basis.size()));
    Vec d = p - f.origin;
    for (size_t i = 0; i < f.basis.size(); ++i) r[static_cast<int>(i)] = dot(d, f.basis[i]);
    return r;
}

Vec unproject(const AffineFrame& f, const Vec& q) {
    Vec r = f.origin;
    for (size_t i = 0; i < f.basis.size(); ++i) r += q[static_cast<int>(i)] * f.basis[i];
    return r;
}

// match hull output values back to the input points they were copied from,
// so canonical vertex lists always carry original coordinates (bit-exact
// idempotence of canonicalization depends on this)
std::vector<size_t> match_indices(const std::vector<Vec>& hull, const std::vector<Vec>& inputs) {
    std::vector<size_t> idx;
    idx.reserve(hull.size());
    for (const Vec& h : hull)
        for (size_t i = 0; i < inputs.size(); ++i)
            if (inputs[i] == h) { idx.push_back(i); break; }
    return idx;
}

// full-dimensional 3D hull by face-plane enumeration (point sets are small):
// collect supporting planes through point triples, then hull each face in-plane
void build_3d(Polytope& K, const std::vector<Vec>& pts, double scale) {
    double side_tol = 1e-9 * scale;
    size_t m = pts.size();
    std::vector<Polytope::Face> faces;
    auto plane_known = [&](const Vec& nrm, double off) {
        for (const auto& f : faces)
            if (std::abs(dot(f.normal, nrm) - 1.0) < 1e-9 && std::abs(f.offset - off) < side_tol)
                return true;
        return false;
    };
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t k = j + 1; k < m; ++k) {
                Vec u = pts[j] - pts[i], v = pts[k] - pts[i];
                Vec nrm = vec3(u[1] * v[2] - u[2] * v[1],
                               u[2] * v[0] - u[0] * v[2],
                               u[0] * v[1] - u[1] * v[0]);
                double len = norm(nrm);
                if (len <= 1e-12 * scale * scale) continue;
                nrm = (1.0 / len) * nrm;
                double off = dot(nrm, pts[i]);
                for (int sgn = 0; sgn < 2; ++sgn) {
                    Vec nn = sgn ? -nrm : nrm;
                    double oo = sgn ? -off : off;
                    bool supporting = true;
                    for (size_t t = 0; t < m && supporting; ++t)
                        if (dot(nn, pts[t]) > oo + side_tol) supporting = false;
                    if (!supporting || plane_known(nn, oo)) continue;
                    // gather coplanar points and hull them inside the plane
                    std::vector<Vec> on_plane;
                    for (const Vec& p : pts)
                        if (std::abs(dot(nn, p) - oo) <= side_tol) on_plane.push_back(p);
                    AffineFrame fr = affine_frame(3, on_plane, 1e-12 * scale);
                    if (fr.basis.size() != 2) continue;
                    std::vector<Vec> flat;
                    flat.reserve(on_plane.size());
                    for (const Vec& p : on_plane) flat.push_back(project(fr, p));
                    std::vector<Vec> ring2 = hull_2d(flat, 1e-12 * scale * scale);
                    Polytope::Face face;
                    face.normal = nn;
                    face.offset = oo;
                    for (size_t t : match_indices(ring2, flat)) face.loop.push_back(on_plane[t]);
                    // orient the loop ccw as seen from outside (normal side)
                    if (face.loop.size() >= 3) {
                        Vec e1 = face.loop[1] - face.loop[0], e2 = face.loop[2] - face.loop[0];
                        Vec c = vec3(e1[1] * e2[2] - e1[2] * e2[1],
                                     e1[2] * e2[0] - e1[0] * e2[2],
                                     e1[0] * e2[1] - e1[1] * e2[0]);
                        if (dot(c, nn) < 0.0) std::reverse(face.loop.begin(), face.loop.end());
                    }
                    faces.push_back(std::move(face));
                }
            }
    K.faces = std::move(faces);
    // extreme points = union of face-loop vertices
    std::vector<Vec> ext;
    for (const auto& f : K.faces)
        for (const Vec& p : f.loop) ext.push_back(p);
    K.verts = dedupe(std::move(ext), 1e-12 * scale);
}

} // namespace

int affine_hull_dim(int dim, const std::vector<Vec>& points, double tol) {
    if (points.empty()) return -1;
    AffineFrame f = affine_frame(dim, points, tol * coord_scale(points));
    return static_cast<int>(f.basis.size());
}

Polytope make_polytope(int dim, const std::vector<Vec>& points) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("make_polytope: dim must be 1, 2, or 3");
    for (const Vec& p : points) {
        if (p.n != dim) throw std::invalid_argument("make_polytope: vertex dimension mismatch");
        for (int i = 0; i < dim; ++i)
            if (!std::isfinite(p[i])) throw std::invalid_argument("make_polytope: non-finite vertex");
    }
    Polytope K;
    K.dim = dim;
    if (points.empty()) return K;

    double scale = coord_scale(points);
    std::vector<Vec> pts = dedupe(points, 1e-13 * scale);
    K.aff_dim = affine_hull_dim(dim, pts, 1e-9);

    if (K.aff_dim == 0) {
        K.verts = {pts.front()};
        return K;
    }

    if (K.aff_dim < dim) {
        // degenerate body: hull inside its affine hull, then keep the matching originals
        AffineFrame fr = affine_frame(dim, pts, 1e-9 * scale);
        std::vector<Vec> flat;
        flat.reserve(pts.size());
        for (const Vec& p : pts) flat.push_back(project(fr, p));
        Polytope low = make_polytope(K.aff_dim, flat);
        for (size_t t : match_indices(low.verts, flat)) K.verts.push_back(pts[t]);
        std::sort(K.verts.begin(), K.verts.end(), lex_less);
        return K;
    }

    if (dim == 1) {
        K.verts = {pts.front(), pts.back()};
    } else if (dim == 2) {
        K.ring = hull_2d(pts, 1e-12 * scale * scale);
        K.verts = K.ring;
        std::sort(K.verts.begin(), K.verts.end(), lex_less);
    } else {
        build_3d(K, pts, scale);
        std::sort(K.verts.begin(), K.verts.end(), lex_less);
    }
    return K;
}

double volume(const Polytope& K) {
    if (K.empty() || K.aff_dim < K.dim) return 0.0;
    if (K.dim == 1) return K.verts[1][0] - K.verts[0][0];
    if (K.dim == 2) {
        const auto& r = K.ring;
        std::vector<double> terms(r.size());
        for (size_t i = 0; i < r.size(); ++i) {
            const Vec& p = r[i];
            const Vec& q = r[(i + 1) % r.size()];
            terms[i] = p[0] * q[1] - q[0] * p[1];
        }
        return 0.5 * pairwise_sum(terms);
    }
    // dim 3: signed tetrahedra against the vertex centroid
    Vec c(3);
    for (const Vec& p : K.verts) c += p;
    c *= 1.0 / static_cast<double>(K.verts.size());
    std::vector<double> terms;
    for (const auto& f : K.faces)
        for (size_t i = 1; i + 1 < f.loop.size(); ++i) {
            Vec a = f.loop[0] - c, b = f.loop[i] - c, d = f.loop[i + 1] - c;
            terms.push_back((a[0] * (b[1] * d[2] - b[2] * d[1])
                           - a[1] * (b[0] * d[2] - b[2] * d[0])
                           + a[2] * (b[0] * d[1] - b[1] * d[0])) / 6.0);
        }
    return pairwise_sum(terms);
}

Vec moment_vector(const Polytope& K) {
    if (K.empty() || K.aff_dim < K.dim) return Vec(K.dim);
    if (K.dim == 1) {
        double lo = K.verts[0][0], hi = K.verts[1][0];
        return vec1(0.5 * (hi * hi - lo * lo));
    }
    if (K.dim == 2) {
        // fan from the vertex centroid; each triangle contributes area * centroid
        const auto& r = K.ring;
        Vec c(2);
        for (const Vec& p : r) c += p;
        c *= 1.0 / static_cast<double>(r.size());
        std::vector<Vec> terms;
        for (size_t i = 0; i < r.size(); ++i) {
            const Vec& p = r[i];
            const Vec& q = r[(i + 1) % r.size()];
            double area = 0.5 * cross2(c, p, q);
            terms.push_back(area * (1.0 / 3.0) * (c + p + q));
        }
        return pairwise_sum_vec(terms, 2);
    }
    Vec c(3);
    for (const Vec& p : K.verts) c += p;
    c *= 1.0 / static_cast<double>(K.verts.size());
    std::vector<Vec> terms;
    for (const auto& f : K.faces)
        for (size_t i = 1; i + 1 < f.loop.size(); ++i) {
            Vec a = f.loop[0] - c, b = f.loop[i] - c, d = f.loop[i + 1] - c;
            double vol = (a[0] * (b[1] * d[2] - b[2] * d[1])
                        - a[1] * (b[0] * d[2] - b[2] * d[0])
                        + a[2] * (b[0] * d[1] - b[1] * d[0])) / 6.0;
            terms.push_back(vol * 0.25 * (c + f.loop[0] + f.loop[i] + f.loop[i + 1]));
        }
    return pairwise_sum_vec(terms, 3);
}

double support_value(const Polytope& K, const Vec& dir) {
    if (K.empty()) throw std::invalid_argument("support_value: empty polytope");
    double best = dot(K.verts.front(), dir);
    for (const Vec& p : K.verts) best = std::max(best, dot(p, dir));
    return best;
}

bool contains(const Polytope& K, const Vec& x, double tol) {
    if (K.empty()) return false;
    double scale = std::max(1.0, norm_inf(x));
    for (const Vec& p : K.verts) scale = std::max(scale, norm_inf(p));
    double eps = tol * scale;
    if (K.aff_dim < K.dim) {
        // on the affine hull and inside the reduced body
        AffineFrame fr = affine_frame(K.dim, K.verts, 1e-9 * scale);
        Vec back = unproject(fr, project(fr, x));
        if (norm_inf(back - x) > eps) return false;
        if (K.aff_dim == 0) return true;
        std::vector<Vec> flat;
        for (const Vec& p : K.verts) flat.push_back(project(fr, p));
        return contains(make_polytope(static_cast<int>(fr.basis.size()), flat), project(fr, x), tol);
    }
    if (K.dim == 1) return x[0] >= K.verts[0][0] - eps && x[0] <= K.verts[1][0] + eps;
    if (K.dim == 2) {
        const auto& r = K.ring;
        for (size_t i = 0; i < r.size(); ++i)
            if (cross2(r[i], r[(i + 1) % r.size()], x) < -eps * scale) return false;
        return true;
    }
    for (const auto& f : K.faces)
        if (dot(f.normal, x) > f.offset + eps) return false;
    return true;
}

namespace {
Polytope remap(const Polytope& K, const std::function<Vec(const Vec&)>& map) {
    std::vector<Vec> pts;
    pts.reserve(K.verts.size());
    for (const Vec& p : K.verts) pts.push_back(map(p));
    return make_polytope(K.dim, pts);
}
} // namespace

Polytope polytope_scale(const Polytope& K, double lambda) {
    return remap(K, [&](const Vec& p) { return lambda * p; });
}

Polytope polytope_translate(const Polytope& K, const Vec& y) {
    return remap(K, [&](const Vec& p) { return p + y; });
}

Polytope polytope_rotate(const Polytope& K, const Mat& rot) {
    return remap(K, [&](const Vec& p) { return apply(rot, p); });
}

} // namespace convval
