#pragma once
#include <vector>

#include "convval/vec.hpp"

namespace convval {

// convex body given by its extreme points, lexicographically sorted.
// 2D vertices are additionally stored in counter-clockwise hull order in
// `ring` (volume/moment walk the ring; `verts` stays the canonical form).
struct Polytope {
    int dim = 0;
    std::vector<Vec> verts;     // canonical: extreme points, lex sorted
    int aff_dim = -1;           // dimension of the affine hull, -1 = empty

    // full-dimensional traversal data
    std::vector<Vec> ring;      // dim 2: ccw hull order
    struct Face {               // dim 3: outward half-space and face polygon (ccw from outside)
        Vec normal;
        double offset;
        std::vector<Vec> loop;
    };
    std::vector<Face> faces;

    bool empty() const { return verts.empty(); }
};

Polytope make_polytope(int dim, const std::vector<Vec>& points);

double volume(const Polytope& K);
Vec moment_vector(const Polytope& K);
double support_value(const Polytope& K, const Vec& dir);
bool contains(const Polytope& K, const Vec& x, double tol = 1e-9);

Polytope polytope_scale(const Polytope& K, double lambda);
Polytope polytope_translate(const Polytope& K, const Vec& y);
Polytope polytope_rotate(const Polytope& K, const Mat& rot);

// dimension of the affine hull of a point cloud
int affine_hull_dim(int dim, const std::vector<Vec>& points, double tol = 1e-9);

} // namespace convval
