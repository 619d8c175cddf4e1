#pragma once
#include <vector>

#include "convval/polytope.hpp"
#include "convval/vec.hpp"

namespace convval {

// v(x) = max_i (<a_i, x> + b_i); the exact piecewise-linear pathway
struct MaxAffineFunction {
    struct Piece {
        Vec a;
        double b = 0.0;
    };
    int dim = 0;
    std::vector<Piece> pieces;
};

// dedupe, merge coincident slopes (keeping the larger offset), drop pieces
// that are never strictly active, lex-sort; idempotent
MaxAffineFunction canonicalize(const MaxAffineFunction& v);

MaxAffineFunction make_max_affine(int dim, const std::vector<MaxAffineFunction::Piece>& pieces);

double eval(const MaxAffineFunction& v, const Vec& x);

// true when the piece attains the maximum on a full-dimensional region
bool piece_strictly_active(const MaxAffineFunction& v, size_t piece_index, double tol = 1e-11);

// pieces (y_i, 0) over the vertices of K
MaxAffineFunction support_function(const Polytope& K);

// pointwise max: union of pieces
MaxAffineFunction max_of(const MaxAffineFunction& v, const MaxAffineFunction& w);
// sum: pairwise piece sums
MaxAffineFunction sum_of(const MaxAffineFunction& v, const MaxAffineFunction& w);

MaxAffineFunction ma_add_linear(const MaxAffineFunction& v, const Vec& y, double c = 0.0);
MaxAffineFunction ma_rotate(const MaxAffineFunction& v, const Mat& rot);    // v ∘ rot^-1
MaxAffineFunction ma_scale(const MaxAffineFunction& v, double lambda);      // lambda * v
MaxAffineFunction ma_epi_multiply(const MaxAffineFunction& u, double lambda); // pieces (a_i, lambda b_i)
MaxAffineFunction ma_compose_inverse_scale(const MaxAffineFunction& v, double lambda); // v(x / lambda)

} // namespace convval
