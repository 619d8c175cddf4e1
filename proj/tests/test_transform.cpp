#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "convval/conjugate.hpp"
#include "convval/max_affine.hpp"
#include "convval/reduce.hpp"
#include "convval/valuations.hpp"

using namespace convval;

namespace {

MaxAffineFunction random_ma(RandomStream& rs, int dim, int npieces) {
    std::vector<MaxAffineFunction::Piece> ps;
    for (int i = 0; i < npieces; ++i)
        ps.push_back({rs.uniform_vec(dim, -0.8, 0.8), rs.uniform(-0.5, 0.5)});
    return make_max_affine(dim, ps);
}

} // namespace

TEST_CASE("canonicalize merges slopes, prunes dominated pieces, and is idempotent") {
    // duplicate slope: the larger offset wins
    MaxAffineFunction v = make_max_affine(1, {{vec1(1.0), 0.0}, {vec1(1.0), -2.0}, {vec1(-1.0), 0.0}});
    CHECK(v.pieces.size() == 2);

    // max(x, -x, -5): the constant piece is never strictly active
    MaxAffineFunction w = make_max_affine(1, {{vec1(1.0), 0.0}, {vec1(-1.0), 0.0}, {vec1(0.0), -5.0}});
    CHECK(w.pieces.size() == 2);

    // collinear middle slope touches the graph only at the kink point
    MaxAffineFunction c = make_max_affine(1, {{vec1(0.0), 0.0}, {vec1(1.0), 0.0}, {vec1(0.5), 0.0}});
    CHECK(c.pieces.size() == 2);

    MaxAffineFunction cc = canonicalize(c);
    CHECK(cc.pieces.size() == c.pieces.size());
    for (size_t i = 0; i < c.pieces.size(); ++i) {
        CHECK(cc.pieces[i].a == c.pieces[i].a);
        CHECK(cc.pieces[i].b == c.pieces[i].b);
    }
}

TEST_CASE("canonicalize never changes the function") {
    RandomStream rs(310);
    for (int rep = 0; rep < 20; ++rep) {
        int dim = 1 + rep % 2;
        std::vector<MaxAffineFunction::Piece> ps;
        for (int i = 0; i < 7; ++i)
            ps.push_back({rs.uniform_vec(dim, -1.0, 1.0), rs.uniform(-0.5, 0.5)});
        MaxAffineFunction raw;
        raw.dim = dim;
        raw.pieces = ps;
        MaxAffineFunction v = make_max_affine(dim, ps);
        CHECK(v.pieces.size() <= ps.size());
        for (int t = 0; t < 40; ++t) {
            Vec x = rs.uniform_vec(dim, -2.0, 2.0);
            CHECK(eval(v, x) == doctest::Approx(eval(raw, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("piece_strictly_active flags exactly the surviving pieces") {
    MaxAffineFunction raw;
    raw.dim = 1;
    raw.pieces = {{vec1(1.0), 0.0}, {vec1(-1.0), 0.0}, {vec1(0.0), -5.0}};
    CHECK(piece_strictly_active(raw, 0));
    CHECK(piece_strictly_active(raw, 1));
    CHECK_FALSE(piece_strictly_active(raw, 2));
}

TEST_CASE("conjugate of the absolute value: one cell carrying the full interval") {
    MaxAffineFunction v = make_max_affine(1, {{vec1(1.0), 0.0}, {vec1(-1.0), 0.0}});
    DualCellComplex u = conjugate_max_affine(v);
    CHECK(u.dim == 1);
    REQUIRE(u.cells.size() == 1);
    CHECK(u.cells[0].x[0] == 0.0);
    CHECK(u.cells[0].value == 0.0);
    CHECK(volume(u.cells[0].cell) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(moment_vector(u.cells[0].cell)[0] == doctest::Approx(0.0));
    CHECK(u.domain.verts.front()[0] == doctest::Approx(-1.0));
    CHECK(u.domain.verts.back()[0] == doctest::Approx(1.0));
}

TEST_CASE("conjugate of a shifted ramp lives on [0, 1]") {
    // v(x) = max(0, x - 1): v*(y) = y on [0, 1]
    MaxAffineFunction v = make_max_affine(1, {{vec1(0.0), 0.0}, {vec1(1.0), -1.0}});
    DualCellComplex u = conjugate_max_affine(v);
    REQUIRE(u.cells.size() == 1);
    CHECK(u.cells[0].x[0] == doctest::Approx(1.0));
    CHECK(u.cells[0].value == doctest::Approx(0.0));
    CHECK(volume(u.cells[0].cell) == doctest::Approx(1.0));
    CHECK(moment_vector(u.cells[0].cell)[0] == doctest::Approx(0.5));

    MaxAffineFunction star = dual_representation(u);
    CHECK(eval(star, vec1(0.25)) == doctest::Approx(0.25));
    CHECK(eval(star, vec1(1.0)) == doctest::Approx(1.0));
}

TEST_CASE("conjugate of the square's support function is one cell of area four") {
    MaxAffineFunction v = make_max_affine(
        2, {{vec2(1, 1), 0.0}, {vec2(1, -1), 0.0}, {vec2(-1, 1), 0.0}, {vec2(-1, -1), 0.0}});
    DualCellComplex u = conjugate_max_affine(v);
    CHECK(u.domain.verts.size() == 4);
    REQUIRE(u.cells.size() == 1);
    CHECK(norm(u.cells[0].x) == 0.0);
    CHECK(volume(u.cells[0].cell) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("dual cells partition the domain and biconjugation returns the function") {
    RandomStream rs(311);
    for (int rep = 0; rep < 12; ++rep) {
        int dim = 1 + rep % 2;
        MaxAffineFunction v = random_ma(rs, dim, 5 + rep % 3);
        DualCellComplex u = conjugate_max_affine(v);
        double cells = 0.0;
        for (const auto& c : u.cells) cells += volume(c.cell);
        CHECK(cells == doctest::Approx(volume(u.domain)).epsilon(1e-10));

        for (int t = 0; t < 25; ++t) {
            Vec x = rs.uniform_vec(dim, -1.5, 1.5);
            CHECK(biconjugate_eval(u, x) == doctest::Approx(eval(v, x)).epsilon(1e-11));
        }

        // the dual representation evaluates v* directly: compare against the
        // definition sup_x <x,y> - v(x) probed on a fine 1D section
        MaxAffineFunction star = dual_representation(u);
        for (const auto& cell : u.cells)
            for (const auto& y : cell.cell.verts)
                CHECK(eval(star, y) == doctest::Approx(dot(cell.x, y) - cell.value).epsilon(1e-11));
    }
}

TEST_CASE("epi_multiply on the complex matches conjugating the scaled function") {
    RandomStream rs(312);
    for (int rep = 0; rep < 8; ++rep) {
        int dim = 1 + rep % 2;
        MaxAffineFunction v = random_ma(rs, dim, 5);
        DualCellComplex u = conjugate_max_affine(v);
        double lam = rs.uniform(0.4, 2.5);
        DualCellComplex left = epi_multiply(u, lam);
        DualCellComplex right = conjugate_max_affine(ma_scale(v, lam));
        REQUIRE(left.cells.size() == right.cells.size());
        for (size_t k = 0; k < left.cells.size(); ++k) {
            CHECK(norm(left.cells[k].x - right.cells[k].x) <= 1e-12);
            CHECK(left.cells[k].value == doctest::Approx(right.cells[k].value).epsilon(1e-12));
            CHECK(volume(left.cells[k].cell) ==
                  doctest::Approx(volume(right.cells[k].cell)).epsilon(1e-10));
        }
    }
    MaxAffineFunction v = random_ma(rs, 2, 4);
    CHECK_THROWS_AS(epi_multiply(conjugate_max_affine(v), 0.0), std::invalid_argument);
}

TEST_CASE("max_of and sum_of keep pointwise semantics") {
    RandomStream rs(313);
    for (int rep = 0; rep < 10; ++rep) {
        int dim = 1 + rep % 2;
        MaxAffineFunction v = random_ma(rs, dim, 4);
        MaxAffineFunction w = random_ma(rs, dim, 3);
        MaxAffineFunction mx = max_of(v, w);
        MaxAffineFunction sm = sum_of(v, w);
        for (int t = 0; t < 30; ++t) {
            Vec x = rs.uniform_vec(dim, -2.0, 2.0);
            CHECK(eval(mx, x) == doctest::Approx(std::max(eval(v, x), eval(w, x))).epsilon(1e-12));
            CHECK(eval(sm, x) == doctest::Approx(eval(v, x) + eval(w, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("affine transforms of max-affine functions") {
    RandomStream rs(314);
    MaxAffineFunction v = random_ma(rs, 2, 5);
    Vec y = vec2(0.3, -0.7);
    MaxAffineFunction vl = ma_add_linear(v, y, 0.25);
    Mat r = rotation2(0.9);
    MaxAffineFunction vr = ma_rotate(v, r);
    MaxAffineFunction vs = ma_scale(v, 1.7);
    MaxAffineFunction ve = ma_epi_multiply(v, 1.7);
    MaxAffineFunction vc = ma_compose_inverse_scale(v, 1.7);
    for (int t = 0; t < 40; ++t) {
        Vec x = rs.uniform_vec(2, -1.5, 1.5);
        CHECK(eval(vl, x) == doctest::Approx(eval(v, x) + dot(y, x) + 0.25).epsilon(1e-12));
        CHECK(eval(vr, apply(r, x)) == doctest::Approx(eval(v, x)).epsilon(1e-12));
        CHECK(eval(vs, x) == doctest::Approx(1.7 * eval(v, x)).epsilon(1e-12));
        CHECK(eval(ve, x) == doctest::Approx(1.7 * eval(v, x * (1.0 / 1.7))).epsilon(1e-12));
        CHECK(eval(vc, x) == doctest::Approx(eval(v, x * (1.0 / 1.7))).epsilon(1e-12));
    }
}

TEST_CASE("grid conjugate of the canonical quadratic is the quadratic") {
    // the sampled transform is exact for the piecewise-linear interpolant, so
    // the defect against |y|^2/2 is at most h^2/8 per axis
    GridFunction q1 = sample_grid(1, {-1, 0, 0}, {1, 0, 0}, {65, 1, 1},
                                  [](const Vec& x) { return 0.5 * x[0] * x[0]; });
    GridFunction c1 = conjugate_grid(q1);
    double h = q1.h(0);
    for (int i = 0; i < c1.res[0]; ++i) {
        double y = c1.node(0, i);
        CHECK(std::fabs(c1.at(i) - 0.5 * y * y) <= h * h / 8.0 + 1e-12);
    }

    GridFunction q2 = sample_grid(2, {-1, -1, 0}, {1, 1, 0}, {65, 65, 1},
                                  [](const Vec& x) { return 0.5 * norm2(x); });
    GridFunction c2 = conjugate_grid(q2);
    for (int i = 0; i < c2.res[0]; ++i)
        for (int j = 0; j < c2.res[1]; ++j) {
            Vec y = vec2(c2.node(0, i), c2.node(1, j));
            CHECK(std::fabs(c2.at(i, j) - 0.5 * norm2(y)) <= 2.0 * h * h / 8.0 + 1e-12);
        }
}

TEST_CASE("grid conjugate box handling") {
    GridFunction q = sample_grid(1, {-1, 0, 0}, {1, 0, 0}, {65, 1, 1},
                                 [](const Vec& x) { return 0.5 * x[0] * x[0]; });
    auto sr = slope_range(q);
    CHECK(sr[0].first == doctest::Approx(-1.0 + q.h(0) / 2).epsilon(1e-12));
    CHECK(sr[0].second == doctest::Approx(1.0 - q.h(0) / 2).epsilon(1e-12));

    // a requested dual box covering the slope range is fine
    ConjugateGridOptions opts;
    opts.dual_lo = {{-2.0, 0, 0}};
    opts.dual_hi = {{2.0, 0, 0}};
    opts.dual_res = {{97, 1, 1}};
    GridFunction c = conjugate_grid(q, opts);
    CHECK(c.lo[0] == -2.0);
    CHECK(c.hi[0] == 2.0);
    CHECK(c.res[0] == 97);

    // one that cuts into it throws
    opts.dual_lo = {{-0.5, 0, 0}};
    opts.dual_hi = {{0.5, 0, 0}};
    opts.dual_res = {};
    CHECK_THROWS_AS(conjugate_grid(q, opts), std::domain_error);
}

TEST_CASE("grid conjugate is exact when the kinks sit on grid nodes") {
    // kinks at -1, 0.25, 1.5 are nodes of the 129-point grid on [-2, 2], so
    // the samples coincide with their own interpolant and the discrete
    // transform reproduces v* at every dual node
    MaxAffineFunction v = make_max_affine(1, {{vec1(-1.0), 0.0},
                                              {vec1(-0.25), 0.75},
                                              {vec1(0.5), 0.5625},
                                              {vec1(1.25), -0.5625}});
    MaxAffineFunction star = dual_representation(conjugate_max_affine(v));
    GridFunction f = sample_grid(1, {-2, 0, 0}, {2, 0, 0}, {129, 1, 1},
                                 [&](const Vec& x) { return eval(v, x); });
    GridFunction c = conjugate_grid(f);
    CHECK(c.lo[0] == doctest::Approx(-1.0));
    CHECK(c.hi[0] == doctest::Approx(1.25));
    for (int i = 0; i < c.res[0]; ++i) {
        double y = c.node(0, i);
        CHECK(std::fabs(c.at(i) - eval(star, vec1(y))) <= 1e-12);
    }
}

TEST_CASE("grid epi-scaling helpers match their definitions") {
    GridFunction q = sample_grid(1, {-1, 0, 0}, {1, 0, 0}, {33, 1, 1},
                                 [](const Vec& x) { return 0.5 * x[0] * x[0] + 0.2 * x[0]; });
    GridFunction a = grid_add_linear(q, vec1(0.7), 0.1);
    GridFunction s = grid_scale_values(q, 2.0);
    GridFunction e = grid_epi_multiply(q, 2.0);
    GridFunction r = grid_add_quadratic(q, 0.5);
    for (int i = 0; i < q.res[0]; ++i) {
        double x = q.node(0, i);
        CHECK(a.at(i) == doctest::Approx(q.at(i) + 0.7 * x + 0.1).epsilon(1e-13));
        CHECK(s.at(i) == doctest::Approx(2.0 * q.at(i)).epsilon(1e-13));
        CHECK(r.at(i) == doctest::Approx(q.at(i) + 0.5 * 0.5 * x * x).epsilon(1e-13));
    }
    // epi-multiplication keeps the box, evaluating lambda v(x / lambda)
    for (int i = 0; i < e.res[0]; ++i) {
        double x = e.node(0, i);
        double inner = 0.5 * (x / 2.0) * (x / 2.0) + 0.2 * (x / 2.0);
        CHECK(e.at(i) == doctest::Approx(2.0 * inner).epsilon(1e-12));
    }
}
