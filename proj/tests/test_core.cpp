#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "convval/grid_function.hpp"
#include "convval/polytope.hpp"
#include "convval/radial_density.hpp"
#include "convval/reduce.hpp"
#include "convval/vec.hpp"

using namespace convval;

namespace {

// A = Q diag(lam) Q^T for an orthogonal Q, so elem_sym(A, j) must equal the
// elementary symmetric polynomial of the eigenvalues
Mat spectral(const Mat& q, const Vec& lam) {
    Mat a(lam.n);
    for (int r = 0; r < lam.n; ++r)
        for (int c = 0; c < lam.n; ++c) {
            double s = 0.0;
            for (int k = 0; k < lam.n; ++k) s += q(r, k) * lam[k] * q(c, k);
            a(r, c) = s;
        }
    return a;
}

double esym_ref(const Vec& lam, int j) {
    // direct subset enumeration; fine for n <= 3
    int n = lam.n;
    double s = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        int bits = 0;
        double p = 1.0;
        for (int k = 0; k < n; ++k)
            if (mask & (1 << k)) {
                ++bits;
                p *= lam[k];
            }
        if (bits == j) s += p;
    }
    return s;
}

} // namespace

TEST_CASE("elem_sym matches the eigenvalue polynomial") {
    RandomStream rs(901);
    for (int rep = 0; rep < 20; ++rep) {
        for (int n : {2, 3}) {
            Mat q = rs.rotation(n);
            Vec lam = rs.uniform_vec(n, -2.0, 3.0);
            Mat a = spectral(q, lam);
            for (int j = 0; j <= n; ++j)
                CHECK(elem_sym(a, j) == doctest::Approx(esym_ref(lam, j)).epsilon(1e-12));
        }
    }
    Mat id = Mat::identity(3);
    CHECK(elem_sym(id, 0) == 1.0);
    CHECK(elem_sym(id, 1) == 3.0);
    CHECK(elem_sym(id, 2) == 3.0);
    CHECK(elem_sym(id, 3) == 1.0);
    CHECK_THROWS_AS(elem_sym(id, 4), std::invalid_argument);
}

TEST_CASE("rotations are orthogonal with unit determinant") {
    RandomStream rs(902);
    for (int rep = 0; rep < 10; ++rep) {
        for (int n : {1, 2, 3}) {
            Mat r = rs.rotation(n);
            CHECK(det(r) == doctest::Approx(1.0).epsilon(1e-12));
            Mat rtr = mat_mul(transpose(r), r);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    CHECK(rtr(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
    Mat f = reflection2();
    CHECK(det(f) == doctest::Approx(-1.0));
}

TEST_CASE("gauss_solve inverts well-conditioned systems and rejects singular ones") {
    RandomStream rs(903);
    for (int rep = 0; rep < 10; ++rep) {
        int k = 4;
        std::vector<double> a(static_cast<size_t>(k * k));
        std::vector<double> x_true(static_cast<size_t>(k));
        for (auto& v : a) v = rs.uniform(-1.0, 1.0);
        for (int i = 0; i < k; ++i) a[static_cast<size_t>(i * k + i)] += 4.0; // diagonally dominant
        for (auto& v : x_true) v = rs.uniform(-2.0, 2.0);
        std::vector<double> b(static_cast<size_t>(k), 0.0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) b[static_cast<size_t>(i)] += a[static_cast<size_t>(i * k + j)] * x_true[static_cast<size_t>(j)];
        std::vector<double> a2 = a, x = b;
        REQUIRE(gauss_solve(a2, x, k));
        for (int i = 0; i < k; ++i)
            CHECK(x[static_cast<size_t>(i)] == doctest::Approx(x_true[static_cast<size_t>(i)]).epsilon(1e-10));
    }
    std::vector<double> sing = {1.0, 2.0, 2.0, 4.0}; // rank one
    std::vector<double> rhs = {1.0, 1.0};
    CHECK_FALSE(gauss_solve(sing, rhs, 2));
}

TEST_CASE("pairwise_sum agrees with long double accumulation") {
    RandomStream rs(904);
    std::vector<double> xs;
    for (int i = 0; i < 5000; ++i) {
        double mag = std::pow(10.0, rs.uniform(-8.0, 8.0));
        xs.push_back((rs.u01() < 0.5 ? -1.0 : 1.0) * mag);
    }
    long double ref = 0.0L;
    for (double v : xs) ref += static_cast<long double>(v);
    double got = pairwise_sum(xs);
    double scale = 0.0;
    for (double v : xs) scale += std::fabs(v);
    CHECK(std::fabs(got - static_cast<double>(ref)) <= 1e-12 * scale);

    CHECK(pairwise_sum(nullptr, 0) == 0.0);
    std::vector<double> one = {3.25};
    CHECK(pairwise_sum(one) == 3.25);
}

TEST_CASE("derive_seed separates tags and indices") {
    uint64_t a = derive_seed(42, "alpha", 0);
    CHECK(a == derive_seed(42, "alpha", 0)); // deterministic
    CHECK(a != derive_seed(42, "alpha", 1));
    CHECK(a != derive_seed(42, "beta", 0));
    CHECK(a != derive_seed(43, "alpha", 0));
}

TEST_CASE("random stream ranges") {
    RandomStream rs(905);
    for (int i = 0; i < 1000; ++i) {
        double u = rs.u01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (int i = 0; i < 50; ++i) {
        int k = rs.uniform_int(-3, 3);
        CHECK(k >= -3);
        CHECK(k <= 3);
        CHECK(norm(rs.unit_vec(3)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("parallel_for writes every slot exactly once") {
    std::vector<double> out(257, -1.0);
    parallel_for(out.size(), [&](size_t i) { out[i] = static_cast<double>(i) * 1.5; });
    for (size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<double>(i) * 1.5);
}

TEST_CASE("polytope volume and moment: frozen simplices") {
    Polytope tri = make_polytope(2, {vec2(0, 0), vec2(1, 0), vec2(0, 1)});
    CHECK(volume(tri) == doctest::Approx(0.5).epsilon(1e-14));
    Vec mt = moment_vector(tri);
    CHECK(mt[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(mt[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));

    Polytope tet = make_polytope(3, {vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)});
    CHECK(tet.aff_dim == 3);
    CHECK(tet.faces.size() == 4);
    CHECK(volume(tet) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    Vec mv = moment_vector(tet);
    for (int c = 0; c < 3; ++c) CHECK(mv[c] == doctest::Approx(1.0 / 24.0).epsilon(1e-12));

    Polytope seg = make_polytope(1, {vec1(-0.5), vec1(2.0)});
    CHECK(volume(seg) == doctest::Approx(2.5));
    CHECK(moment_vector(seg)[0] == doctest::Approx(0.5 * (4.0 - 0.25)).epsilon(1e-13));
}

TEST_CASE("make_polytope drops interior points and is idempotent") {
    Polytope s = make_polytope(2, {vec2(1, 1), vec2(-1, -1), vec2(-1, 1), vec2(1, -1), vec2(0.2, 0.3)});
    CHECK(s.verts.size() == 4);
    CHECK(s.ring.size() == 4);
    CHECK(volume(s) == doctest::Approx(4.0).epsilon(1e-14));
    Polytope s2 = make_polytope(2, s.verts);
    REQUIRE(s2.verts.size() == s.verts.size());
    for (size_t i = 0; i < s.verts.size(); ++i) CHECK(s2.verts[i] == s.verts[i]);

    Polytope flat = make_polytope(2, {vec2(0, 0), vec2(1, 1)});
    CHECK(flat.aff_dim == 1);
    CHECK(volume(flat) == 0.0);
    CHECK(affine_hull_dim(2, flat.verts) == 1);
}

TEST_CASE("support values and containment") {
    Polytope s = make_polytope(2, {vec2(1, 1), vec2(-1, -1), vec2(-1, 1), vec2(1, -1)});
    CHECK(support_value(s, vec2(0.3, 0.4)) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(support_value(s, vec2(-2.0, 0.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(contains(s, vec2(0.99, -0.99)));
    CHECK(contains(s, vec2(1.0, 1.0)));
    CHECK_FALSE(contains(s, vec2(1.01, 0.0)));
}

TEST_CASE("polytope volume against a containment Monte Carlo estimate") {
    Polytope p = make_polytope(
        2, {vec2(0.9, 0.1), vec2(0.2, 1.0), vec2(-0.8, 0.5), vec2(-0.6, -0.7), vec2(0.4, -0.9)});
    double vol = volume(p);
    RandomStream rs(12345);
    int hits = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i)
        if (contains(p, rs.uniform_vec(2, -1.0, 1.0))) ++hits;
    double q = static_cast<double>(hits) / n;
    double est = 4.0 * q;
    double se = 4.0 * std::sqrt(q * (1.0 - q) / n);
    CHECK(std::fabs(est - vol) <= 3.0 * se);
}

TEST_CASE("polytope transforms act on volume and moment as expected") {
    RandomStream rs(906);
    Polytope p = make_polytope(2, {vec2(0.9, 0.1), vec2(0.2, 1.0), vec2(-0.8, 0.5), vec2(-0.6, -0.7)});
    double vol = volume(p);
    Vec mom = moment_vector(p);

    Polytope ps = polytope_scale(p, 1.7);
    CHECK(volume(ps) == doctest::Approx(1.7 * 1.7 * vol).epsilon(1e-12));

    Vec t = vec2(0.4, -1.1);
    Polytope pt = polytope_translate(p, t);
    CHECK(volume(pt) == doctest::Approx(vol).epsilon(1e-12));
    Vec mt = moment_vector(pt);
    CHECK(mt[0] == doctest::Approx(mom[0] + vol * t[0]).epsilon(1e-12));
    CHECK(mt[1] == doctest::Approx(mom[1] + vol * t[1]).epsilon(1e-12));

    Mat r = rs.rotation(2);
    Polytope pr = polytope_rotate(p, r);
    CHECK(volume(pr) == doctest::Approx(vol).epsilon(1e-12));
    Vec mr = moment_vector(pr);
    Vec expect = apply(r, mom);
    CHECK(norm(mr - expect) <= 1e-12);
}

TEST_CASE("grid constructor validates shape, finiteness, and convexity") {
    std::array<double, 3> lo{-1, -1, 0}, hi{1, 1, 0};
    std::array<int, 3> res{9, 9, 1};
    GridFunction q = sample_grid(2, lo, hi, res, [](const Vec& x) { return 0.5 * norm2(x); });
    CHECK(q.node_count() == 81);
    CHECK(is_discretely_convex(q));

    auto vals = q.values;
    vals[q.index(4, 4)] += 0.5; // bump the center: breaks convexity
    CHECK_THROWS_AS(make_grid_function(2, lo, hi, res, vals), std::invalid_argument);
    CHECK_FALSE(is_discretely_convex(make_grid_function_unchecked(2, lo, hi, res, vals)));

    vals = q.values;
    vals[0] = std::nan("");
    CHECK_THROWS_AS(make_grid_function(2, lo, hi, res, vals), std::invalid_argument);

    vals = q.values;
    vals.pop_back();
    CHECK_THROWS_AS(make_grid_function(2, lo, hi, res, vals), std::invalid_argument);

    CHECK_THROWS_AS(make_grid_function(2, hi, lo, res, q.values), std::invalid_argument);
}

TEST_CASE("grid eval is multilinear and clips to the box") {
    // multilinear interpolation reproduces a bilinear function exactly
    const int n = 33;
    std::array<double, 3> lo{-1, -1, 0}, hi{1, 1, 0};
    std::array<int, 3> res{n, n, 1};
    auto fb = [](double x, double y) { return 0.3 * x * y + 0.5 * x - 0.2 * y + 1.0; };
    std::vector<double> vals(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            vals[static_cast<size_t>(i) * n + j] = fb(-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1));
    GridFunction g = make_grid_function_unchecked(2, lo, hi, res, vals);
    for (double x = -0.99; x < 1.0; x += 0.173)
        for (double y = -0.99; y < 1.0; y += 0.191)
            CHECK(eval(g, vec2(x, y)) == doctest::Approx(fb(x, y)).epsilon(1e-13));
    CHECK_THROWS_AS(eval(g, vec2(1.001, 0.0)), std::domain_error);
    CHECK_THROWS_AS(eval(g, vec2(0.0, -1.2)), std::domain_error);
}

TEST_CASE("mollify keeps affine samples fixed") {
    GridFunction aff = sample_grid(2, {-1, -1, 0}, {1, 1, 0}, {33, 33, 1},
                                   [](const Vec& x) { return 0.7 * x[0] - 0.4 * x[1] + 0.2; });
    GridFunction m = mollify(aff);
    for (size_t i = 0; i < m.values.size(); ++i)
        CHECK(std::fabs(m.values[i] - aff.values[i]) <= 1e-14);
}

TEST_CASE("smoothness classifier separates quadratics from kinks") {
    GridFunction q = sample_grid(2, {-2, -2, 0}, {2, 2, 0}, {65, 65, 1},
                                 [](const Vec& x) { return 0.5 * norm2(x) + 0.3 * x[0]; });
    CHECK(looks_smooth(q));
    GridFunction ridge = sample_grid(2, {-2, -2, 0}, {2, 2, 0}, {65, 65, 1},
                                     [](const Vec& x) { return std::fabs(x[0] - 0.3) + 0.1 * norm2(x); });
    CHECK_FALSE(looks_smooth(ridge));
    GridFunction pl = sample_grid(1, {-2, 0, 0}, {2, 0, 0}, {65, 1, 1},
                                  [](const Vec& x) { return std::fabs(x[0] - 0.5); });
    CHECK(looks_piecewise_linear(pl));
}

TEST_CASE("coarsen keeps every other node") {
    GridFunction q = sample_grid(2, {-2, -2, 0}, {2, 2, 0}, {65, 65, 1},
                                 [](const Vec& x) { return 0.5 * norm2(x); });
    GridFunction c = coarsen(q);
    CHECK(c.res[0] == 33);
    CHECK(c.res[1] == 33);
    for (int i = 0; i < c.res[0]; ++i)
        for (int j = 0; j < c.res[1]; ++j) CHECK(c.at(i, j) == q.at(2 * i, 2 * j));
}

TEST_CASE("radial density families and admissibility") {
    RadialDensity hat = make_radial_density(DensityKind::alpha, DensityFamily::hat, 2.0);
    CHECK(hat(0.0) == 1.0);
    CHECK(hat(1.0) == doctest::Approx(0.5));
    CHECK(hat(2.0) == 0.0);
    CHECK(hat(5.0) == 0.0);
    CHECK(hat.admissible);
    CHECK(hat.origin_value == 1.0);

    RadialDensity bump = make_radial_density(DensityKind::alpha, DensityFamily::bump, 1.0);
    CHECK(bump(0.0) == doctest::Approx(1.0));
    CHECK(bump(0.5) == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-14));
    CHECK(bump(1.0) == 0.0);

    RadialDensity pw = make_radial_density(DensityKind::xi, DensityFamily::power, 2.0, 0.5);
    CHECK(pw.admissible);
    CHECK(pw(1.0) == doctest::Approx(0.5)); // 1^{-1/2} (1 - 1/2)
    RadialDensity hx = make_radial_density(DensityKind::xi, DensityFamily::hat, 1.0);
    CHECK(hx.admissible);

    CHECK_THROWS_AS(make_radial_density(DensityKind::xi, DensityFamily::power, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_radial_density(DensityKind::xi, DensityFamily::power, 1.0, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_radial_density(DensityKind::alpha, DensityFamily::power, 1.0, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_radial_density(DensityKind::alpha, DensityFamily::hat, 0.0),
                    std::invalid_argument);
}
