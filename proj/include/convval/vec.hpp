#pragma once
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace convval {

// small vector with runtime dimension 1..3
struct Vec {
    int n = 0;
    std::array<double, 3> a{0.0, 0.0, 0.0};

    Vec() = default;
    explicit Vec(int dim) : n(dim) {
        if (dim < 0 || dim > 3) throw std::invalid_argument("Vec: dimension must be in [0,3]");
    }

    double& operator[](int i) { return a[static_cast<size_t>(i)]; }
    double operator[](int i) const { return a[static_cast<size_t>(i)]; }

    Vec& operator+=(const Vec& o) { for (int i = 0; i < n; ++i) a[i] += o.a[i]; return *this; }
    Vec& operator-=(const Vec& o) { for (int i = 0; i < n; ++i) a[i] -= o.a[i]; return *this; }
    Vec& operator*=(double s)     { for (int i = 0; i < n; ++i) a[i] *= s; return *this; }

    friend Vec operator+(Vec x, const Vec& y) { x += y; return x; }
    friend Vec operator-(Vec x, const Vec& y) { x -= y; return x; }
    friend Vec operator*(double s, Vec x) { x *= s; return x; }
    friend Vec operator*(Vec x, double s) { x *= s; return x; }
    friend Vec operator-(Vec x) { x *= -1.0; return x; }

    friend bool operator==(const Vec& x, const Vec& y) {
        if (x.n != y.n) return false;
        for (int i = 0; i < x.n; ++i) if (x.a[i] != y.a[i]) return false;
        return true;
    }
};

inline Vec vec1(double x) { Vec v(1); v[0] = x; return v; }
inline Vec vec2(double x, double y) { Vec v(2); v[0] = x; v[1] = y; return v; }
inline Vec vec3(double x, double y, double z) { Vec v(3); v[0] = x; v[1] = y; v[2] = z; return v; }

inline Vec zero_vec(int n) { return Vec(n); }

inline double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (int i = 0; i < x.n; ++i) s += x[i] * y[i];
    return s;
}

inline double norm2(const Vec& x) { return dot(x, x); }
inline double norm(const Vec& x) { return std::sqrt(norm2(x)); }

inline double norm_inf(const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < x.n; ++i) s = std::max(s, std::abs(x[i]));
    return s;
}

inline double cross2(const Vec& o, const Vec& p, const Vec& q) {
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
}

// small square matrix with runtime dimension 1..3
struct Mat {
    int n = 0;
    std::array<std::array<double, 3>, 3> m{};

    Mat() = default;
    explicit Mat(int dim) : n(dim) {
        if (dim < 1 || dim > 3) throw std::invalid_argument("Mat: dimension must be in [1,3]");
        for (auto& r : m) r.fill(0.0);
    }

    double& operator()(int i, int j) { return m[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    double operator()(int i, int j) const { return m[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    static Mat identity(int dim) {
        Mat r(dim);
        for (int i = 0; i < dim; ++i) r(i, i) = 1.0;
        return r;
    }
};

inline Vec apply(const Mat& A, const Vec& x) {
    Vec r(A.n);
    for (int i = 0; i < A.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.n; ++j) s += A(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

inline Mat transpose(const Mat& A) {
    Mat r(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) r(i, j) = A(j, i);
    return r;
}

inline Mat mat_mul(const Mat& A, const Mat& B) {
    Mat r(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            double s = 0.0;
            for (int k = 0; k < A.n; ++k) s += A(i, k) * B(k, j);
            r(i, j) = s;
        }
    return r;
}

inline double det(const Mat& A) {
    switch (A.n) {
        case 1: return A(0, 0);
        case 2: return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
        default:
            return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1))
                 - A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0))
                 + A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    }
}

// jth elementary symmetric function of the eigenvalues of a symmetric matrix,
// via characteristic-polynomial coefficients (closed forms for n <= 3)
inline double elem_sym(const Mat& A, int j) {
    if (j < 0 || j > A.n) throw std::invalid_argument("elem_sym: j out of range");
    if (j == 0) return 1.0;
    if (j == A.n) return det(A);
    if (j == 1) {
        double t = 0.0;
        for (int i = 0; i < A.n; ++i) t += A(i, i);
        return t;
    }
    // j == 2, n == 3: sum of principal 2x2 minors
    return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)
         + A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)
         + A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
}

// rotation by angle in the plane
inline Mat rotation2(double angle) {
    Mat r(2);
    r(0, 0) = std::cos(angle); r(0, 1) = -std::sin(angle);
    r(1, 0) = std::sin(angle); r(1, 1) = std::cos(angle);
    return r;
}

// reflection across the x1-axis
inline Mat reflection2() {
    Mat r = Mat::identity(2);
    r(1, 1) = -1.0;
    return r;
}

// rotation about a unit axis (n = 3), Rodrigues form
inline Mat rotation3(const Vec& axis, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    Mat r(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (1.0 - c) * axis[i] * axis[j] + (i == j ? c : 0.0);
    r(0, 1) -= s * axis[2]; r(0, 2) += s * axis[1];
    r(1, 0) += s * axis[2]; r(1, 2) -= s * axis[0];
    r(2, 0) -= s * axis[1]; r(2, 1) += s * axis[0];
    return r;
}

// dense gaussian elimination with partial pivoting for k x k systems (k small);
// A is row-major k*k, overwritten; returns false when the pivot collapses
inline bool gauss_solve(std::vector<double>& A, std::vector<double>& b, int k, double pivot_tol = 1e-13) {
    double scale = pivot_tol;
    for (double x : A) scale = std::max(scale, std::abs(x));
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(A[r * k + col]) > std::abs(A[piv * k + col])) piv = r;
        if (std::abs(A[piv * k + col]) <= pivot_tol * scale) return false;
        if (piv != col) {
            for (int c = col; c < k; ++c) std::swap(A[col * k + c], A[piv * k + c]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < k; ++r) {
            double f = A[r * k + col] / A[col * k + col];
            if (f == 0.0) continue;
            for (int c = col; c < k; ++c) A[r * k + c] -= f * A[col * k + c];
            b[r] -= f * b[col];
        }
    }
    for (int r = k - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < k; ++c) s -= A[r * k + c] * b[c];
        b[r] = s / A[r * k + r];
    }
    return true;
}

} // namespace convval
