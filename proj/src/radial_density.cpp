#include "convval/radial_density.hpp"

#include <cmath>
#include <stdexcept>

namespace convval {
namespace {

double hat_profile(double t, double R) { return std::max(0.0, 1.0 - t / R); }

double bump_profile(double t, double R) {
    double s = t / R;
    if (s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

// sampled admissibility certificate: sup |xi(t) t| on a dyadic mesh of (0, delta]
// must decrease below tolerance
bool check_xi_admissible(const RadialDensity& d) {
    double delta = 0.5 * std::min(d.support_radius, 1.0);
    double prev = std::abs(d(delta) * delta);
    double t = delta;
    for (int k = 0; k < 60; ++k) {
        t *= 0.5;
        double cur = std::abs(d(t) * t);
        if (cur > prev + 1e-12) return false; // not decreasing toward 0
        prev = cur;
        if (cur <= 1e-6) return true;
    }
    return prev <= 1e-6;
}

} // namespace

double RadialDensity::operator()(double t) const {
    if (t > support_radius) return 0.0;
    switch (family) {
        case DensityFamily::hat: return hat_profile(t, support_radius);
        case DensityFamily::bump: return bump_profile(t, support_radius);
        case DensityFamily::power: return std::pow(t, -exponent) * hat_profile(t, support_radius);
    }
    return 0.0;
}

std::string RadialDensity::describe() const {
    std::string k = kind == DensityKind::alpha ? "alpha" : "xi";
    std::string fam = family == DensityFamily::hat ? "hat"
                    : family == DensityFamily::bump ? "bump" : "power";
    std::string s = k + ":" + fam + "(R=" + std::to_string(support_radius);
    if (family == DensityFamily::power) s += ",p=" + std::to_string(exponent);
    return s + ")";
}

RadialDensity make_radial_density(DensityKind kind, DensityFamily family, double R, double p) {
    if (!(R > 0.0)) throw std::invalid_argument("radial density: support radius must be > 0");
    if (family == DensityFamily::power && kind != DensityKind::xi)
        throw std::invalid_argument("radial density: power family requires kind xi");
    if (family == DensityFamily::power && p >= 1.0)
        throw std::invalid_argument("radial density: power exponent p >= 1 is inadmissible (xi(t) t does not vanish at 0+)");
    RadialDensity d;
    d.kind = kind;
    d.family = family;
    d.support_radius = R;
    d.exponent = family == DensityFamily::power ? p : 0.0;
    if (kind == DensityKind::alpha) {
        d.origin_value = d(0.0);
        d.admissible = true;
    } else {
        d.admissible = check_xi_admissible(d);
    }
    return d;
}

} // namespace convval
