#pragma once
#include <string>

#include "convval/vec.hpp"

namespace convval {

enum class DensityKind { alpha, xi };
enum class DensityFamily { hat, bump, power };

// radial profile with bounded support; `alpha` profiles are continuous on
// [0, inf), `xi` profiles on (0, inf) with an admissibility certificate
// (xi(t) * t -> 0 as t -> 0+) required by the t-operators at top degree
struct RadialDensity {
    DensityKind kind = DensityKind::alpha;
    DensityFamily family = DensityFamily::hat;
    double support_radius = 1.0;
    double exponent = 0.0;     // power family only
    double origin_value = 0.0; // kind alpha only
    bool admissible = false;

    double operator()(double t) const;
    std::string describe() const;
};

// families: hat t -> max(0, 1 - t/R); bump: smooth, compactly supported;
// power (kind xi only): t -> t^-p * max(0, 1 - t/R), p < 1.
// throws std::invalid_argument for xi power with p >= 1 (inadmissible).
RadialDensity make_radial_density(DensityKind kind, DensityFamily family, double R, double p = 0.0);

} // namespace convval
