#pragma once

namespace revisop {

/// Every numerical threshold used by the library, in one record.
struct Tolerances {
    double pose = 1e-12;          ///< unit-norm / embedding constraint of a Pose
    double closure = 1e-9;        ///< end pose vs start pose of a closed curve
    double area_agreement = 1e-8; ///< relative, quadrature vs Gauss-Bonnet area
    double quadrature = 1e-10;    ///< absolute, per arc
    double min_arc_length = 1e-12;
    double series_switch = 1e-8;  ///< |D| s^2 below which generalized trig uses series
    double near_horocycle = 1e-6; ///< |λ²-k²| / k² below which tan(x)/x uses series
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace revisop
