#pragma once

#include "revisop/tolerance.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace revisop {

/// Which closed form governs the minimal area for (c, lambda).
enum class BoundCase {
    euclidean,              ///< c = 0
    spherical,              ///< c = k^2 > 0
    hyperbolic_strong,      ///< c = -k^2, lambda > k: circles
    hyperbolic_horocycle,   ///< c = -k^2, lambda = k: horocycles
    hyperbolic_equidistant, ///< c = -k^2, lambda < k: equidistants
};

[[nodiscard]] std::string_view to_string(BoundCase tag) noexcept;
[[nodiscard]] BoundCase classify(double c, double lambda);

struct BoundQuery {
    double c = 0.0;
    double lambda = 1.0;
    double L = 0.0;
};

struct BoundResult {
    double F_min = 0.0;
    BoundCase case_tag = BoundCase::euclidean;
    double cap = 0.0;    ///< +infinity when the perimeter is unbounded
    bool at_cap = false; ///< L equals the cap; the lune is a full circle
};

/// Largest perimeter a lambda-convex closed curve can have in curvature c:
/// 2 pi / sqrt(lambda^2 + c) when lambda^2 + c > 0, +infinity otherwise.
[[nodiscard]] double perimeter_cap(double c, double lambda);

/// Minimal area of a domain with lambda-convex boundary of perimeter L.
///
/// With w = sqrt(lambda^2 + c) and x = w L / 4 the bound is, for c != 0,
///   F = 4 (atan(a tan x) - a x) / c,   a = lambda / w,
/// with tan/atan replaced by tanh/atan when lambda^2 + c < 0, and the
/// rational limit 4 (z - atan z) / k^2, z = k L / 4, on the horocycle line.
/// The evaluation is rearranged so that no branch loses accuracy as c -> 0
/// or lambda -> k; see bounds.cpp.
///
/// Throws InputError for lambda <= 0 or L <= 0 and DomainError (naming the
/// cap) for L above the cap. L equal to the cap is allowed.
[[nodiscard]] BoundResult reverse_bound(const BoundQuery& query, const Tolerances& tol = kDefaultTolerances);

/// L^2 - 4 pi F + c F^2: non-negative for every disc-type domain.
[[nodiscard]] double classical_isoperimetric_gap(double c, double L, double F) noexcept;

/// L^2 / (2 (2 pi - w+)) with w+ = max(c, 0) F_candidate, the positive part
/// of the total curvature of the domain. Throws DomainError when w+ >= 2 pi.
[[nodiscard]] double alexandrov_upper_bound(double c, double F_candidate, double L);

struct ContinuityRow {
    double eps = 0.0;
    double dev_spherical = 0.0;             ///< c = +eps^2 against c = 0
    double dev_hyperbolic = 0.0;            ///< c = -eps^2 against c = 0
    double dev_strong_vs_horocycle = 0.0;   ///< c = -(lambda^2 - eps^2) against c = -lambda^2
    double dev_equidistant_vs_horocycle = 0.0; ///< c = -(lambda^2 + eps^2) against c = -lambda^2
};

struct ContinuityReport {
    double lambda = 0.0;
    double L = 0.0;
    std::vector<ContinuityRow> rows;
    /// rows[i+1].dev / rows[i].dev, four columns per step.
    std::vector<std::array<double, 4>> ratios;
};

inline constexpr std::array<double, 2> kDefaultEpsLadder{1e-4, 5e-5};

/// Relative deviations between the closed forms on either side of the case
/// boundaries c = 0 and lambda^2 + c = 0, for each eps of the ladder. In both
/// protocols c moves by eps^2, so the deviations shrink like eps^2.
[[nodiscard]] ContinuityReport limit_continuity_check(double lambda, double L,
                                                      std::span<const double> eps_ladder = kDefaultEpsLadder);

namespace detail {
/// y - sin(y), z - atan(z), tan(x)/x, tanh(x)/x without cancellation.
[[nodiscard]] double sin_excess(double y) noexcept;
[[nodiscard]] double atan_excess(double z) noexcept;
[[nodiscard]] double tanc(double x, bool series) noexcept;
[[nodiscard]] double tanhc(double x, bool series) noexcept;
}  // namespace detail

}  // namespace revisop
