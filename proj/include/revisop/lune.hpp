#pragma once

#include "revisop/bounds.hpp"
#include "revisop/curves.hpp"
#include "revisop/errors.hpp"

#include <string>
#include <vector>

namespace revisop {

/// Parameters of the extremal lambda-convex lune of perimeter L.
struct LuneSpec {
    double c = 0.0;
    double lambda = 1.0;
    double L = 0.0;
    double F_min = 0.0;
    double theta = 0.0; ///< interior vertex angle, (lambda L + c F_min) / 2
    BoundCase case_tag = BoundCase::euclidean;
    bool at_cap = false;
};

[[nodiscard]] LuneSpec lune_spec(double c, double lambda, double L);

/// Interior vertex angle from its own closed form,
/// 2 atan(lambda / w * tan(w L / 4)) with w^2 = lambda^2 + c (tanh form when
/// w^2 < 0, 2 atan(lambda L / 4) when w = 0). Switches to
/// pi - 2 atan(w / lambda * cot(w L / 4)) once w L / 4 is within 1e-6 of pi/2.
[[nodiscard]] double vertex_angle(double c, double lambda, double L);

/// Two arcs of curvature lambda and length L/2 starting from the canonical
/// pose, each followed by the turn pi - theta.
[[nodiscard]] ClosedCurve build_lune(double c, double lambda, double L, const Tolerances& tol = kDefaultTolerances);

/// Interior angle at the first vertex measured geometrically: twice the angle
/// between the first arc's tangent and the geodesic chord to the second vertex.
[[nodiscard]] double measured_vertex_angle(const ClosedCurve& lune);

struct CertificationReport {
    double length = 0.0;
    double area = 0.0;
    double F_min = 0.0;
    double equality_gap = 0.0; ///< |area - F_min| / F_min
    bool lambda_convex = false;
    double gauss_bonnet_residual = 0.0;
    double closure_residual = 0.0;
    BoundCase case_tag = BoundCase::euclidean;
    bool at_cap = false;
    std::vector<std::string> failures;

    [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

/// Thrown by certify_equality; carries the full report.
class CertificationFailure : public ConsistencyError {
public:
    explicit CertificationFailure(CertificationReport report);
    [[nodiscard]] const CertificationReport& report() const noexcept { return report_; }

private:
    CertificationReport report_;
};

inline constexpr double kEqualityGapTolerance = 1e-8;
inline constexpr double kGaussBonnetTolerance = 1e-8;

/// Runs every equality-case check and records the ones that fail.
[[nodiscard]] CertificationReport inspect_equality(const ClosedCurve& curve, double lambda);

/// inspect_equality, throwing CertificationFailure when any check fails.
CertificationReport certify_equality(const ClosedCurve& curve, double lambda);

}  // namespace revisop
