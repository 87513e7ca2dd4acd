#pragma once

#include "revisop/modelspace.hpp"
#include "revisop/tolerance.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace revisop {

/// Segment of constant geodesic curvature.
struct Arc {
    double kappa = 0.0;
    double s = 0.0;
};

/// Piece of a closed curve: starts `offset` into arc `start_index` and runs
/// forward for `extent` (wrapping around the cycle).
struct SubArc {
    std::size_t start_index = 0;
    double offset = 0.0;
    double extent = 0.0;
};

/// Cyclic chain of constant-curvature arcs; turns[i] is the corner turn
/// applied after arcs[i]. Construction checks the structural invariants
/// (sizes, finite data, arc lengths, a valid start pose). Closure and
/// convexity are properties queried by the operations that need them.
class ClosedCurve {
public:
    ClosedCurve(ModelSpace space, Pose start, std::vector<Arc> arcs, std::vector<double> turns,
                const Tolerances& tol = kDefaultTolerances);

    [[nodiscard]] const ModelSpace& space() const noexcept { return space_; }
    [[nodiscard]] const Pose& start() const noexcept { return start_; }
    [[nodiscard]] const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    [[nodiscard]] const std::vector<double>& turns() const noexcept { return turns_; }
    [[nodiscard]] std::size_t size() const noexcept { return arcs_.size(); }
    [[nodiscard]] const Tolerances& tolerances() const noexcept { return tol_; }

    /// Pose at the start of every arc (after the preceding turn).
    [[nodiscard]] std::vector<Pose> arc_start_poses() const;
    /// Pose reached after all arcs and turns; equals start() for a closed curve.
    [[nodiscard]] Pose end_pose() const;
    [[nodiscard]] double closure_residual() const;
    [[nodiscard]] bool is_closed() const;

private:
    ModelSpace space_;
    Pose start_;
    std::vector<Arc> arcs_;
    std::vector<double> turns_;
    Tolerances tol_;
};

/// Pose after running through `arcs`, turning by turns[i] after arcs[i].
[[nodiscard]] Pose trace(const ModelSpace& space, const Pose& start, std::span<const Arc> arcs,
                         std::span<const double> turns, const Tolerances& tol = kDefaultTolerances);

[[nodiscard]] double length(const ClosedCurve& curve) noexcept;

/// Integral of kappa over the arcs plus every corner turn.
[[nodiscard]] double total_turning(const ClosedCurve& curve) noexcept;

/// Integral geodesic curvature of a sub-arc: kappa integrated over the
/// covered length plus the corner turns lying strictly inside the part.
[[nodiscard]] double turning(const ClosedCurve& curve, const SubArc& part);

struct ConvexityVerdict {
    bool convex = false;
    std::optional<SubArc> witness; ///< sub-arc with turning < lambda * extent
    std::string reason;
};

/// For piecewise constant-curvature curves the infimum of turning/extent over
/// sub-arcs is min kappa_i as long as no turn is negative.
[[nodiscard]] ConvexityVerdict is_lambda_convex(const ClosedCurve& curve, double lambda);

/// Enclosed area by Green's theorem in geodesic polar form around an interior
/// point, no cross-check.
[[nodiscard]] double quadrature_area(const ClosedCurve& curve);

/// Enclosed area. For c != 0 the quadrature value is checked against
/// Gauss-Bonnet, (2 pi - total turning) / c; disagreement throws
/// ConsistencyError. Throws InputError for a curve that does not close.
[[nodiscard]] double area(const ClosedCurve& curve);

/// c * area + total turning - 2 pi, with the quadrature area.
[[nodiscard]] double gauss_bonnet_residual(const ClosedCurve& curve);

/// Points along the curve, `per_arc` per arc (arc start included, end excluded).
[[nodiscard]] std::vector<Vec3> sample_points(const ClosedCurve& curve, std::size_t per_arc);

}  // namespace revisop
