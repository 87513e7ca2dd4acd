#pragma once

#include "revisop/tolerance.hpp"
#include "revisop/vec3.hpp"

#include <string_view>

namespace revisop {

enum class Geometry { euclidean, spherical, hyperbolic };

[[nodiscard]] std::string_view to_string(Geometry g) noexcept;

/// Generalized trigonometric functions of a curvature parameter `curv`.
///
/// sn is the solution of f'' = -curv f with f(0) = 0, f'(0) = 1, cs = sn'
/// and vers = (1 - cs) / curv = integral of sn. All three are analytic in
/// curv; near curv * x^2 = 0 they switch to truncated power series.
namespace gentrig {

[[nodiscard]] double sn(double curv, double x, double series_switch = kDefaultTolerances.series_switch);
[[nodiscard]] double cs(double curv, double x, double series_switch = kDefaultTolerances.series_switch);
[[nodiscard]] double vers(double curv, double x, double series_switch = kDefaultTolerances.series_switch);

}  // namespace gentrig

/// A point and a unit tangent direction, in the ambient coordinates of the
/// space's embedding chart.
struct Pose {
    Vec3 position;
    Vec3 direction;
};

/// Simply connected two-dimensional space of constant curvature c.
///
/// Charts: the plane z = 0 for c = 0; the sphere |p| = 1/k centred at the
/// origin for c = k^2; the upper sheet of <p,p> = -1/k^2 in Minkowski space
/// (signature + + -) for c = -k^2. In every case <p,p> = 1/c when c != 0.
class ModelSpace {
public:
    explicit ModelSpace(double c);

    [[nodiscard]] double curvature() const noexcept { return c_; }
    [[nodiscard]] double k() const noexcept { return k_; }
    [[nodiscard]] Geometry geometry() const noexcept { return geometry_; }

    /// Ambient bilinear form: Euclidean for c >= 0, Minkowski for c < 0.
    [[nodiscard]] double dot(const Vec3& a, const Vec3& b) const noexcept;

    [[nodiscard]] Vec3 base_point() const noexcept;
    /// Base point heading along +x.
    [[nodiscard]] Pose canonical_pose() const noexcept;

    /// Unit tangent at pose.position obtained by a quarter turn to the left.
    [[nodiscard]] Vec3 left_normal(const Pose& pose) const noexcept;

    [[nodiscard]] bool contains(const Vec3& p, double tol = kDefaultTolerances.pose) const noexcept;
    [[nodiscard]] bool is_valid(const Pose& pose, double tol = kDefaultTolerances.pose) const noexcept;
    /// Throws InputError naming the violated constraint.
    void validate(const Pose& pose, double tol = kDefaultTolerances.pose) const;

    /// Scale factor used for constraint residuals; the hyperboloid chart has
    /// coordinates growing like cosh(distance).
    [[nodiscard]] double residual_scale(const Vec3& p) const noexcept;

    /// Nearest point of the model space (radial projection in the chart).
    [[nodiscard]] Vec3 project(const Vec3& p) const;

private:
    double c_;
    double k_;
    Geometry geometry_;
};

/// Pose after tracing length s along the curve of constant geodesic
/// curvature kappa (positive turns left) starting at `start`.
[[nodiscard]] Pose propagate(const ModelSpace& space, const Pose& start, double kappa, double s,
                             const Tolerances& tol = kDefaultTolerances);

namespace detail {
/// propagate without argument validation, for inner loops over poses that
/// are already known to be valid.
[[nodiscard]] Pose propagate_unchecked(const ModelSpace& space, const Pose& start, double kappa, double s,
                                       double series_switch = kDefaultTolerances.series_switch) noexcept;
/// Pulls a drifted pose back onto the model surface: rescales the position
/// and re-orthonormalises the direction. Identity in the plane.
[[nodiscard]] Pose renormalize(const ModelSpace& space, Pose pose) noexcept;
}  // namespace detail

/// Same position, direction turned by `angle` (positive = left).
[[nodiscard]] Pose rotate(const ModelSpace& space, const Pose& start, double angle);

/// Geodesic distance.
[[nodiscard]] double distance(const ModelSpace& space, const Vec3& p, const Vec3& q);

/// Unit tangent at p of the shortest geodesic from p to q.
[[nodiscard]] Vec3 direction_toward(const ModelSpace& space, const Vec3& p, const Vec3& q);

/// Signed angle from direction a to direction b, both tangent at pose.position;
/// `pose.direction` supplies the orientation reference.
[[nodiscard]] double signed_angle(const ModelSpace& space, const Pose& pose, const Vec3& b);

/// Combined position/direction mismatch of two poses (distance plus the
/// ambient norm of the direction difference scaled back to unit size).
[[nodiscard]] double pose_mismatch(const ModelSpace& space, const Pose& a, const Pose& b);

}  // namespace revisop
