#include "revisop/modelspace.hpp"

#include "revisop/errors.hpp"

#include <cmath>
#include <string>

namespace revisop {

std::string_view to_string(Geometry g) noexcept
{
    switch (g) {
    case Geometry::euclidean: return "euclidean";
    case Geometry::spherical: return "spherical";
    case Geometry::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

namespace gentrig {

double sn(double curv, double x, double series_switch)
{
    const double t = curv * x * x;
    if (std::abs(t) < series_switch)
        return x * (1.0 - t / 6.0 + t * t / 120.0);
    const double w = std::sqrt(std::abs(curv));
    return curv > 0.0 ? std::sin(w * x) / w : std::sinh(w * x) / w;
}

double vers(double curv, double x, double series_switch)
{
    const double t = curv * x * x;
    if (std::abs(t) < series_switch)
        return 0.5 * x * x * (1.0 - t / 12.0 + t * t / 360.0);
    const double w = std::sqrt(std::abs(curv));
    // 1 - cos(wx) = 2 sin^2(wx/2); avoids cancellation for moderate wx
    const double h = curv > 0.0 ? std::sin(0.5 * w * x) : std::sinh(0.5 * w * x);
    return 2.0 * h * h / std::abs(curv);
}

double cs(double curv, double x, double series_switch)
{
    const double t = curv * x * x;
    if (std::abs(t) < series_switch)
        return 1.0 - 0.5 * t * (1.0 - t / 12.0 + t * t / 360.0);
    const double w = std::sqrt(std::abs(curv));
    return curv > 0.0 ? std::cos(w * x) : std::cosh(w * x);
}

}  // namespace gentrig

ModelSpace::ModelSpace(double c)
    : c_(c)
    , k_(std::sqrt(std::abs(c)))
    , geometry_(c > 0.0 ? Geometry::spherical : (c < 0.0 ? Geometry::hyperbolic : Geometry::euclidean))
{
    if (!std::isfinite(c))
        throw InputError("curvature must be finite");
}

double ModelSpace::dot(const Vec3& a, const Vec3& b) const noexcept
{
    const double planar = a.x * b.x + a.y * b.y;
    return geometry_ == Geometry::hyperbolic ? planar - a.z * b.z : planar + a.z * b.z;
}

Vec3 ModelSpace::base_point() const noexcept
{
    if (geometry_ == Geometry::euclidean)
        return {};
    return {0.0, 0.0, 1.0 / k_};
}

Pose ModelSpace::canonical_pose() const noexcept
{
    return {base_point(), {1.0, 0.0, 0.0}};
}

Vec3 ModelSpace::left_normal(const Pose& pose) const noexcept
{
    const Vec3& t = pose.direction;
    switch (geometry_) {
    case Geometry::euclidean: return {-t.y, t.x, 0.0};
    case Geometry::spherical: return cross(k_ * pose.position, t);
    case Geometry::hyperbolic: {
        // Minkowski cross product J (u x t), J = diag(1, 1, -1)
        const Vec3 n = cross(k_ * pose.position, t);
        return {n.x, n.y, -n.z};
    }
    }
    return {};
}

double ModelSpace::residual_scale(const Vec3& p) const noexcept
{
    if (geometry_ != Geometry::hyperbolic)
        return 1.0;
    return 1.0 + k_ * k_ * euclidean_dot(p, p);
}

bool ModelSpace::contains(const Vec3& p, double tol) const noexcept
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        return false;
    switch (geometry_) {
    case Geometry::euclidean: return p.z == 0.0;
    case Geometry::spherical: return std::abs(c_ * dot(p, p) - 1.0) <= tol;
    case Geometry::hyperbolic:
        return p.z > 0.0 && std::abs(c_ * dot(p, p) - 1.0) <= tol * residual_scale(p);
    }
    return false;
}

bool ModelSpace::is_valid(const Pose& pose, double tol) const noexcept
{
    if (!contains(pose.position, tol))
        return false;
    const Vec3& t = pose.direction;
    if (!std::isfinite(t.x) || !std::isfinite(t.y) || !std::isfinite(t.z))
        return false;
    const double scale = residual_scale(pose.position);
    if (std::abs(dot(t, t) - 1.0) > tol * scale)
        return false;
    if (geometry_ == Geometry::euclidean)
        return t.z == 0.0;
    return std::abs(k_ * dot(pose.position, t)) <= tol * scale;
}

void ModelSpace::validate(const Pose& pose, double tol) const
{
    if (!contains(pose.position, tol))
        throw InputError("pose position is not a point of the " + std::string(to_string(geometry_)) +
                         " model space");
    if (!is_valid(pose, tol))
        throw InputError("pose direction is not a unit tangent vector at its position");
}

Vec3 ModelSpace::project(const Vec3& p) const
{
    switch (geometry_) {
    case Geometry::euclidean: return {p.x, p.y, 0.0};
    case Geometry::spherical: {
        const double n = euclidean_norm(p);
        if (!(n > 0.0))
            throw InputError("cannot project the origin onto the sphere");
        return (1.0 / (k_ * n)) * p;
    }
    case Geometry::hyperbolic: {
        const double q = -dot(p, p);
        if (!(q > 0.0) || p.z <= 0.0)
            throw InputError("point is outside the future light cone");
        return (1.0 / (k_ * std::sqrt(q))) * p;
    }
    }
    return p;
}

namespace {

// Poses far out on the hyperboloid carry |p|^2-sized normals, so the frame
// arithmetic runs in extended precision and rounds once at the end.
using real = long double;

struct V {
    real x = 0, y = 0, z = 0;
};

V operator+(V a, V b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
V operator*(real f, V a) { return {f * a.x, f * a.y, f * a.z}; }
V widen(const Vec3& v) { return {v.x, v.y, v.z}; }
Vec3 narrow(const V& v)
{
    return {static_cast<double>(v.x), static_cast<double>(v.y), static_cast<double>(v.z)};
}

real dot(Geometry g, V a, V b)
{
    const real planar = a.x * b.x + a.y * b.y;
    return g == Geometry::hyperbolic ? planar - a.z * b.z : planar + a.z * b.z;
}

V normal(Geometry g, real k, V p, V t)
{
    switch (g) {
    case Geometry::euclidean: return {-t.y, t.x, 0};
    case Geometry::spherical:
    case Geometry::hyperbolic: {
        const V n{k * (p.y * t.z - p.z * t.y), k * (p.z * t.x - p.x * t.z), k * (p.x * t.y - p.y * t.x)};
        return g == Geometry::hyperbolic ? V{n.x, n.y, -n.z} : n;
    }
    }
    return {};
}

Pose finish(const ModelSpace& space, V p, V t)
{
    const Geometry g = space.geometry();
    if (g != Geometry::euclidean) {
        const real c = space.curvature();
        const real q = c * dot(g, p, p);
        if (q > 0) {
            p = (1 / std::sqrt(q)) * p;
            t = t + (-c * dot(g, p, t)) * p;
            const real t2 = dot(g, t, t);
            if (t2 > 0)
                t = (1 / std::sqrt(t2)) * t;
        }
    }
    return {narrow(p), narrow(t)};
}

}  // namespace

namespace detail {

Pose renormalize(const ModelSpace& space, Pose pose) noexcept
{
    if (space.geometry() == Geometry::euclidean)
        return pose;
    return finish(space, widen(pose.position), widen(pose.direction));
}

Pose propagate_unchecked(const ModelSpace& space, const Pose& start, double kappa, double s,
                         double series_switch) noexcept
{
    // Frenet system p' = T, T' = kappa N - c p, N' = -kappa T has the
    // constant generator A with A^3 = -(kappa^2 + c) A, hence
    // exp(sA) = I + sn(s) A + vers(s) A^2.
    const Geometry g = space.geometry();
    const real c = space.curvature();
    const real kap = kappa;
    const real len = s;
    const real d = kap * kap + c;
    const real t = d * len * len;
    real sn;
    real vs;
    if (std::abs(t) < series_switch) {
        sn = len * (1 - t / 6 + t * t / 120);
        vs = len * len / 2 * (1 - t / 12 + t * t / 360);
    } else {
        const real w = std::sqrt(std::abs(d));
        const real h = d > 0 ? std::sin(w * len / 2) : std::sinh(w * len / 2);
        sn = d > 0 ? std::sin(w * len) / w : std::sinh(w * len) / w;
        vs = 2 * h * h / std::abs(d);
    }
    const real cs = 1 - d * vs;

    const V p = widen(start.position);
    const V tv = widen(start.direction);
    const V n = normal(g, space.k(), p, tv);
    if (g == Geometry::euclidean)
        return {narrow(p + sn * tv + (kap * vs) * n), narrow(cs * tv + (kap * sn) * n)};
    return finish(space, (1 - c * vs) * p + sn * tv + (kap * vs) * n, (-c * sn) * p + cs * tv + (kap * sn) * n);
}

}  // namespace detail

Pose propagate(const ModelSpace& space, const Pose& start, double kappa, double s, const Tolerances& tol)
{
    if (!(s >= 0.0) || !std::isfinite(s))
        throw InputError("arc length must be finite and non-negative");
    if (!std::isfinite(kappa))
        throw InputError("geodesic curvature must be finite");
    space.validate(start, tol.pose);
    return detail::propagate_unchecked(space, start, kappa, s, tol.series_switch);
}

Pose rotate(const ModelSpace& space, const Pose& start, double angle)
{
    const V p = widen(start.position);
    const V n = normal(space.geometry(), space.k(), p, widen(start.direction));
    const V t = static_cast<real>(std::cos(angle)) * widen(start.direction) + static_cast<real>(std::sin(angle)) * n;
    if (space.geometry() == Geometry::euclidean)
        return {start.position, narrow(t)};
    return finish(space, p, t);
}

double distance(const ModelSpace& space, const Vec3& p, const Vec3& q)
{
    if (!space.contains(p) || !space.contains(q))
        throw InputError("distance: point not in model space");
    switch (space.geometry()) {
    case Geometry::euclidean: return euclidean_norm(p - q);
    case Geometry::spherical: {
        const double r = 1.0 / space.k();
        return r * std::atan2(euclidean_norm(cross(p, q)), euclidean_dot(p, q));
    }
    case Geometry::hyperbolic: {
        const double r = 1.0 / space.k();
        const Vec3 d = q - p;
        const double chord = std::sqrt(std::max(0.0, space.dot(d, d)));
        return 2.0 * r * std::asinh(chord / (2.0 * r));
    }
    }
    return 0.0;
}

Vec3 direction_toward(const ModelSpace& space, const Vec3& p, const Vec3& q)
{
    if (!space.contains(p) || !space.contains(q))
        throw InputError("direction_toward: point not in model space");
    Vec3 v = q - p;
    if (space.geometry() != Geometry::euclidean)
        v = q - (space.curvature() * space.dot(p, q)) * p;
    const double n2 = space.dot(v, v);
    if (!(n2 > 0.0))
        throw InputError("direction_toward: points coincide or are antipodal");
    return (1.0 / std::sqrt(n2)) * v;
}

double signed_angle(const ModelSpace& space, const Pose& pose, const Vec3& b)
{
    const Vec3 n = space.left_normal(pose);
    return std::atan2(space.dot(b, n), space.dot(b, pose.direction));
}

double pose_mismatch(const ModelSpace& space, const Pose& a, const Pose& b)
{
    const double d = distance(space, a.position, b.position);
    return d + std::abs(signed_angle(space, a, b.direction));
}

}  // namespace revisop
