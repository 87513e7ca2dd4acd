#include "revisop/curves.hpp"

#include "revisop/errors.hpp"
#include "revisop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace revisop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string describe_arc(std::size_t i)
{
    return "arc " + std::to_string(i);
}

}  // namespace

ClosedCurve::ClosedCurve(ModelSpace space, Pose start, std::vector<Arc> arcs, std::vector<double> turns,
                         const Tolerances& tol)
    : space_(space)
    , start_(start)
    , arcs_(std::move(arcs))
    , turns_(std::move(turns))
    , tol_(tol)
{
    if (arcs_.empty())
        throw InputError("a closed curve needs at least one arc");
    if (turns_.size() != arcs_.size())
        throw InputError("expected one turn per arc junction");
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& a = arcs_[i];
        if (!std::isfinite(a.kappa))
            throw InputError(describe_arc(i) + ": curvature must be finite");
        if (!std::isfinite(a.s) || a.s < tol_.min_arc_length)
            throw InputError(describe_arc(i) + ": length must be at least " +
                             std::to_string(tol_.min_arc_length));
        if (!std::isfinite(turns_[i]))
            throw InputError("turn " + std::to_string(i) + " must be finite");
    }
    space_.validate(start_, tol_.pose);
}

std::vector<Pose> ClosedCurve::arc_start_poses() const
{
    std::vector<Pose> poses;
    poses.reserve(arcs_.size());
    Pose pose = start_;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        poses.push_back(pose);
        pose = detail::propagate_unchecked(space_, pose, arcs_[i].kappa, arcs_[i].s, tol_.series_switch);
        pose = rotate(space_, pose, turns_[i]);
    }
    return poses;
}

Pose ClosedCurve::end_pose() const
{
    return trace(space_, start_, arcs_, turns_, tol_);
}

double ClosedCurve::closure_residual() const
{
    return pose_mismatch(space_, start_, end_pose());
}

bool ClosedCurve::is_closed() const
{
    return closure_residual() <= tol_.closure;
}

Pose trace(const ModelSpace& space, const Pose& start, std::span<const Arc> arcs, std::span<const double> turns,
           const Tolerances& tol)
{
    if (turns.size() != arcs.size())
        throw InputError("expected one turn per arc junction");
    space.validate(start, tol.pose);
    Pose pose = start;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        pose = detail::propagate_unchecked(space, pose, arcs[i].kappa, arcs[i].s, tol.series_switch);
        pose = rotate(space, pose, turns[i]);
    }
    return pose;
}

double length(const ClosedCurve& curve) noexcept
{
    double sum = 0.0;
    for (const Arc& a : curve.arcs())
        sum += a.s;
    return sum;
}

double total_turning(const ClosedCurve& curve) noexcept
{
    double sum = 0.0;
    for (const Arc& a : curve.arcs())
        sum += a.kappa * a.s;
    for (double t : curve.turns())
        sum += t;
    return sum;
}

double turning(const ClosedCurve& curve, const SubArc& part)
{
    const auto& arcs = curve.arcs();
    const auto& turns = curve.turns();
    const double total = length(curve);
    if (part.start_index >= arcs.size())
        throw InputError("sub-arc start index out of range");
    if (!(part.offset >= 0.0) || part.offset >= arcs[part.start_index].s)
        throw InputError("sub-arc offset must lie inside its starting arc");
    if (!(part.extent > 0.0))
        throw InputError("sub-arc extent must be positive");
    if (part.extent > total * (1.0 + 1e-14))
        throw InputError("sub-arc extent exceeds the curve length");

    // Corners closer than this to the far end count as lying on the boundary.
    const double end_slack = 1e-14 * total;
    double remaining = std::min(part.extent, total);
    std::size_t i = part.start_index;
    double pos = part.offset;
    double sum = 0.0;
    while (true) {
        const double take = std::min(arcs[i].s - pos, remaining);
        sum += arcs[i].kappa * take;
        remaining -= take;
        if (remaining <= end_slack)
            break;
        sum += turns[i];
        i = (i + 1) % arcs.size();
        pos = 0.0;
    }
    return sum;
}

ConvexityVerdict is_lambda_convex(const ClosedCurve& curve, double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InputError("lambda must be positive and finite");
    const auto& arcs = curve.arcs();
    const auto& turns = curve.turns();
    const std::size_t n = arcs.size();

    for (std::size_t i = 0; i < n; ++i) {
        if (arcs[i].kappa < lambda) {
            std::ostringstream why;
            why << "arc " << i << " has curvature " << arcs[i].kappa << " < lambda";
            return {false, SubArc{i, 0.25 * arcs[i].s, 0.5 * arcs[i].s}, why.str()};
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double t = turns[i];
        if (t < 0.0) {
            // Straddle the corner closely enough that the arcs cannot make up
            // for the negative turn.
            const std::size_t j = (i + 1) % n;
            const double spread = std::abs(arcs[i].kappa) + std::abs(arcs[j].kappa) + lambda;
            const double half = 0.5 * std::min({arcs[i].s, arcs[j].s, std::abs(t) / spread});
            std::ostringstream why;
            why << "turn " << i << " is negative (" << t << ")";
            return {false, SubArc{i, arcs[i].s - half, 2.0 * half}, why.str()};
        }
    }
    return {true, std::nullopt, {}};
}

namespace {

/// Point strictly inside a convex closed curve: the ambient mean of sample
/// points pulled back onto the model space.
Vec3 interior_point(const ClosedCurve& curve)
{
    const auto points = sample_points(curve, 8);
    Vec3 mean;
    for (const Vec3& p : points)
        mean += p;
    mean *= 1.0 / static_cast<double>(points.size());
    return curve.space().project(mean);
}

}  // namespace

double quadrature_area(const ClosedCurve& curve)
{
    const ModelSpace& space = curve.space();
    const double c = space.curvature();
    const Vec3 origin = interior_point(curve);

    // Orthonormal frame (e1, e2) of the tangent plane at the interior point.
    Vec3 e1{1.0, 0.0, 0.0};
    if (space.geometry() != Geometry::euclidean) {
        e1 = e1 - (c * space.dot(e1, origin)) * origin;
        if (space.dot(e1, e1) < 1e-8) {
            e1 = Vec3{0.0, 1.0, 0.0};
            e1 = e1 - (c * space.dot(e1, origin)) * origin;
        }
        e1 = (1.0 / std::sqrt(space.dot(e1, e1))) * e1;
    }
    const Vec3 e2 = space.left_normal(Pose{origin, e1});

    // In geodesic polar coordinates (r, phi) about the origin the area form
    // is d(vers_c(r)) ^ dphi, so area = loop integral of vers_c(r) dphi.
    // With x = sn cos(phi), y = sn sin(phi) this becomes
    //   (x y' - y x') / (1 + cs_c(r)),   cs_c(r) = c <p, origin>,
    // which reduces to the planar (x y' - y x') / 2 at c = 0.
    const auto integrand = [&](const Pose& pose) {
        const Vec3 rel = pose.position - origin;
        const double x = space.dot(rel, e1);
        const double y = space.dot(rel, e2);
        const double dx = space.dot(pose.direction, e1);
        const double dy = space.dot(pose.direction, e2);
        const double cs = space.geometry() == Geometry::euclidean ? 1.0 : c * space.dot(pose.position, origin);
        return (x * dy - y * dx) / (1.0 + cs);
    };

    const auto poses = curve.arc_start_poses();
    const double tol = curve.tolerances().quadrature;
    const double series = curve.tolerances().series_switch;
    double sum = 0.0;
    for (std::size_t i = 0; i < poses.size(); ++i) {
        const Arc arc = curve.arcs()[i];
        const Pose& p0 = poses[i];
        sum += quadrature::adaptive(
            [&](double s) { return integrand(detail::propagate_unchecked(space, p0, arc.kappa, s, series)); }, 0.0,
            arc.s, tol);
    }
    return sum;
}

double area(const ClosedCurve& curve)
{
    const double residual = curve.closure_residual();
    if (!(residual <= curve.tolerances().closure)) {
        std::ostringstream msg;
        msg << "curve does not close (residual " << residual << ")";
        throw InputError(msg.str());
    }
    const double quad = quadrature_area(curve);
    const double c = curve.space().curvature();
    if (c != 0.0) {
        const double turning_sum = total_turning(curve);
        const double gb = (kTwoPi - turning_sum) / c;
        // Gauss-Bonnet loses digits to 2 pi - turning for small domains.
        double magnitude = kTwoPi;
        for (const Arc& a : curve.arcs())
            magnitude += std::abs(a.kappa) * a.s;
        for (double t : curve.turns())
            magnitude += std::abs(t);
        const double floor = 64.0 * 1e-16 * magnitude / std::abs(c);
        const double allowed = curve.tolerances().area_agreement * std::abs(quad) + floor;
        if (!(std::abs(quad - gb) <= allowed)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "area methods disagree: quadrature " << quad << " vs Gauss-Bonnet " << gb;
            throw ConsistencyError(msg.str());
        }
    }
    return quad;
}

double gauss_bonnet_residual(const ClosedCurve& curve)
{
    return curve.space().curvature() * quadrature_area(curve) + total_turning(curve) - kTwoPi;
}

std::vector<Vec3> sample_points(const ClosedCurve& curve, std::size_t per_arc)
{
    if (per_arc == 0)
        throw InputError("need at least one sample per arc");
    const auto poses = curve.arc_start_poses();
    std::vector<Vec3> out;
    out.reserve(poses.size() * per_arc);
    for (std::size_t i = 0; i < poses.size(); ++i) {
        const Arc& arc = curve.arcs()[i];
        for (std::size_t j = 0; j < per_arc; ++j) {
            const double s = arc.s * static_cast<double>(j) / static_cast<double>(per_arc);
            out.push_back(detail::propagate_unchecked(curve.space(), poses[i], arc.kappa, s).position);
        }
    }
    return out;
}

}  // namespace revisop
