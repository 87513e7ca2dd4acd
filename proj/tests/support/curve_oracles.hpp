#pragma once

// Test-only brute-force checks on closed curves.

#include "revisop/curves.hpp"

#include "support/frenet_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace revisop::testing {

/// Integral geodesic curvature of a sub-arc from an inscribed geodesic
/// polygon: exterior angles at the polygon vertices plus the two end angles
/// between the curve tangent and the first/last chord. Every arc boundary is a
/// polygon vertex, so corners enter through the exterior angles.
inline double polygonal_turning(const ClosedCurve& curve, const SubArc& part, int per_unit = 400)
{
    const ModelSpace& space = curve.space();
    const auto poses = curve.arc_start_poses();
    const auto& arcs = curve.arcs();

    std::vector<Pose> pts;
    double remaining = part.extent;
    std::size_t i = part.start_index;
    double pos = part.offset;
    Pose end_tangent;
    while (remaining > 1e-14) {
        const double take = std::min(arcs[i].s - pos, remaining);
        const int n = std::max(2, static_cast<int>(std::ceil(take * per_unit)));
        for (int j = 0; j < n; ++j) {
            const double s = pos + take * j / n;
            pts.push_back(detail::propagate_unchecked(space, poses[i], arcs[i].kappa, s));
        }
        end_tangent = detail::propagate_unchecked(space, poses[i], arcs[i].kappa, pos + take);
        remaining -= take;
        i = (i + 1) % arcs.size();
        pos = 0.0;
    }
    pts.push_back(end_tangent);

    double sum = 0.0;
    // start: tangent -> first chord
    sum += signed_angle(space, pts.front(), direction_toward(space, pts[0].position, pts[1].position));
    for (std::size_t j = 1; j + 1 < pts.size(); ++j) {
        const Vec3 back = direction_toward(space, pts[j].position, pts[j - 1].position);
        const Vec3 fwd = direction_toward(space, pts[j].position, pts[j + 1].position);
        const Pose incoming{pts[j].position, -1.0 * back};
        sum += signed_angle(space, incoming, fwd);
    }
    // end: last chord (arriving) -> curve tangent
    const std::size_t last = pts.size() - 1;
    const Vec3 back = direction_toward(space, pts[last].position, pts[last - 1].position);
    const Pose arriving{pts[last].position, -1.0 * back};
    sum += signed_angle(space, arriving, end_tangent.direction);
    return sum;
}

namespace detail_simple {

struct Segment {
    double ax, ay, bx, by;
    std::size_t index;
};

inline double orient(double ax, double ay, double bx, double by, double cx, double cy)
{
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

inline bool segments_cross(const Segment& s, const Segment& t)
{
    const double d1 = orient(s.ax, s.ay, s.bx, s.by, t.ax, t.ay);
    const double d2 = orient(s.ax, s.ay, s.bx, s.by, t.bx, t.by);
    const double d3 = orient(t.ax, t.ay, t.bx, t.by, s.ax, s.ay);
    const double d4 = orient(t.ax, t.ay, t.bx, t.by, s.bx, s.by);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace detail_simple

/// Polyline self-intersection test in the conformal chart (a homeomorphism,
/// so crossings are preserved), with an x-sorted sweep over active segments.
inline bool is_simple(const ClosedCurve& curve, std::size_t per_arc = 512)
{
    using detail_simple::Segment;
    const auto points = sample_points(curve, per_arc);
    std::vector<ChartState> chart;
    chart.reserve(points.size());
    for (const Vec3& p : points)
        chart.push_back(to_conformal(curve.space(), Pose{p, {1.0, 0.0, 0.0}}));
    const std::size_t n = chart.size();
    std::vector<Segment> segs;
    segs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ChartState& a = chart[i];
        const ChartState& b = chart[(i + 1) % n];
        Segment s{a.x, a.y, b.x, b.y, i};
        if (s.ax > s.bx) {
            std::swap(s.ax, s.bx);
            std::swap(s.ay, s.by);
        }
        segs.push_back(s);
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.ax < b.ax; });
    std::vector<Segment> active;
    for (const Segment& s : segs) {
        std::erase_if(active, [&](const Segment& a) { return a.bx < s.ax; });
        for (const Segment& a : active) {
            const std::size_t d = a.index > s.index ? a.index - s.index : s.index - a.index;
            if (d <= 1 || d == n - 1)
                continue;
            if (detail_simple::segments_cross(a, s))
                return false;
        }
        active.push_back(s);
    }
    return true;
}

}  // namespace revisop::testing
