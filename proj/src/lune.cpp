#include "revisop/lune.hpp"

#include "revisop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace revisop {

namespace {

constexpr double kPi = std::numbers::pi;

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items) {
        if (!out.empty())
            out += "; ";
        out += s;
    }
    return out;
}

}  // namespace

LuneSpec lune_spec(double c, double lambda, double L)
{
    const BoundResult bound = reverse_bound({c, lambda, L});
    LuneSpec spec;
    spec.c = c;
    spec.lambda = lambda;
    spec.L = bound.at_cap ? std::min(L, bound.cap) : L;
    spec.F_min = bound.F_min;
    spec.case_tag = bound.case_tag;
    spec.at_cap = bound.at_cap;
    // Gauss-Bonnet on the two-corner curve: c F + lambda L + 2 (pi - theta) = 2 pi
    spec.theta = std::clamp(0.5 * (lambda * spec.L + c * bound.F_min), 0.0, kPi);
    if (bound.at_cap)
        spec.theta = kPi;
    return spec;
}

double vertex_angle(double c, double lambda, double L)
{
    const BoundResult bound = reverse_bound({c, lambda, L});
    const double z = 0.25 * lambda * L;
    switch (bound.case_tag) {
    case BoundCase::euclidean: return 2.0 * z;
    case BoundCase::hyperbolic_horocycle: return 2.0 * std::atan(z);
    case BoundCase::hyperbolic_equidistant: {
        const double x = 0.25 * std::sqrt(-c - lambda * lambda) * L;
        return 2.0 * std::atan(z * detail::tanhc(x, false));
    }
    case BoundCase::spherical:
    case BoundCase::hyperbolic_strong: {
        const double w = std::sqrt(lambda * lambda + c);
        const double x = std::min(0.25 * w * L, 0.5 * kPi);
        if (x <= 0.5 * kPi - 1e-6)
            return 2.0 * std::atan(z * detail::tanc(x, false));
        return kPi - 2.0 * std::atan(w / lambda * std::cos(x) / std::sin(x));
    }
    }
    return 0.0;
}

ClosedCurve build_lune(double c, double lambda, double L, const Tolerances& tol)
{
    const LuneSpec spec = lune_spec(c, lambda, L);
    const ModelSpace space(c);
    const double half = 0.5 * spec.L;
    const double turn = kPi - spec.theta;
    ClosedCurve curve(space, space.canonical_pose(), {{lambda, half}, {lambda, half}}, {turn, turn}, tol);
    const double residual = curve.closure_residual();
    if (!(residual <= tol.closure)) {
        std::ostringstream msg;
        msg << "lune does not close: residual " << residual << " for c=" << c << " lambda=" << lambda
            << " L=" << L;
        throw ConsistencyError(msg.str());
    }
    return curve;
}

double measured_vertex_angle(const ClosedCurve& lune)
{
    if (lune.size() != 2)
        throw InputError("a lune has exactly two arcs");
    const ModelSpace& space = lune.space();
    const Pose first = lune.start();
    const Pose second = detail::propagate_unchecked(space, first, lune.arcs()[0].kappa, lune.arcs()[0].s);
    const Vec3 chord = direction_toward(space, first.position, second.position);
    return 2.0 * signed_angle(space, first, chord);
}

CertificationFailure::CertificationFailure(CertificationReport report)
    : ConsistencyError("lune certification failed: " + join(report.failures))
    , report_(std::move(report))
{
}

CertificationReport inspect_equality(const ClosedCurve& curve, double lambda)
{
    CertificationReport r;
    r.length = length(curve);
    r.closure_residual = curve.closure_residual();
    const ConvexityVerdict verdict = is_lambda_convex(curve, lambda);
    r.lambda_convex = verdict.convex;
    if (!verdict.convex)
        r.failures.push_back("not lambda-convex: " + verdict.reason);
    if (!(r.closure_residual <= curve.tolerances().closure))
        r.failures.push_back("curve does not close");

    try {
        const BoundResult bound = reverse_bound({curve.space().curvature(), lambda, r.length});
        r.F_min = bound.F_min;
        r.case_tag = bound.case_tag;
        r.at_cap = bound.at_cap;
    } catch (const std::exception& e) {
        r.failures.push_back(std::string("bound: ") + e.what());
        return r;
    }

    r.area = quadrature_area(curve);
    r.gauss_bonnet_residual =
        curve.space().curvature() * r.area + total_turning(curve) - 2.0 * kPi;
    r.equality_gap = std::abs(r.area - r.F_min) / r.F_min;
    if (!(r.equality_gap <= kEqualityGapTolerance)) {
        std::ostringstream msg;
        msg << "equality gap " << r.equality_gap << " exceeds " << kEqualityGapTolerance;
        r.failures.push_back(msg.str());
    }
    if (!(std::abs(r.gauss_bonnet_residual) <= kGaussBonnetTolerance)) {
        std::ostringstream msg;
        msg << "Gauss-Bonnet residual " << r.gauss_bonnet_residual << " exceeds " << kGaussBonnetTolerance;
        r.failures.push_back(msg.str());
    }
    return r;
}

CertificationReport certify_equality(const ClosedCurve& curve, double lambda)
{
    CertificationReport r = inspect_equality(curve, lambda);
    if (!r.passed())
        throw CertificationFailure(std::move(r));
    return r;
}

}  // namespace revisop
