#include "revisop/bounds.hpp"

#include "revisop/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace revisop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_lambda(double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InputError("lambda must be positive and finite");
}

/// atan(u) / u
double atan_ratio(double u) noexcept
{
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 3.0 + u2 * u2 / 5.0;
    }
    return std::atan(u) / u;
}

/// Spherical and lambda > k hyperbolic branch, w^2 = lambda^2 + c > 0.
///
/// atan(a tan x) - a x = atan(u) + (1 - a) x with u = (a - 1) q,
/// q = tan x / (1 + a tan^2 x) = sin x cos x / (cos^2 x + a sin^2 x),
/// and c = w^2 (1 - a^2), so after dividing by (1 - a) the bound becomes
///   F = 4 (x - q atan(u)/u) / ((1 + a) w^2),
/// which has no 1/c and stays finite at the cap x = pi/2.
double circle_branch(double c, double lambda, double L) noexcept
{
    const double w2 = lambda * lambda + c;
    const double w = std::sqrt(w2);
    const double a = lambda / w;
    const double one_minus_a = c / (w * (w + lambda));
    const double x = std::min(0.25 * w * L, 0.5 * kPi);
    const double sx = std::sin(x);
    const double cx = std::cos(x);
    const double q = sx * cx / (cx * cx + a * sx * sx);
    const double u = -one_minus_a * q;
    return 4.0 * (x - q * atan_ratio(u)) / ((1.0 + a) * w2);
}

}  // namespace

std::string_view to_string(BoundCase tag) noexcept
{
    switch (tag) {
    case BoundCase::euclidean: return "EUCLIDEAN";
    case BoundCase::spherical: return "SPHERICAL";
    case BoundCase::hyperbolic_strong: return "HYPERBOLIC_STRONG";
    case BoundCase::hyperbolic_horocycle: return "HYPERBOLIC_HOROCYCLE";
    case BoundCase::hyperbolic_equidistant: return "HYPERBOLIC_EQUIDISTANT";
    }
    return "UNKNOWN";
}

BoundCase classify(double c, double lambda)
{
    require_lambda(lambda);
    if (!std::isfinite(c))
        throw InputError("curvature must be finite");
    if (c == 0.0)
        return BoundCase::euclidean;
    if (c > 0.0)
        return BoundCase::spherical;
    const double k = std::sqrt(-c);
    if (std::abs(lambda - k) <= 4.0 * kEps * k)
        return BoundCase::hyperbolic_horocycle;
    return lambda > k ? BoundCase::hyperbolic_strong : BoundCase::hyperbolic_equidistant;
}

double perimeter_cap(double c, double lambda)
{
    switch (classify(c, lambda)) {
    case BoundCase::euclidean: return 2.0 * kPi / lambda;
    case BoundCase::spherical:
    case BoundCase::hyperbolic_strong: return 2.0 * kPi / std::sqrt(lambda * lambda + c);
    case BoundCase::hyperbolic_horocycle:
    case BoundCase::hyperbolic_equidistant: return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::infinity();
}

namespace detail {

double sin_excess(double y) noexcept
{
    if (std::abs(y) >= 0.1)
        return y - std::sin(y);
    // y^3/3! - y^5/5! + ...
    const double y2 = y * y;
    double term = y * y2 / 6.0;
    double sum = 0.0;
    for (int n = 3; n < 40 && term != 0.0; n += 2) {
        sum += term;
        term *= -y2 / ((n + 1.0) * (n + 2.0));
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

double atan_excess(double z) noexcept
{
    if (std::abs(z) >= 0.1)
        return z - std::atan(z);
    // z^3/3 - z^5/5 + ...
    const double z2 = z * z;
    double power = z * z2;
    double sum = 0.0;
    for (int n = 3; n < 80; n += 2) {
        const double term = (((n - 3) / 2) % 2 == 0 ? 1.0 : -1.0) * power / n;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
        power *= z2;
    }
    return sum;
}

double tanc(double x, bool series) noexcept
{
    if (x == 0.0)
        return 1.0;
    if (series && std::abs(x) < 0.05) {
        const double t = x * x;
        return 1.0 + t * (1.0 / 3.0 + t * (2.0 / 15.0 + t * (17.0 / 315.0 + t * 62.0 / 2835.0)));
    }
    return std::tan(x) / x;
}

double tanhc(double x, bool series) noexcept
{
    if (x == 0.0)
        return 1.0;
    if (series && std::abs(x) < 0.05) {
        const double t = x * x;
        return 1.0 - t * (1.0 / 3.0 - t * (2.0 / 15.0 - t * (17.0 / 315.0 - t * 62.0 / 2835.0)));
    }
    return std::tanh(x) / x;
}

}  // namespace detail

BoundResult reverse_bound(const BoundQuery& query, const Tolerances& tol)
{
    const double c = query.c;
    const double lambda = query.lambda;
    double L = query.L;
    require_lambda(lambda);
    if (!(L > 0.0) || !std::isfinite(L))
        throw InputError("perimeter L must be positive and finite");

    BoundResult out;
    out.case_tag = classify(c, lambda);
    out.cap = perimeter_cap(c, lambda);
    if (L > out.cap * (1.0 + 4.0 * kEps)) {
        std::ostringstream msg;
        msg.setf(std::ios::fixed);
        msg.precision(6);
        msg << "L exceeds cap " << out.cap;
        throw DomainError(msg.str());
    }
    if (L >= out.cap * (1.0 - 4.0 * kEps)) {
        out.at_cap = true;
        L = std::min(L, out.cap);
    }

    const double k2 = std::abs(c);
    const bool near_horocycle = std::abs(lambda * lambda + c) < tol.near_horocycle * k2;

    switch (out.case_tag) {
    case BoundCase::euclidean:
        out.F_min = detail::sin_excess(0.5 * lambda * L) / (lambda * lambda);
        break;
    case BoundCase::spherical: out.F_min = circle_branch(c, lambda, L); break;
    case BoundCase::hyperbolic_strong:
        if (near_horocycle) {
            const double x = 0.25 * std::sqrt(lambda * lambda + c) * L;
            const double z = 0.25 * lambda * L;
            out.F_min = 4.0 * (z - std::atan(z * detail::tanc(x, true))) / k2;
        } else {
            out.F_min = circle_branch(c, lambda, L);
        }
        break;
    case BoundCase::hyperbolic_horocycle:
        out.F_min = 4.0 * detail::atan_excess(0.25 * lambda * L) / k2;
        break;
    case BoundCase::hyperbolic_equidistant: {
        const double x = 0.25 * std::sqrt(-c - lambda * lambda) * L;
        const double z = 0.25 * lambda * L;
        out.F_min = 4.0 * (z - std::atan(z * detail::tanhc(x, near_horocycle))) / k2;
        break;
    }
    }
    return out;
}

double classical_isoperimetric_gap(double c, double L, double F) noexcept
{
    return L * L - 4.0 * kPi * F + c * F * F;
}

double alexandrov_upper_bound(double c, double F_candidate, double L)
{
    const double positive_curvature = std::max(c, 0.0) * F_candidate;
    if (!(positive_curvature < 2.0 * kPi)) {
        std::ostringstream msg;
        msg << "positive curvature " << positive_curvature << " of the domain is not below 2 pi";
        throw DomainError(msg.str());
    }
    return L * L / (2.0 * (2.0 * kPi - positive_curvature));
}

ContinuityReport limit_continuity_check(double lambda, double L, std::span<const double> eps_ladder)
{
    require_lambda(lambda);
    if (!(L > 0.0) || !std::isfinite(L))
        throw InputError("perimeter L must be positive and finite");

    ContinuityReport report;
    report.lambda = lambda;
    report.L = L;

    const auto rel = [](double value, double reference) { return std::abs(value - reference) / reference; };
    const double euclid = reverse_bound({0.0, lambda, L}).F_min;
    const double horocycle = reverse_bound({-lambda * lambda, lambda, L}).F_min;

    for (double eps : eps_ladder) {
        if (!(eps > 0.0) || eps >= lambda)
            throw InputError("continuity ladder entries must lie in (0, lambda)");
        const double e2 = eps * eps;
        ContinuityRow row;
        row.eps = eps;
        row.dev_spherical = rel(reverse_bound({e2, lambda, L}).F_min, euclid);
        row.dev_hyperbolic = rel(reverse_bound({-e2, lambda, L}).F_min, euclid);
        row.dev_strong_vs_horocycle = rel(reverse_bound({-(lambda * lambda - e2), lambda, L}).F_min, horocycle);
        row.dev_equidistant_vs_horocycle =
            rel(reverse_bound({-(lambda * lambda + e2), lambda, L}).F_min, horocycle);
        report.rows.push_back(row);
    }
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const ContinuityRow& a = report.rows[i - 1];
        const ContinuityRow& b = report.rows[i];
        report.ratios.push_back({b.dev_spherical / a.dev_spherical, b.dev_hyperbolic / a.dev_hyperbolic,
                                 b.dev_strong_vs_horocycle / a.dev_strong_vs_horocycle,
                                 b.dev_equidistant_vs_horocycle / a.dev_equidistant_vs_horocycle});
    }
    return report;
}

}  // namespace revisop
