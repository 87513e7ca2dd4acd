#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace revisop::quadrature {

inline constexpr std::size_t kOrder = 12;

struct Rule {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};
};

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
inline const Rule& gauss_legendre()
{
    static const Rule rule = [] {
        Rule r;
        constexpr int n = static_cast<int>(kOrder);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            r.nodes[static_cast<std::size_t>(i)] = x;
            r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

template <class F>
double fixed(F&& f, double a, double b)
{
    const Rule& r = gauss_legendre();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < kOrder; ++i)
        sum += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * sum;
}

namespace detail {

template <class F>
double refine(F& f, double a, double b, double whole, double tol, int depth)
{
    const double mid = 0.5 * (a + b);
    const double left = fixed(f, a, mid);
    const double right = fixed(f, mid, b);
    const double both = left + right;
    if (depth <= 0 || std::abs(both - whole) <= tol)
        return both;
    return refine(f, a, mid, left, 0.5 * tol, depth - 1) + refine(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive bisection: accept a panel once the rule on the panel and on its
/// two halves agree within the panel's share of `abs_tol`.
template <class F>
double adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 30)
{
    const double whole = fixed(f, a, b);
    return detail::refine(f, a, b, whole, abs_tol, max_depth);
}

}  // namespace revisop::quadrature
