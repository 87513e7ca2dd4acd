#include "revisop/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace revisop {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream)))
{
}

double Rng::uniform() noexcept
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() noexcept
{
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

std::size_t Rng::integer(std::size_t lo, std::size_t hi) noexcept
{
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
        return static_cast<std::size_t>(engine_());
    // rejection to avoid modulo bias
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v = engine_();
    while (v >= limit)
        v = engine_();
    return lo + static_cast<std::size_t>(v % span);
}

}  // namespace revisop
