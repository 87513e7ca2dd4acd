#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace revisop {

/// SplitMix64 finaliser; used to derive independent stream seeds.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Per-trial random stream: std::mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(stream)). Distributions are implemented here
/// rather than taken from <random> so sequences agree across standard
/// libraries.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Standard normal (Box-Muller, one value cached).
    double normal() noexcept;
    /// Uniform integer in [lo, hi].
    std::size_t integer(std::size_t lo, std::size_t hi) noexcept;

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace revisop
