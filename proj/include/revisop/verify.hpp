#pragma once

#include "revisop/curves.hpp"
#include "revisop/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace revisop {

/// Raised when the sampler cannot produce an admissible curve.
class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TrialMode {
    sampled,     ///< random lambda-convex curves
    pinned_lune, ///< the extremal lune at a random admissible L
};

struct SamplerConfig {
    ModelSpace space{0.0};
    double lambda = 1.0;
    std::size_t min_pieces = 3; ///< turning-profile pieces per curve
    std::size_t max_pieces = 12;
    /// kappa = lambda (1 + spread |X|), X standard normal.
    double curvature_spread = 1.0;
    /// Chance that a profile piece becomes a corner instead of an arc.
    double corner_probability = 0.3;
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::size_t retries = 20;
    std::size_t threads = 1;
    TrialMode mode = TrialMode::sampled;
    /// Test hook: the suite compares against F_min (1 + bound_bias).
    double bound_bias = 0.0;
    Tolerances tol = kDefaultTolerances;

    /// Throws InputError describing the first invalid field.
    void validate() const;
};

/// Random closed, simple, lambda-convex curve for trial `index` of the
/// configured stream. Throws SamplingError when every retry fails.
[[nodiscard]] ClosedCurve sample_curve(const SamplerConfig& config, std::uint64_t index = 0);

enum class Verdict { pass, fail, out_of_hypothesis, skipped };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

struct TrialRecord {
    std::size_t index = 0;
    Verdict verdict = Verdict::skipped;
    double L = 0.0;
    double F = 0.0;
    double min_kappa = 0.0;
    std::size_t corners = 0;
    double F_min = 0.0;
    double gap = 0.0;   ///< L^2 - 4 pi F + c F^2
    double upper = 0.0; ///< L^2 / (2 (2 pi - w+))
    double slack = 0.0; ///< F - F_min
    bool cap_violation = false;
    std::string note; ///< reason for a skip, failure or hypothesis breach
};

inline constexpr double kSandwichTolerance = 1e-9;
inline constexpr double kMaxSkipRate = 0.05;

/// Sandwich checks for one curve. A curve that is not lambda-convex is
/// reported as out of hypothesis, never as a failure.
[[nodiscard]] TrialRecord evaluate_trial(const ClosedCurve& curve, double lambda, std::size_t index = 0,
                                         double bound_bias = 0.0);

struct SuiteSummary {
    double c = 0.0;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    std::size_t out_of_hypothesis = 0;
    std::size_t cap_violations = 0;
    double max_L_over_cap = 0.0; ///< 0 when the perimeter is uncapped
    double min_slack = 0.0;
    std::optional<std::size_t> min_slack_trial;
    std::optional<ClosedCurve> min_slack_curve;

    [[nodiscard]] double skip_rate() const noexcept;
    /// Zero failures, zero cap violations and skip rate within kMaxSkipRate.
    [[nodiscard]] bool ok() const noexcept;
};

struct SuiteResult {
    std::vector<TrialRecord> records; ///< in trial order
    SuiteSummary summary;
};

[[nodiscard]] SuiteResult run_inequality_suite(const SamplerConfig& config);

struct PerturbationReport {
    double c = 0.0;
    double lambda = 0.0;
    double L = 0.0;
    double magnitude = 0.0;
    std::size_t requested = 0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
    double min_slack = 0.0; ///< min of area - F_min over evaluated curves
    std::vector<std::string> log;

    [[nodiscard]] bool ok() const noexcept;
};

/// Randomly perturbed lambda-convex curves of perimeter L near the lune.
/// Requires L strictly below the cap.
[[nodiscard]] PerturbationReport perturb_lune_test(double c, double lambda, double L, std::size_t n_perturbations,
                                                   double magnitude, std::uint64_t seed = 0);

}  // namespace revisop
