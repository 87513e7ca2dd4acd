#pragma once

#include "revisop/bounds.hpp"
#include "revisop/curves.hpp"
#include "revisop/lune.hpp"
#include "revisop/verify.hpp"

#include <json.hpp>

#include <string>

namespace revisop {

using json = nlohmann::json;

/// {"c", "start": {"position", "direction"}, "arcs": [{"kappa", "s"}], "turns"}.
/// Planar positions and directions are written as [x, y].
[[nodiscard]] json to_json(const ClosedCurve& curve);
/// Accepts 2- or 3-component vectors; throws InputError on malformed input.
[[nodiscard]] ClosedCurve curve_from_json(const json& j, const Tolerances& tol = kDefaultTolerances);

/// {"F_min", "case", "cap": number | "inf", "at_cap"}.
[[nodiscard]] json to_json(const BoundResult& result);
[[nodiscard]] json to_json(const CertificationReport& report);
[[nodiscard]] json to_json(const ContinuityReport& report);
[[nodiscard]] json to_json(const TrialRecord& record);
/// Includes the minimum-slack curve when there is one.
[[nodiscard]] json to_json(const SuiteSummary& summary);
[[nodiscard]] json to_json(const PerturbationReport& report);

/// Shortest decimal string that reads back as the same double.
[[nodiscard]] std::string format_double(double value);

}  // namespace revisop
