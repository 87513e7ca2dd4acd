#include "revisop/serialize.hpp"

#include "revisop/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace revisop {

namespace {

json vec_to_json(const Vec3& v, bool planar)
{
    if (planar)
        return json::array({v.x, v.y});
    return json::array({v.x, v.y, v.z});
}

Vec3 vec_from_json(const json& j, const char* what)
{
    if (!j.is_array() || (j.size() != 2 && j.size() != 3))
        throw InputError(std::string(what) + " must be an array of 2 or 3 numbers");
    for (const auto& e : j)
        if (!e.is_number())
            throw InputError(std::string(what) + " must contain numbers only");
    return {j[0].get<double>(), j[1].get<double>(), j.size() == 3 ? j[2].get<double>() : 0.0};
}

double number_field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number())
        throw InputError(std::string("missing numeric field \"") + key + "\"");
    return j.at(key).get<double>();
}

json number_or_inf(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

}  // namespace

json to_json(const ClosedCurve& curve)
{
    const bool planar = curve.space().geometry() == Geometry::euclidean;
    json arcs = json::array();
    for (const Arc& a : curve.arcs())
        arcs.push_back({{"kappa", a.kappa}, {"s", a.s}});
    return {
        {"c", curve.space().curvature()},
        {"start",
         {{"position", vec_to_json(curve.start().position, planar)},
          {"direction", vec_to_json(curve.start().direction, planar)}}},
        {"arcs", std::move(arcs)},
        {"turns", curve.turns()},
    };
}

ClosedCurve curve_from_json(const json& j, const Tolerances& tol)
{
    const double c = number_field(j, "c");
    if (!j.contains("start") || !j.at("start").is_object())
        throw InputError("missing object field \"start\"");
    const json& start = j.at("start");
    if (!start.contains("position") || !start.contains("direction"))
        throw InputError("start needs \"position\" and \"direction\"");
    const Pose pose{vec_from_json(start.at("position"), "start.position"),
                    vec_from_json(start.at("direction"), "start.direction")};

    if (!j.contains("arcs") || !j.at("arcs").is_array())
        throw InputError("missing array field \"arcs\"");
    std::vector<Arc> arcs;
    for (const json& a : j.at("arcs"))
        arcs.push_back({number_field(a, "kappa"), number_field(a, "s")});

    if (!j.contains("turns") || !j.at("turns").is_array())
        throw InputError("missing array field \"turns\"");
    std::vector<double> turns;
    for (const json& t : j.at("turns")) {
        if (!t.is_number())
            throw InputError("turns must be numbers");
        turns.push_back(t.get<double>());
    }
    return ClosedCurve(ModelSpace(c), pose, std::move(arcs), std::move(turns), tol);
}

json to_json(const BoundResult& result)
{
    return {
        {"F_min", result.F_min},
        {"case", std::string(to_string(result.case_tag))},
        {"cap", number_or_inf(result.cap)},
        {"at_cap", result.at_cap},
    };
}

json to_json(const CertificationReport& report)
{
    return {
        {"length", report.length},
        {"area", report.area},
        {"F_min", report.F_min},
        {"equality_gap", report.equality_gap},
        {"lambda_convex", report.lambda_convex},
        {"gauss_bonnet_residual", report.gauss_bonnet_residual},
        {"closure_residual", report.closure_residual},
        {"case", std::string(to_string(report.case_tag))},
        {"at_cap", report.at_cap},
        {"smooth_circle", report.at_cap},
        {"passed", report.passed()},
        {"failures", report.failures},
    };
}

json to_json(const ContinuityReport& report)
{
    json rows = json::array();
    for (const ContinuityRow& r : report.rows)
        rows.push_back({{"eps", r.eps},
                        {"dev_spherical", r.dev_spherical},
                        {"dev_hyperbolic", r.dev_hyperbolic},
                        {"dev_strong_vs_horocycle", r.dev_strong_vs_horocycle},
                        {"dev_equidistant_vs_horocycle", r.dev_equidistant_vs_horocycle}});
    return {{"lambda", report.lambda}, {"L", report.L}, {"rows", rows}, {"ratios", report.ratios}};
}

json to_json(const TrialRecord& record)
{
    json j = {
        {"index", record.index},
        {"verdict", std::string(to_string(record.verdict))},
        {"L", record.L},
        {"F", record.F},
        {"min_kappa", number_or_inf(record.min_kappa)},
        {"corners", record.corners},
        {"F_min", record.F_min},
        {"gap", record.gap},
        {"upper", record.upper},
        {"slack", record.slack},
        {"cap_violation", record.cap_violation},
    };
    if (!record.note.empty())
        j["note"] = record.note;
    return j;
}

json to_json(const SuiteSummary& summary)
{
    json j = {
        {"c", summary.c},
        {"lambda", summary.lambda},
        {"seed", summary.seed},
        {"trials", summary.trials},
        {"passed", summary.passed},
        {"failed", summary.failed},
        {"skipped", summary.skipped},
        {"out_of_hypothesis", summary.out_of_hypothesis},
        {"cap_violations", summary.cap_violations},
        {"skip_rate", summary.skip_rate()},
        {"max_L_over_cap", summary.max_L_over_cap},
        {"ok", summary.ok()},
    };
    if (summary.min_slack_trial) {
        j["min_slack"] = summary.min_slack;
        j["min_slack_trial"] = *summary.min_slack_trial;
    } else {
        j["min_slack"] = nullptr;
        j["min_slack_trial"] = nullptr;
    }
    j["min_slack_curve"] = summary.min_slack_curve ? to_json(*summary.min_slack_curve) : json(nullptr);
    return j;
}

json to_json(const PerturbationReport& report)
{
    return {
        {"c", report.c},
        {"lambda", report.lambda},
        {"L", report.L},
        {"magnitude", report.magnitude},
        {"requested", report.requested},
        {"evaluated", report.evaluated},
        {"skipped", report.skipped},
        {"min_slack", report.min_slack},
        {"ok", report.ok()},
        {"log", report.log},
    };
}

std::string format_double(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (std::isnan(value))
        return "nan";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

}  // namespace revisop
