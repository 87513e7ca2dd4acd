#include "revisop/cli.hpp"
#include "revisop/serialize.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace revisop;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "revisop");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        result.push_back(line);
    return result;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("revisop_test_" + name);
}

}  // namespace

TEST_CASE("bound")
{
    Run r = run({"bound", "--c", "0", "--lambda", "1", "--L", "3.14159265358979"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("F_min").get<double>() == doctest::Approx(0.570796).epsilon(1e-6));
    CHECK(j.at("case") == "EUCLIDEAN");

    r = run({"bound", "--c", "-1", "--lambda", "1", "--L", "4"});
    CHECK(r.code == 0);
    j = json::parse(r.out);
    CHECK(j.at("F_min").get<double>() == doctest::Approx(0.858407).epsilon(1e-6));
    CHECK(j.at("case") == "HYPERBOLIC_HOROCYCLE");

    r = run({"bound", "--c", "1", "--lambda", "1", "--L", "10"});
    CHECK(r.code == 2);
    CHECK(r.err.find("L exceeds cap 4.442883") != std::string::npos);

    CHECK(run({"bound", "--c", "0", "--lambda", "-1", "--L", "1"}).code == 1);
    CHECK(run({"bound", "--lambda", "1"}).code == 1);
    CHECK(run({"bound", "--lambda", "x", "--L", "1"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("lune")
{
    Run r = run({"lune", "--c", "0", "--lambda", "1", "--L", "3.141592653589793"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("report").at("equality_gap").get<double>() <= 1e-8);
    CHECK(j.at("report").at("smooth_circle") == false);

    r = run({"lune", "--c", "0", "--lambda", "1", "--L", "6.283185307179586"});
    CHECK(r.code == 0);
    j = json::parse(r.out);
    CHECK(j.at("report").at("smooth_circle") == true);
    for (const auto& t : j.at("curve").at("turns"))
        CHECK(t.get<double>() == 0.0);

    CHECK(run({"lune", "--c", "0", "--lambda", "1", "--L", "7"}).code == 2);

    const auto path = temp_file("lune.json");
    r = run({"lune", "--c", "-1", "--lambda", "0.5", "--L", "10", "--out", path.string()});
    CHECK(r.code == 0);
    std::ifstream in(path);
    const ClosedCurve back = curve_from_json(json::parse(in));
    const json report = json::parse(r.out);
    CHECK(std::abs(length(back) - report.at("length").get<double>()) <= 1e-12);
    CHECK(std::abs(area(back) - report.at("area").get<double>()) <= 1e-12 * report.at("area").get<double>());
    std::filesystem::remove(path);
}

TEST_CASE("verify")
{
    CHECK(run({"verify", "--trials", "0"}).code == 1);
    CHECK(run({"verify", "--trials", "-3"}).code == 1);

    const auto records = temp_file("records.jsonl");
    const auto summary = temp_file("summary.json");
    Run r = run({"verify", "--c", "0", "--c", "-1", "--trials", "40", "--records", records.string(), "--summary",
                 summary.string(), "--perturb", "10"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("ok") == true);
    CHECK(j.at("suites").size() == 2);
    CHECK(j.at("perturbations").size() == 2);
    std::ifstream in(records);
    std::size_t count = 0;
    for (std::string line; std::getline(in, line); ++count)
        CHECK(json::parse(line).contains("verdict"));
    CHECK(count == 80);
    std::ifstream sin(summary);
    CHECK(json::parse(sin) == j);
    std::filesystem::remove(records);
    std::filesystem::remove(summary);

    r = run({"verify", "--c", "0", "--trials", "20", "--pinned-lune", "--test-bound-bias", "0.01"});
    CHECK(r.code == 3);
}

TEST_CASE("sweep")
{
    Run r = run({"sweep", "--c", "0", "--lambda", "1", "--L-max", "6.283185307179586", "--steps", "64"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 65);
    CHECK(rows[0] == "c,lambda,L,F_min,cap,case");
    const std::string last = rows.back();
    const auto first_comma = last.find(',', last.find(',', last.find(',') + 1) + 1);
    const double F = std::stod(last.substr(first_comma + 1));
    CHECK(F == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(last.substr(last.rfind(',') + 1) == "EUCLIDEAN");

    r = run({"sweep", "--c", "-1", "--lambda", "0.5", "--L-max", "100", "--steps", "50", "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.size() == 50);
    CHECK(j.back().at("cap") == "inf");
    CHECK(r.err.empty());

    r = run({"sweep", "--c", "1", "--lambda", "1", "--L-max", "6", "--steps", "6"});
    CHECK(r.code == 0);
    CHECK(r.err.find("omitted 2") != std::string::npos);

    r = run({"sweep", "--c", "0", "--lambda", "1", "--lambda", "2", "--L-min", "0.5", "--L-max", "3", "--steps", "6"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).size() == 13);

    CHECK(run({"sweep", "--c", "0", "--L-max", "6"}).code == 1);
    CHECK(run({"sweep", "--c", "0", "--lambda", "1", "--L-max", "6", "--format", "xml"}).code == 1);
}
