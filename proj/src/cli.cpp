#include "revisop/cli.hpp"

#include "revisop/bounds.hpp"
#include "revisop/errors.hpp"
#include "revisop/lune.hpp"
#include "revisop/serialize.hpp"
#include "revisop/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace revisop {

namespace {

std::ofstream open_output(const std::string& path)
{
    std::ofstream file(path);
    if (!file)
        throw InputError("cannot open " + path + " for writing");
    return file;
}

int cmd_bound(double c, double lambda, double L, std::ostream& out)
{
    out << to_json(reverse_bound({c, lambda, L})).dump(2) << '\n';
    return exit_ok;
}

int cmd_lune(double c, double lambda, double L, const std::string& path, std::ostream& out)
{
    const ClosedCurve lune = build_lune(c, lambda, L);
    const CertificationReport report = inspect_equality(lune, lambda);
    if (path.empty()) {
        out << json{{"curve", to_json(lune)}, {"report", to_json(report)}}.dump(2) << '\n';
    } else {
        open_output(path) << to_json(lune).dump(2) << '\n';
        out << to_json(report).dump(2) << '\n';
    }
    return report.passed() ? exit_ok : exit_verification_failed;
}

struct VerifyOptions {
    std::vector<double> curvatures{0.0, 1.0, -1.0};
    double lambda = 1.0;
    long long trials = 1000;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string records;
    std::string summary;
    std::size_t perturb = 0;
    double magnitude = 1e-3;
    std::optional<double> perturb_L;
    bool pinned_lune = false;
    double bound_bias = 0.0;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.trials <= 0)
        throw InputError("--trials must be positive");
    std::optional<std::ofstream> records;
    if (!o.records.empty())
        records = open_output(o.records);

    bool ok = true;
    json suites = json::array();
    json perturbations = json::array();
    for (double c : o.curvatures) {
        SamplerConfig config;
        config.space = ModelSpace(c);
        config.lambda = o.lambda;
        config.trials = static_cast<std::size_t>(o.trials);
        config.seed = o.seed;
        config.threads = o.threads;
        config.mode = o.pinned_lune ? TrialMode::pinned_lune : TrialMode::sampled;
        config.bound_bias = o.bound_bias;
        const SuiteResult result = run_inequality_suite(config);
        if (records)
            for (const TrialRecord& rec : result.records) {
                json line = to_json(rec);
                line["c"] = c;
                *records << line.dump() << '\n';
            }
        for (const TrialRecord& rec : result.records)
            if (rec.verdict == Verdict::fail)
                err << "c=" << c << " trial " << rec.index << ": " << rec.note << '\n';
        ok = ok && result.summary.ok();
        suites.push_back(to_json(result.summary));

        if (o.perturb > 0) {
            const double cap = perimeter_cap(c, o.lambda);
            const double L = o.perturb_L.value_or(std::isinf(cap) ? 4.0 / o.lambda : 0.5 * cap);
            const PerturbationReport report = perturb_lune_test(c, o.lambda, L, o.perturb, o.magnitude, o.seed);
            ok = ok && report.ok();
            perturbations.push_back(to_json(report));
        }
    }
    json summary = {{"suites", suites}, {"ok", ok}};
    if (o.perturb > 0)
        summary["perturbations"] = perturbations;
    if (!o.summary.empty())
        open_output(o.summary) << summary.dump(2) << '\n';
    out << summary.dump(2) << '\n';
    return ok ? exit_ok : exit_verification_failed;
}

struct SweepOptions {
    double c = 0.0;
    std::vector<double> lambdas;
    std::optional<double> L_min;
    double L_max = 0.0;
    long long steps = 64;
    std::string format = "csv";
    std::string out;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.lambdas.empty())
        throw InputError("--lambda needs at least one value");
    if (o.steps < 1)
        throw InputError("--steps must be positive");
    if (!(o.L_max > 0.0))
        throw InputError("--L-max must be positive");
    if (o.L_min && !(*o.L_min > 0.0 && *o.L_min <= o.L_max))
        throw InputError("--L-min must lie in (0, L-max]");

    json rows = json::array();
    std::string csv = "c,lambda,L,F_min,cap,case\n";
    std::size_t omitted = 0;
    for (double lambda : o.lambdas) {
        const double cap = perimeter_cap(o.c, lambda);
        for (long long i = 1; i <= o.steps; ++i) {
            double L = o.L_max * static_cast<double>(i) / static_cast<double>(o.steps);
            if (o.L_min)
                L = o.steps == 1 ? o.L_max
                                 : *o.L_min + (o.L_max - *o.L_min) * static_cast<double>(i - 1) /
                                                  static_cast<double>(o.steps - 1);
            BoundResult r;
            try {
                r = reverse_bound({o.c, lambda, L});
            } catch (const DomainError&) {
                ++omitted;
                continue;
            }
            const std::string cap_text = std::isinf(cap) ? "inf" : format_double(cap);
            csv += format_double(o.c) + ',' + format_double(lambda) + ',' + format_double(L) + ',' +
                   format_double(r.F_min) + ',' + cap_text + ',' + std::string(to_string(r.case_tag)) + '\n';
            json row = to_json(r);
            row.erase("at_cap");
            row["c"] = o.c;
            row["lambda"] = lambda;
            row["L"] = L;
            rows.push_back(std::move(row));
        }
    }
    if (omitted > 0) {
        err << "warning: omitted " << omitted << " rows beyond the perimeter cap\n";
        csv += "# omitted " + std::to_string(omitted) + " rows beyond the perimeter cap\n";
    }
    const std::string text = o.format == "json" ? rows.dump(2) + '\n' : csv;
    if (o.out.empty())
        out << text;
    else
        open_output(o.out) << text;
    return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Reverse isoperimetric bounds for lambda-convex curves in constant curvature", "revisop"};
    app.require_subcommand(1);

    double c = 0.0;
    double lambda = 1.0;
    double L = 0.0;
    std::string lune_out;

    auto* bound = app.add_subcommand("bound", "minimal area for perimeter L");
    bound->add_option("--c", c, "curvature of the model plane")->capture_default_str();
    bound->add_option("--lambda", lambda, "convexity level")->required();
    bound->add_option("--L", L, "perimeter")->required();

    auto* lune = app.add_subcommand("lune", "build and certify the extremal lune");
    lune->add_option("--c", c, "curvature of the model plane")->capture_default_str();
    lune->add_option("--lambda", lambda, "convexity level")->required();
    lune->add_option("--L", L, "perimeter")->required();
    lune->add_option("--out", lune_out, "write the curve JSON here");

    VerifyOptions vo;
    bool c_given = false;
    std::vector<double> verify_c;
    double perturb_L = 0.0;
    auto* verify = app.add_subcommand("verify", "randomized inequality suite");
    auto* c_opt = verify->add_option("--c", verify_c, "curvature (repeatable; default 0, 1, -1)");
    c_opt->allow_extra_args(false);
    verify->add_option("--lambda", vo.lambda, "convexity level")->capture_default_str();
    verify->add_option("--trials", vo.trials, "trials per curvature")->capture_default_str();
    verify->add_option("--seed", vo.seed, "random seed")->capture_default_str();
    verify->add_option("--threads", vo.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--records", vo.records, "JSON lines file for trial records");
    verify->add_option("--summary", vo.summary, "JSON file for the summary");
    verify->add_option("--perturb", vo.perturb, "lune perturbations per curvature")->capture_default_str();
    verify->add_option("--magnitude", vo.magnitude, "perturbation magnitude")->capture_default_str();
    auto* perturb_L_opt = verify->add_option("--perturb-L", perturb_L, "lune perimeter for the perturbation test");
    verify->add_flag("--pinned-lune", vo.pinned_lune, "use the extremal lune for every trial");
    verify->add_option("--test-bound-bias", vo.bound_bias)->group("");

    SweepOptions so;
    double sweep_L_min = 0.0;
    auto* sweep = app.add_subcommand("sweep", "tabulate the bound over a perimeter grid");
    sweep->add_option("--c", so.c, "curvature of the model plane")->capture_default_str();
    sweep->add_option("--lambda", so.lambdas, "convexity levels")->allow_extra_args(false);
    auto* L_min_opt = sweep->add_option("--L-min", sweep_L_min, "first perimeter (default L-max / steps)");
    sweep->add_option("--L-max", so.L_max, "last perimeter")->required();
    sweep->add_option("--steps", so.steps, "grid points per lambda")->capture_default_str();
    sweep->add_option("--format", so.format, "csv or json")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", so.out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    c_given = c_opt->count() > 0;
    if (c_given)
        vo.curvatures = verify_c;
    if (perturb_L_opt->count() > 0)
        vo.perturb_L = perturb_L;
    if (L_min_opt->count() > 0)
        so.L_min = sweep_L_min;

    try {
        if (bound->parsed())
            return cmd_bound(c, lambda, L, out);
        if (lune->parsed())
            return cmd_lune(c, lambda, L, lune_out, out);
        if (verify->parsed())
            return cmd_verify(vo, out, err);
        return cmd_sweep(so, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return exit_domain_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_verification_failed;
    }
}

}  // namespace revisop
