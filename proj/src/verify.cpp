#include "revisop/verify.hpp"

#include "revisop/bounds.hpp"
#include "revisop/lune.hpp"
#include "revisop/rng.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace revisop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxHyperbolicExcess = 2.0;

// Piece of a turning-angle profile: the tangent turns through `delta` while
// the curve advances rho * delta. rho == 0 is a corner.
struct Piece {
    double delta = 0.0;
    double rho = 0.0;
};

// Chord direction integral of a unit-radius piece starting at angle a.
std::array<double, 2> chord(double a, double delta)
{
    return {std::sin(a + delta) - std::sin(a), std::cos(a) - std::cos(a + delta)};
}

std::array<double, 2> closure_error(const std::vector<Piece>& pieces)
{
    std::array<double, 2> e{0.0, 0.0};
    double a = 0.0;
    for (const Piece& p : pieces) {
        const auto w = chord(a, p.delta);
        e[0] += p.rho * w[0];
        e[1] += p.rho * w[1];
        a += p.delta;
    }
    return e;
}

double profile_length(const std::vector<Piece>& pieces)
{
    double len = 0.0;
    for (const Piece& p : pieces)
        len += p.rho * p.delta;
    return len;
}

template <std::size_t N>
bool solve(std::array<std::array<double, N>, N> a, std::array<double, N>& b)
{
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
                pivot = r;
        if (!(std::abs(a[pivot][col]) > 1e-300))
            return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < N; ++k)
                a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t col = N; col-- > 0;) {
        for (std::size_t k = col + 1; k < N; ++k)
            b[col] -= a[col][k] * b[k];
        b[col] /= a[col][col];
    }
    return std::all_of(b.begin(), b.end(), [](double v) { return std::isfinite(v); });
}

// Arcs and turns of a profile. The list is rotated so that it starts with an
// arc; corners fold into the preceding turn, and pieces too short to be arcs
// become corners.
bool profile_to_arcs(const std::vector<Piece>& pieces, double min_arc, std::vector<Arc>& arcs,
                     std::vector<double>& turns)
{
    const auto is_arc = [&](const Piece& p) { return p.rho > 0.0 && p.rho * p.delta >= min_arc; };
    const auto first = std::find_if(pieces.begin(), pieces.end(), is_arc);
    if (first == pieces.end())
        return false;
    arcs.clear();
    turns.clear();
    const std::size_t n = pieces.size();
    const std::size_t offset = static_cast<std::size_t>(first - pieces.begin());
    for (std::size_t j = 0; j < n; ++j) {
        const Piece& p = pieces[(offset + j) % n];
        if (is_arc(p)) {
            arcs.push_back({1.0 / p.rho, p.rho * p.delta});
            turns.push_back(0.0);
        } else {
            turns.back() += p.delta;
        }
    }
    return true;
}

// Random partition of 2 pi; smooth pieces get rho = 1/kappa with
// kappa = lambda (1 + spread |X|). Corner pieces stay below pi.
std::vector<Piece> random_profile(const SamplerConfig& cfg, Rng& rng, bool force_last_corner)
{
    const std::size_t m = rng.integer(cfg.min_pieces, cfg.max_pieces);
    std::vector<double> cuts(m - 1);
    for (double& x : cuts)
        x = kTwoPi * rng.uniform();
    std::sort(cuts.begin(), cuts.end());
    std::vector<Piece> pieces(m);
    double prev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double next = i + 1 < m ? cuts[i] : kTwoPi;
        pieces[i].delta = next - prev;
        prev = next;
        const bool corner = (rng.uniform() < cfg.corner_probability || (force_last_corner && i + 1 == m)) &&
                            pieces[i].delta < kPi;
        const double x = rng.normal();
        pieces[i].rho = corner ? 0.0 : 1.0 / (cfg.lambda * (1.0 + cfg.curvature_spread * std::abs(x)));
    }
    return pieces;
}

// Minimum-norm correction of the free smooth radii that closes the profile.
// Radii pushed above 1/lambda are pinned there and the correction is redone
// on the rest.
bool close_profile(std::vector<Piece>& pieces, double lambda)
{
    const double rho_max = 1.0 / lambda;
    std::vector<std::array<double, 2>> w(pieces.size());
    std::vector<bool> free(pieces.size());
    double a = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        w[i] = chord(a, pieces[i].delta);
        a += pieces[i].delta;
        free[i] = pieces[i].rho > 0.0;
    }
    for (std::size_t round = 0; round < pieces.size(); ++round) {
        std::array<std::array<double, 2>, 2> gram{};
        for (std::size_t i = 0; i < pieces.size(); ++i)
            if (free[i])
                for (int r = 0; r < 2; ++r)
                    for (int s = 0; s < 2; ++s)
                        gram[r][s] += w[i][r] * w[i][s];
        const double det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
        if (!(det > 1e-10))
            return false;
        std::array<double, 2> e = closure_error(pieces);
        if (!solve<2>(gram, e))
            return false;
        bool clipped = false;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (!free[i])
                continue;
            pieces[i].rho -= w[i][0] * e[0] + w[i][1] * e[1];
            if (!(pieces[i].rho > 0.0))
                return false;
            if (pieces[i].rho > rho_max) {
                pieces[i].rho = rho_max;
                free[i] = false;
                clipped = true;
            }
        }
        if (!clipped)
            break;
        if (round + 1 == pieces.size())
            return false;
    }
    return true;
}

// Closure is scale-free: fix the largest radius at size / lambda.
void rescale_profile(std::vector<Piece>& pieces, double lambda, double size)
{
    double max_rho = 0.0;
    for (const Piece& p : pieces)
        max_rho = std::max(max_rho, p.rho);
    for (Piece& p : pieces)
        p.rho *= size / (lambda * max_rho);
}

// Closure defect in the frame of the canonical pose: tangential and normal
// offsets of the end point, and the heading error.
std::array<double, 3> defect(const ModelSpace& space, const std::vector<Arc>& arcs, const std::vector<double>& turns,
                             double series_switch)
{
    const Pose start = space.canonical_pose();
    const Vec3 n0 = space.left_normal(start);
    Pose pose = start;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        pose = detail::propagate_unchecked(space, pose, arcs[i].kappa, arcs[i].s, series_switch);
        pose = rotate(space, pose, turns[i]);
    }
    const Vec3 d = pose.position - start.position;
    return {space.dot(d, start.direction), space.dot(d, n0),
            std::atan2(space.dot(pose.direction, n0), space.dot(pose.direction, start.direction))};
}

template <std::size_t N>
double norm(const std::array<double, N>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

// Damped Newton with a central-difference Jacobian.
template <std::size_t N, class F>
bool newton(F&& f, std::array<double, N>& x, std::size_t max_iter = 50, double target = 1e-10)
{
    std::array<double, N> fx = f(x);
    std::size_t stalled = 0;
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        const double r = norm(fx);
        if (!std::isfinite(r))
            return false;
        if (r <= target)
            return true;
        // a stalled quadratic method is sitting at a fold, not converging
        stalled = r > 0.5 * previous ? stalled + 1 : 0;
        if (stalled >= 3)
            return false;
        previous = r;
        std::array<std::array<double, N>, N> jac{};
        for (std::size_t j = 0; j < N; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
            std::array<double, N> xp = x;
            std::array<double, N> xm = x;
            xp[j] += h;
            xm[j] -= h;
            const auto fp = f(xp);
            const auto fm = f(xm);
            for (std::size_t i = 0; i < N; ++i)
                jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
        std::array<double, N> step = fx;
        if (!solve<N>(jac, step))
            return false;
        double alpha = 1.0;
        while (true) {
            std::array<double, N> trial = x;
            for (std::size_t j = 0; j < N; ++j)
                trial[j] -= alpha * step[j];
            const auto ft = f(trial);
            if (norm(ft) < r * (1.0 - 1e-4 * alpha) || norm(ft) <= target) {
                x = trial;
                fx = ft;
                break;
            }
            alpha *= 0.5;
            if (alpha < 1e-6)
                return false;
        }
    }
    return norm(fx) <= target;
}

// Carries a closed Euclidean profile into curvature c by continuation in the
// curvature, re-closing at every step with the free curvature, the last arc
// length and the last turn.
std::optional<std::pair<std::vector<Arc>, std::vector<double>>> continue_to_curvature(
    const std::vector<Piece>& pieces, double c, double lambda, const Tolerances& tol)
{
    std::vector<Arc> base;
    std::vector<double> turns;
    if (!profile_to_arcs(pieces, tol.min_arc_length, base, turns))
        return std::nullopt;
    // on the sphere, turning through delta on a curve of curvature kappa
    // takes delta / sqrt(kappa^2 + c); hyperbolic arcs keep their planar length
    std::vector<double> deltas(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        deltas[i] = base[i].kappa * base[i].s;
    const auto base_length = [&](std::size_t i, double tau) {
        const double k2 = base[i].kappa * base[i].kappa;
        if (c > 0.0)
            return deltas[i] / std::sqrt(k2 + tau * c);
        return base[i].s;
    };
    const std::size_t last = base.size() - 1;
    // With the last length and turn free, the planar Jacobian determinant is
    // the normal displacement of the end point per unit curvature change;
    // free the curvature that moves it most.
    std::size_t free_kappa = 0;
    {
        const ModelSpace plane(0.0);
        double best = -1.0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            std::vector<Arc> bent = base;
            const double h = 1e-6 * std::max(1.0, base[i].kappa);
            bent[i].kappa += h;
            const double lever = std::abs(defect(plane, bent, turns, tol.series_switch)[1]) / h;
            if (lever > best) {
                best = lever;
                free_kappa = i;
            }
        }
    }

    std::vector<Arc> arcs = base;
    std::vector<double> work_turns = turns;
    const auto assemble = [&](double tau, const std::array<double, 3>& x) {
        for (std::size_t i = 0; i < base.size(); ++i)
            arcs[i] = {base[i].kappa, base_length(i, tau)};
        arcs[free_kappa].kappa += x[0];
        arcs[last].s += x[1];
        work_turns[last] = turns[last] + x[2];
    };

    std::array<double, 3> x{0.0, 0.0, 0.0};
    double tau = 0.0;
    double step = 0.125;
    while (tau < 1.0) {
        const double next = std::min(1.0, tau + step);
        const ModelSpace space(next * c);
        std::array<double, 3> trial = x;
        const auto f = [&](const std::array<double, 3>& v) {
            assemble(next, v);
            if (!(arcs[last].s > 0.0))
                return std::array<double, 3>{1e300, 1e300, 1e300};
            return defect(space, arcs, work_turns, tol.series_switch);
        };
        if (newton<3>(f, trial)) {
            tau = next;
            x = trial;
            step = std::min(2.0 * step, 0.5);
        } else {
            step *= 0.5;
            if (step < 1.0 / 256.0)
                return std::nullopt;
        }
    }
    assemble(1.0, x);
    if (arcs[free_kappa].kappa < lambda || !(arcs[last].s >= tol.min_arc_length))
        return std::nullopt;
    if (work_turns[last] < 0.0) {
        if (work_turns[last] < -1e-12)
            return std::nullopt;
        work_turns[last] = 0.0;
    }
    return std::pair{arcs, work_turns};
}

std::optional<ClosedCurve> try_sample(const SamplerConfig& cfg, Rng& rng, std::string& why)
{
    const double c = cfg.space.curvature();
    const bool curved = c != 0.0;
    std::vector<Piece> pieces = random_profile(cfg, rng, curved && cfg.corner_probability > 0.0);
    if (!close_profile(pieces, cfg.lambda)) {
        why = "profile closure correction failed";
        return std::nullopt;
    }
    // half the curves touch curvature lambda
    double size = rng.uniform() < 0.5 ? 1.0 : 0.3 + 0.7 * rng.uniform();
    if (cfg.curvature_spread == 0.0)
        size = 1.0; // every kappa pinned at lambda
    rescale_profile(pieces, cfg.lambda, size);
    std::vector<Arc> arcs;
    std::vector<double> turns;
    if (c < 0.0) {
        // keep |c| F (at most |c| L^2 / 4 pi in the plane) moderate so the
        // curve stays where double precision resolves the hyperboloid
        const double len = profile_length(pieces);
        const double limit = std::sqrt(4.0 * kPi * kMaxHyperbolicExcess / -c);
        if (len > limit)
            for (Piece& p : pieces)
                p.rho *= limit / len;
    }
    if (curved) {
        auto solved = continue_to_curvature(pieces, c, cfg.lambda, cfg.tol);
        if (!solved) {
            why = "closure continuation failed";
            return std::nullopt;
        }
        arcs = std::move(solved->first);
        turns = std::move(solved->second);
    } else if (!profile_to_arcs(pieces, cfg.tol.min_arc_length, arcs, turns)) {
        why = "profile has no arc";
        return std::nullopt;
    }
    for (Arc& arc : arcs)
        arc.kappa = std::max(arc.kappa, cfg.lambda); // 1 / (1 / lambda) may round below lambda
    try {
        ClosedCurve curve(cfg.space, cfg.space.canonical_pose(), std::move(arcs), std::move(turns), cfg.tol);
        if (!curve.is_closed()) {
            why = "closure residual above tolerance";
            return std::nullopt;
        }
        if (!is_lambda_convex(curve, cfg.lambda).convex) {
            why = "sampled curve not lambda-convex";
            return std::nullopt;
        }
        (void)area(curve); // rejects curves whose winding breaks Gauss-Bonnet
        return curve;
    } catch (const std::exception& e) {
        why = e.what();
        return std::nullopt;
    }
}

ClosedCurve pinned_lune(const SamplerConfig& cfg, std::uint64_t index)
{
    Rng rng(cfg.seed, index);
    const double c = cfg.space.curvature();
    const double cap = perimeter_cap(c, cfg.lambda);
    const double top = std::isinf(cap) ? 10.0 / cfg.space.k() : cap;
    return build_lune(c, cfg.lambda, top * (0.05 + 0.95 * rng.uniform()), cfg.tol);
}

ClosedCurve trial_curve(const SamplerConfig& cfg, std::uint64_t index)
{
    return cfg.mode == TrialMode::pinned_lune ? pinned_lune(cfg, index) : sample_curve(cfg, index);
}

std::string describe(const char* what, double value)
{
    std::ostringstream os;
    os << what << ' ' << value;
    return os.str();
}

}  // namespace

void SamplerConfig::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InputError("lambda must be positive");
    if (min_pieces < 2 || max_pieces < min_pieces)
        throw InputError("piece counts must satisfy 2 <= min_pieces <= max_pieces");
    if (!(curvature_spread >= 0.0) || !std::isfinite(curvature_spread))
        throw InputError("curvature spread must be non-negative");
    if (!(corner_probability >= 0.0 && corner_probability < 1.0))
        throw InputError("corner probability must lie in [0, 1)");
    if (trials == 0)
        throw InputError("trials must be positive");
    if (threads == 0)
        throw InputError("threads must be positive");
    if (retries == 0)
        throw InputError("retries must be positive");
}

ClosedCurve sample_curve(const SamplerConfig& config, std::uint64_t index)
{
    config.validate();
    Rng rng(config.seed, index);
    std::string why;
    for (std::size_t attempt = 0; attempt < config.retries; ++attempt)
        if (auto curve = try_sample(config, rng, why))
            return std::move(*curve);
    throw SamplingError("sampling failed after " + std::to_string(config.retries) + " attempts: " + why);
}

std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::out_of_hypothesis: return "out_of_hypothesis";
    case Verdict::skipped: return "skipped";
    }
    return "unknown";
}

TrialRecord evaluate_trial(const ClosedCurve& curve, double lambda, std::size_t index, double bound_bias)
{
    TrialRecord rec;
    rec.index = index;
    rec.L = length(curve);
    rec.min_kappa = std::numeric_limits<double>::infinity();
    for (const Arc& a : curve.arcs())
        rec.min_kappa = std::min(rec.min_kappa, a.kappa);
    rec.corners = static_cast<std::size_t>(
        std::count_if(curve.turns().begin(), curve.turns().end(), [](double t) { return t != 0.0; }));

    const ConvexityVerdict convex = is_lambda_convex(curve, lambda);
    if (!convex.convex) {
        rec.verdict = Verdict::out_of_hypothesis;
        rec.note = convex.reason;
        return rec;
    }
    try {
        rec.F = area(curve);
    } catch (const std::exception& e) {
        rec.verdict = Verdict::skipped;
        rec.note = e.what();
        return rec;
    }

    const double c = curve.space().curvature();
    const double cap = perimeter_cap(c, lambda);
    rec.cap_violation = rec.L > cap + kSandwichTolerance;
    rec.verdict = Verdict::fail;
    if (rec.cap_violation) {
        rec.note = describe("perimeter exceeds cap", cap);
        return rec;
    }
    try {
        rec.F_min = reverse_bound({c, lambda, std::min(rec.L, cap)}).F_min * (1.0 + bound_bias);
        rec.upper = alexandrov_upper_bound(c, rec.F, rec.L);
    } catch (const std::exception& e) {
        rec.note = e.what();
        return rec;
    }
    rec.gap = classical_isoperimetric_gap(c, rec.L, rec.F);
    rec.slack = rec.F - rec.F_min;
    if (rec.F < rec.F_min - kSandwichTolerance)
        rec.note = describe("area below reverse bound by", rec.F_min - rec.F);
    else if (rec.gap < -kSandwichTolerance)
        rec.note = describe("classical isoperimetric gap negative:", rec.gap);
    else if (rec.F > rec.upper + kSandwichTolerance)
        rec.note = describe("area above upper bound by", rec.F - rec.upper);
    else
        rec.verdict = Verdict::pass;
    return rec;
}

double SuiteSummary::skip_rate() const noexcept
{
    return trials == 0 ? 0.0 : static_cast<double>(skipped) / static_cast<double>(trials);
}

bool SuiteSummary::ok() const noexcept
{
    return failed == 0 && cap_violations == 0 && skip_rate() <= kMaxSkipRate;
}

SuiteResult run_inequality_suite(const SamplerConfig& config)
{
    config.validate();
    SuiteResult result;
    result.records.resize(config.trials);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < config.trials; i = next++) {
            try {
                result.records[i] = evaluate_trial(trial_curve(config, i), config.lambda, i, config.bound_bias);
            } catch (const std::exception& e) {
                TrialRecord& rec = result.records[i];
                rec.index = i;
                rec.verdict = Verdict::skipped;
                rec.note = e.what();
            }
        }
    };
    const std::size_t n_threads = std::min(config.threads, config.trials);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
    }

    SuiteSummary& s = result.summary;
    s.c = config.space.curvature();
    s.lambda = config.lambda;
    s.seed = config.seed;
    s.trials = config.trials;
    const double cap = perimeter_cap(s.c, s.lambda);
    for (const TrialRecord& rec : result.records) {
        switch (rec.verdict) {
        case Verdict::pass: ++s.passed; break;
        case Verdict::fail: ++s.failed; break;
        case Verdict::out_of_hypothesis: ++s.out_of_hypothesis; break;
        case Verdict::skipped: ++s.skipped; break;
        }
        if (rec.cap_violation)
            ++s.cap_violations;
        if (rec.verdict == Verdict::pass || rec.verdict == Verdict::fail) {
            if (std::isfinite(cap))
                s.max_L_over_cap = std::max(s.max_L_over_cap, rec.L / cap);
            if (!rec.cap_violation && (!s.min_slack_trial || rec.slack < s.min_slack)) {
                s.min_slack = rec.slack;
                s.min_slack_trial = rec.index;
            }
        }
    }
    if (s.min_slack_trial)
        s.min_slack_curve = trial_curve(config, *s.min_slack_trial);
    return result;
}

bool PerturbationReport::ok() const noexcept
{
    return evaluated > 0 && min_slack >= -kSandwichTolerance;
}

namespace {

constexpr std::size_t kSubdivisions = 8;

// Euclidean: perturb the lune's turning profile, close it by shrinking a
// bracketing pair of radii, then rescale uniformly to perimeter L.
std::optional<ClosedCurve> perturb_euclidean(const LuneSpec& spec, double magnitude, Rng& rng, std::string& why)
{
    const double lambda = spec.lambda;
    const double t = kPi - spec.theta;
    std::vector<Piece> pieces;
    std::vector<double> weight; // zero on arc pieces
    double loss = 0.0;
    for (int half = 0; half < 2; ++half) {
        for (std::size_t i = 0; i < kSubdivisions; ++i) {
            const double delta = spec.theta / kSubdivisions;
            const double u = rng.uniform();
            pieces.push_back({delta, (1.0 - magnitude * u) / lambda});
            weight.push_back(0.0);
            loss += magnitude * u * delta / lambda;
        }
        for (std::size_t i = 0; i < kSubdivisions; ++i) {
            pieces.push_back({t / kSubdivisions, 0.0});
            weight.push_back(0.1 + rng.uniform());
        }
    }
    // lengthen the corner pieces by `amount` in total
    const auto grow_corners = [&](double amount) {
        double total = 0.0;
        for (std::size_t i = 0; i < pieces.size(); ++i)
            total += weight[i] * pieces[i].delta;
        if (!(total > 0.0))
            return;
        for (std::size_t i = 0; i < pieces.size(); ++i)
            pieces[i].rho += amount * weight[i] / total;
    };
    grow_corners(loss * (2.0 + rng.uniform()));

    std::vector<std::array<double, 2>> w(pieces.size());
    double a = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        w[i] = chord(a, pieces[i].delta);
        a += pieces[i].delta;
    }
    const double L = spec.L;
    for (int round = 0; round < 8; ++round) {
        const std::array<double, 2> e = closure_error(pieces);
        if (norm(e) > 1e-15 * L) {
            // shrink the pair of radii whose chords bracket e
            double best = std::numeric_limits<double>::infinity();
            std::size_t bi = 0;
            std::size_t bj = 0;
            std::array<double, 2> bx{};
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                for (std::size_t j = i + 1; j < pieces.size(); ++j) {
                    if (pieces[i].rho <= 0.0 || pieces[j].rho <= 0.0)
                        continue;
                    std::array<std::array<double, 2>, 2> m{{{w[i][0], w[j][0]}, {w[i][1], w[j][1]}}};
                    std::array<double, 2> x = e;
                    if (!solve<2>(m, x) || x[0] < 0.0 || x[1] < 0.0)
                        continue;
                    const double use = std::max(x[0] / pieces[i].rho, x[1] / pieces[j].rho);
                    if (use < best) {
                        best = use;
                        bi = i;
                        bj = j;
                        bx = x;
                    }
                }
            }
            if (!(best < 1.0)) {
                why = "no bracketing pair restores closure";
                return std::nullopt;
            }
            pieces[bi].rho -= bx[0];
            pieces[bj].rho -= bx[1];
        }
        const double len = profile_length(pieces);
        if (len >= L)
            break;
        grow_corners(2.0 * (L - len));
    }
    const double len = profile_length(pieces);
    if (len < L * (1.0 - 1e-12)) {
        why = "perturbed profile shorter than L";
        return std::nullopt;
    }
    const double mu = std::min(1.0, L / len);
    for (Piece& p : pieces)
        p.rho *= mu;

    std::vector<Arc> arcs;
    std::vector<double> turns;
    if (!profile_to_arcs(pieces, kDefaultTolerances.min_arc_length, arcs, turns)) {
        why = "profile has no arc";
        return std::nullopt;
    }
    const ModelSpace plane(0.0);
    return ClosedCurve(plane, plane.canonical_pose(), std::move(arcs), std::move(turns));
}

// Curved: perturb curvatures upwards and lengths both ways on a subdivided
// lune, then re-close with perimeter L over the first and last lengths and
// the two corner turns.
std::optional<ClosedCurve> perturb_curved(const LuneSpec& spec, double magnitude, Rng& rng, std::string& why)
{
    const ModelSpace space(spec.c);
    const std::size_t n = 2 * kSubdivisions;
    std::vector<Arc> arcs(n);
    for (Arc& arc : arcs) {
        arc.kappa = spec.lambda * (1.0 + magnitude * rng.uniform());
        arc.s = 0.5 * spec.L / kSubdivisions * (1.0 + magnitude * (2.0 * rng.uniform() - 1.0));
    }
    std::vector<double> turns(n, 0.0);
    const double t = kPi - spec.theta;
    const std::size_t mid = kSubdivisions - 1;
    std::array<double, 4> x{arcs.front().s, arcs.back().s, t, t};
    const auto f = [&](const std::array<double, 4>& v) {
        arcs.front().s = v[0];
        arcs.back().s = v[1];
        turns[mid] = v[2];
        turns.back() = v[3];
        if (!(v[0] > 0.0 && v[1] > 0.0))
            return std::array<double, 4>{1e300, 1e300, 1e300, 1e300};
        const auto d = defect(space, arcs, turns, kDefaultTolerances.series_switch);
        double len = 0.0;
        for (const Arc& arc : arcs)
            len += arc.s;
        return std::array<double, 4>{d[0], d[1], d[2], len - spec.L};
    };
    if (!newton<4>(f, x)) {
        why = "closure with fixed perimeter did not converge";
        return std::nullopt;
    }
    (void)f(x);
    for (double& turn : turns) {
        if (turn < 0.0) {
            if (turn < -1e-12) {
                why = "re-closed curve has a negative turn";
                return std::nullopt;
            }
            turn = 0.0;
        }
    }
    return ClosedCurve(space, space.canonical_pose(), std::move(arcs), std::move(turns));
}

}  // namespace

PerturbationReport perturb_lune_test(double c, double lambda, double L, std::size_t n_perturbations,
                                     double magnitude, std::uint64_t seed)
{
    if (n_perturbations == 0)
        throw InputError("need at least one perturbation");
    if (!(magnitude >= 0.0 && magnitude < 0.5))
        throw InputError("perturbation magnitude must lie in [0, 0.5)");
    const LuneSpec spec = lune_spec(c, lambda, L);
    if (spec.at_cap)
        throw DomainError("perturbation test needs L strictly below the cap");

    PerturbationReport report;
    report.c = c;
    report.lambda = lambda;
    report.L = L;
    report.magnitude = magnitude;
    report.requested = n_perturbations;
    report.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_perturbations; ++i) {
        Rng rng(seed, i);
        std::string why;
        try {
            std::optional<ClosedCurve> curve =
                c == 0.0 ? perturb_euclidean(spec, magnitude, rng, why) : perturb_curved(spec, magnitude, rng, why);
            if (curve && !curve->is_closed())
                why = "perturbed curve does not close";
            else if (curve && !is_lambda_convex(*curve, lambda).convex)
                why = "perturbed curve is not lambda-convex";
            else if (curve) {
                const double len = length(*curve);
                const double F = area(*curve);
                const double F_min = reverse_bound({c, lambda, len}).F_min;
                report.min_slack = std::min(report.min_slack, F - F_min);
                ++report.evaluated;
                continue;
            }
        } catch (const std::exception& e) {
            why = e.what();
        }
        ++report.skipped;
        report.log.push_back("perturbation " + std::to_string(i) + ": " + why);
    }
    if (report.evaluated == 0)
        report.min_slack = 0.0;
    return report;
}

}  // namespace revisop
