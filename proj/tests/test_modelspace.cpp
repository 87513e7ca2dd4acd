#include "revisop/errors.hpp"
#include "revisop/modelspace.hpp"

#include "support/frenet_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace revisop;
using revisop::testing::ChartState;

namespace {

constexpr double kPi = std::numbers::pi;

double pose_gap(const ModelSpace& space, const Pose& a, const Pose& b)
{
    return pose_mismatch(space, a, b);
}

Pose random_pose(const ModelSpace& space, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Pose p = space.canonical_pose();
    p = propagate(space, p, u(rng), 1.0 + u(rng));
    return rotate(space, p, kPi * u(rng));
}

}  // namespace

TEST_CASE("generalized trigonometry")
{
    SUBCASE("three regimes")
    {
        CHECK(gentrig::sn(0.0, 0.7) == doctest::Approx(0.7).epsilon(1e-15));
        CHECK(gentrig::sn(4.0, 0.7) == doctest::Approx(std::sin(1.4) / 2.0).epsilon(1e-15));
        CHECK(gentrig::sn(-4.0, 0.7) == doctest::Approx(std::sinh(1.4) / 2.0).epsilon(1e-15));
        CHECK(gentrig::cs(4.0, 0.7) == doctest::Approx(std::cos(1.4)).epsilon(1e-15));
        CHECK(gentrig::vers(-4.0, 0.7) == doctest::Approx((std::cosh(1.4) - 1.0) / 4.0).epsilon(1e-14));
    }
    SUBCASE("continuous at zero curvature")
    {
        for (double c : {1e-3, 1e-6, 1e-9, 1e-12}) {
            CHECK(std::abs(gentrig::sn(c, 2.0) - 2.0) < 2.0 * c * 8.0 / 6.0 + 1e-15);
            CHECK(std::abs(gentrig::sn(-c, 2.0) - 2.0) < 2.0 * c * 8.0 / 6.0 + 1e-15);
        }
    }
    SUBCASE("series and closed form agree across the switch")
    {
        for (double c : {1.0, -1.0}) {
            const double x = std::sqrt(1e-8) * 1.0000001; // just past the switch
            const double y = std::sqrt(1e-8) * 0.9999999; // just before it
            CHECK(gentrig::sn(c, x) / x == doctest::Approx(gentrig::sn(c, y) / y).epsilon(1e-14));
            CHECK(gentrig::vers(c, x) / (x * x) == doctest::Approx(gentrig::vers(c, y) / (y * y)).epsilon(1e-9));
        }
    }
    SUBCASE("sn'' = -c sn by finite differences")
    {
        for (double c : {2.0, 0.0, -3.0}) {
            const double x = 0.8;
            const double h = 1e-4;
            const double second = (gentrig::sn(c, x + h) - 2.0 * gentrig::sn(c, x) + gentrig::sn(c, x - h)) / (h * h);
            CHECK(second == doctest::Approx(-c * gentrig::sn(c, x)).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("model space classification")
{
    CHECK(ModelSpace(0.0).geometry() == Geometry::euclidean);
    CHECK(ModelSpace(0.0).k() == 0.0);
    CHECK(ModelSpace(4.0).geometry() == Geometry::spherical);
    CHECK(ModelSpace(4.0).k() == 2.0);
    CHECK(ModelSpace(-0.25).geometry() == Geometry::hyperbolic);
    CHECK(ModelSpace(-0.25).k() == 0.5);
    CHECK_THROWS_AS(ModelSpace(std::numeric_limits<double>::infinity()), InputError);
    CHECK_THROWS_AS(ModelSpace(std::nan("")), InputError);
}

TEST_CASE("propagate examples")
{
    SUBCASE("straight line in the plane")
    {
        const ModelSpace plane(0.0);
        const Pose out = propagate(plane, plane.canonical_pose(), 0.0, 1.0);
        CHECK(out.position.x == doctest::Approx(1.0));
        CHECK(out.position.y == doctest::Approx(0.0));
        CHECK(out.direction.x == doctest::Approx(1.0));
    }
    SUBCASE("unit circle closes")
    {
        const ModelSpace plane(0.0);
        const Pose start = plane.canonical_pose();
        CHECK(pose_gap(plane, start, propagate(plane, start, 1.0, 2.0 * kPi)) <= 1e-9);
    }
    SUBCASE("curved circles close")
    {
        const ModelSpace sphere(1.0);
        CHECK(pose_gap(sphere, sphere.canonical_pose(),
                       propagate(sphere, sphere.canonical_pose(), 1.0, 2.0 * kPi / std::sqrt(2.0))) <= 1e-9);
        const ModelSpace hyp(-1.0);
        CHECK(pose_gap(hyp, hyp.canonical_pose(), propagate(hyp, hyp.canonical_pose(), 2.0, 2.0 * kPi / std::sqrt(3.0))) <=
              1e-9);
    }
    SUBCASE("turning left for positive curvature")
    {
        const ModelSpace plane(0.0);
        const Pose out = propagate(plane, plane.canonical_pose(), 1.0, 0.5 * kPi);
        CHECK(out.position.x == doctest::Approx(1.0));
        CHECK(out.position.y == doctest::Approx(1.0));
        CHECK(out.direction.y == doctest::Approx(1.0));
    }
    SUBCASE("input errors")
    {
        const ModelSpace sphere(1.0);
        Pose bad = sphere.canonical_pose();
        bad.position.z = 1.1;
        CHECK_THROWS_AS((void)propagate(sphere, bad, 1.0, 1.0), InputError);
        bad = sphere.canonical_pose();
        bad.direction = {1.0, 0.0, 0.1};
        CHECK_THROWS_AS((void)propagate(sphere, bad, 1.0, 1.0), InputError);
        CHECK_THROWS_AS((void)propagate(sphere, sphere.canonical_pose(), 1.0, -1.0), InputError);
    }
}

TEST_CASE("rotate examples")
{
    const ModelSpace plane(0.0);
    const Pose start = plane.canonical_pose();
    CHECK(pose_gap(plane, start, rotate(plane, start, 0.0)) == 0.0);
    CHECK(pose_gap(plane, start, rotate(plane, start, 2.0 * kPi)) <= 1e-12);
    const Pose up = rotate(plane, start, 0.5 * kPi);
    CHECK(up.direction.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(up.direction.y == doctest::Approx(1.0));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (double c : {0.0, 2.0, -0.5}) {
        const ModelSpace space(c);
        for (int i = 0; i < 20; ++i) {
            const Pose p = random_pose(space, rng);
            const double a = u(rng);
            const double b = u(rng);
            CHECK(pose_gap(space, rotate(space, rotate(space, p, a), b), rotate(space, p, a + b)) <= 1e-12);
        }
    }
}

TEST_CASE("distance examples")
{
    const ModelSpace plane(0.0);
    CHECK(distance(plane, {}, {}) == 0.0);
    CHECK(distance(plane, {0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0));
    const ModelSpace sphere(1.0);
    CHECK(distance(sphere, {0, 0, 1}, {0, 0, -1}) == doctest::Approx(kPi));
    CHECK_THROWS_AS((void)distance(sphere, {0, 0, 2}, {0, 0, 1}), InputError);
}

TEST_CASE("distance is a metric on random points")
{
    std::mt19937_64 rng(3);
    for (double c : {0.0, 1.5, -2.0}) {
        const ModelSpace space(c);
        for (int i = 0; i < 50; ++i) {
            const Vec3 p = random_pose(space, rng).position;
            const Vec3 q = random_pose(space, rng).position;
            const Vec3 r = random_pose(space, rng).position;
            const double pq = distance(space, p, q);
            CHECK(pq == doctest::Approx(distance(space, q, p)).epsilon(1e-12));
            CHECK(pq >= 0.0);
            CHECK(distance(space, p, r) <= pq + distance(space, q, r) + 1e-12);
            CHECK(distance(space, p, p) <= 1e-7);
        }
    }
}

TEST_CASE("propagation properties")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    SUBCASE("composition law")
    {
        for (double c : {0.0, 1.0, -1.0, 3.0, -0.3}) {
            const ModelSpace space(c);
            for (int i = 0; i < 50; ++i) {
                const Pose p = random_pose(space, rng);
                const double kappa = 4.0 * u(rng) - 1.0;
                const double s1 = 2.0 * u(rng);
                const double s2 = 2.0 * u(rng);
                const Pose a = propagate(space, p, kappa, s1 + s2);
                const Pose b = propagate(space, propagate(space, p, kappa, s1), kappa, s2);
                CHECK(pose_gap(space, a, b) <= 1e-10);
            }
        }
    }
    SUBCASE("full-circle closure")
    {
        for (double c : {0.0, 1.0, -1.0}) {
            const ModelSpace space(c);
            for (int i = 0; i < 30; ++i) {
                const double kappa = std::sqrt(std::max(0.0, -c)) + 0.05 + 3.0 * u(rng);
                const Pose p = random_pose(space, rng);
                const Pose q = propagate(space, p, kappa, 2.0 * kPi / std::sqrt(kappa * kappa + c));
                CHECK(pose_gap(space, p, q) <= 1e-9);
            }
        }
    }
    SUBCASE("geodesics realise distance")
    {
        for (double c : {0.0, 1.0, -1.0}) {
            const ModelSpace space(c);
            for (int i = 0; i < 30; ++i) {
                const Pose p = random_pose(space, rng);
                const double s = c > 0 ? 3.0 * u(rng) : 5.0 * u(rng);
                CHECK(distance(space, p.position, propagate(space, p, 0.0, s).position) ==
                      doctest::Approx(s).epsilon(1e-10).scale(1.0));
            }
        }
    }
    SUBCASE("propagated poses stay valid")
    {
        for (double c : {0.0, 2.0, -2.0}) {
            const ModelSpace space(c);
            Pose p = space.canonical_pose();
            for (int i = 0; i < 200; ++i) {
                p = rotate(space, propagate(space, p, 3.0 * u(rng) - 1.0, u(rng)), u(rng) - 0.5);
                CHECK(space.is_valid(p));
                // restart before the hyperboloid outgrows double precision
                if (distance(space, space.base_point(), p.position) > 8.0)
                    p = space.canonical_pose();
            }
        }
    }
    SUBCASE("scaling law")
    {
        // Curvature c with (kappa, s) is curvature c / mu^2 with (kappa / mu, mu s)
        // after scaling lengths by mu. Compare the scale-free observables:
        // travelled distance divided by the length unit and the heading change
        // against the chord.
        for (int i = 0; i < 40; ++i) {
            const double mu = 0.5 + 1.5 * u(rng);
            const double c = 4.0 * u(rng) - 2.0;
            const double kappa = 3.0 * u(rng) - 1.0;
            const double s = 0.2 + 1.5 * u(rng);
            const ModelSpace a(c);
            const ModelSpace b(c / (mu * mu));
            const Pose pa = propagate(a, a.canonical_pose(), kappa, s);
            const Pose pb = propagate(b, b.canonical_pose(), kappa / mu, mu * s);
            CHECK(mu * distance(a, a.base_point(), pa.position) ==
                  doctest::Approx(distance(b, b.base_point(), pb.position)).epsilon(1e-10));
            const double turn_a = signed_angle(a, a.canonical_pose(), direction_toward(a, a.base_point(), pa.position));
            const double turn_b = signed_angle(b, b.canonical_pose(), direction_toward(b, b.base_point(), pb.position));
            CHECK(turn_a == doctest::Approx(turn_b).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("closed-form propagation matches the Frenet ODE oracle")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const double c = 4.0 * u(rng) - 2.0;
        const double kappa = 4.0 * u(rng) - 1.0;
        const double s = 0.1 + 2.0 * u(rng);
        const ModelSpace space(c);
        const Pose p = random_pose(space, rng);
        const ChartState start = testing::to_conformal(space, p);
        const ChartState oracle = testing::integrate_frenet(c, start, kappa, s, 4000);
        const ChartState closed = testing::to_conformal(space, propagate(space, p, kappa, s));
        CHECK(testing::chart_distance(oracle, closed) <= 1e-8);
    }
}
