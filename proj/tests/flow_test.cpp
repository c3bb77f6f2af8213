#include <cmath>
#include <numbers>
#include <random>

#include <catch_amalgamated.hpp>

#include <bnf/flow.hpp>

#include "test_util.hpp"

using namespace bnf;
using namespace bnf_test;

namespace
{

double dist(const PhasePoint &a, const PhasePoint &b)
{
    return std::hypot(a.x1 - b.x1, a.x2 - b.x2, std::hypot(a.xi1 - b.xi1, a.xi2 - b.xi2));
}

} // namespace

TEST_CASE("exact_flow examples")
{
    const auto z = PhasePoint::from_complex(1.0, 1.0);
    const auto a = exact_flow(ModelFlow::Q1, 1.0, z);
    REQUIRE(a.x1 == Catch::Approx(std::exp(1.0)));
    REQUIRE(a.xi1 == Catch::Approx(std::exp(-1.0)));
    const auto b = exact_flow(ModelFlow::Q2, std::numbers::pi / 2, z);
    REQUIRE(b.x1 == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(b.x2 == Catch::Approx(1.0));
    REQUIRE(b.xi2 == Catch::Approx(1.0));
    REQUIRE(dist(exact_flow(ModelFlow::Q2, 2 * std::numbers::pi, z), z) < 1e-14);
}

TEST_CASE("exact flows are one-parameter groups and commute")
{
    std::mt19937_64 rng(3);
    for (int s = 0; s < 10; ++s) {
        const auto z = random_sphere_point(rng, 1.0);
        for (auto which : {ModelFlow::Q1, ModelFlow::Q2}) {
            const auto ab = exact_flow(which, 0.3, exact_flow(which, 0.4, z));
            REQUIRE(dist(ab, exact_flow(which, 0.7, z)) < 1e-14);
        }
        const auto x = exact_flow(ModelFlow::Q1, 0.5, exact_flow(ModelFlow::Q2, 1.1, z));
        const auto y = exact_flow(ModelFlow::Q2, 1.1, exact_flow(ModelFlow::Q1, 0.5, z));
        REQUIRE(dist(x, y) < 1e-14);
        // Both integrals are preserved by both flows.
        REQUIRE(q1_value(x) == Catch::Approx(q1_value(z)).margin(1e-14));
        REQUIRE(q2_value(x) == Catch::Approx(q2_value(z)).margin(1e-14));
    }
}

TEST_CASE("numeric_flow reproduces the model flows")
{
    std::mt19937_64 rng(8);
    for (int s = 0; s < 5; ++s) {
        const auto z = random_sphere_point(rng, 1.0);
        REQUIRE(dist(numeric_flow(series::q1(), 0.8, z, 400), exact_flow(ModelFlow::Q1, 0.8, z)) < 1e-10);
        REQUIRE(dist(numeric_flow(series::q2(), 1.3, z, 400), exact_flow(ModelFlow::Q2, 1.3, z)) < 1e-10);
        // Period 2 pi of the q2-flow.
        REQUIRE(dist(numeric_flow(series::q2(), 2 * std::numbers::pi, z, 800), z) < 1e-9);
    }
}

TEST_CASE("numeric_flow conserves energy")
{
    std::mt19937_64 rng(14);
    const auto H = random_real_series(rng, 3, 4, 0.2);
    const CompiledSeries h(H);
    for (int s = 0; s < 5; ++s) {
        const auto z = random_sphere_point(rng, 0.2);
        const auto w = numeric_flow(H, 1.0, z, 200);
        REQUIRE(h.real(w) == Catch::Approx(h.real(z)).margin(1e-12));
    }
}

TEST_CASE("numeric_flow overflow")
{
    // H = x1^2 xi1: x1' = x1^2 blows up at t = 1 from x1 = 1.
    const auto H = mul(mul(series::x1(), series::x1(), 3), series::xi1(), 3);
    REQUIRE_THROWS_AS(numeric_flow(H, 2.0, PhasePoint{1, 0, 0, 0}, 200), StepOverflow);
    REQUIRE_NOTHROW(numeric_flow(H, 0.5, PhasePoint{1, 0, 0, 0}, 200));
    REQUIRE(numeric_flow(H, 0.5, PhasePoint{1, 0, 0, 0}, 400).x1 == Catch::Approx(2.0).epsilon(1e-8));
    REQUIRE_THROWS_AS(numeric_flow(H, 1.0, PhasePoint{}, 0), std::invalid_argument);
}

TEST_CASE("taylor_flow_check")
{
    const std::vector<double> radii{0.2, 0.1, 0.05, 0.025};
    SECTION("A = 0 is exact")
    {
        const auto rep = taylor_flow_check(FormalSeries{}, series::q1(), 4, radii);
        REQUIRE(rep.degenerate);
        REQUIRE(rep.pass);
    }
    SECTION("A = x1^3 on q1: exp_ad is a finite sum")
    {
        const auto A = mul(mul(series::x1(), series::x1(), 3), series::x1(), 3);
        // exp(ad_A) q1 = q1 - 3 x1^3 exactly, so only integration
        // error remains.
        const auto rep = taylor_flow_check(A, series::q1(), 4, radii);
        REQUIRE(rep.pass);
        for (double e : rep.errors) {
            REQUIRE(e < 1e-10);
        }
    }
    SECTION("generic generator has contact order N + 1")
    {
        std::mt19937_64 rng(77);
        const auto A = random_real_series(rng, 3, 4, 0.3);
        const auto f = random_real_series(rng, 2, 4, 0.3);
        const auto rep = taylor_flow_check(A, f, 4, radii);
        INFO("slope " << rep.slope);
        REQUIRE_FALSE(rep.degenerate);
        REQUIRE(rep.slope >= 4.7);
        REQUIRE(rep.pass);
        // A lower truncation has a lower slope.
        const auto low = taylor_flow_check(A, f, 3, radii);
        REQUIRE(low.slope < 4.7);
        REQUIRE(low.slope >= 3.7);
    }
}

TEST_CASE("loglog_slope")
{
    const std::vector<double> x{1, 2, 4, 8};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(3 * std::pow(v, 5));
    }
    REQUIRE(loglog_slope(x, y) == Catch::Approx(5.0));
}

TEST_CASE("liouville_pairing")
{
    // xi-homogeneous of degree n: pairing gives n H.
    const auto H1 = series::q1();
    REQUIRE(liouville_pairing(H1) == H1);
    const auto H2 = mul(mul(series::xi1(), series::xi2(), 2), series::x1(), 3);
    REQUIRE(liouville_pairing(H2) == H2 * GaussianRational(2));
    const auto H0 = mul(series::x1(), series::x2(), 2);
    REQUIRE(liouville_pairing(H0).empty());
    // Agrees with alpha_0(X_H) evaluated numerically.
    std::mt19937_64 rng(2);
    const auto H = random_real_series(rng, 2, 4, 0.2);
    const HamiltonianField X(H);
    const auto L = liouville_pairing(H);
    for (int s = 0; s < 5; ++s) {
        const auto z = random_sphere_point(rng, 0.7);
        const auto v = X(z);
        REQUIRE(evaluate(L, z).real() == Catch::Approx(z.xi1 * v[0] + z.xi2 * v[1]).margin(1e-12));
    }
}

TEST_CASE("action_integral")
{
    std::mt19937_64 rng(50);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int s = 0; s < 20; ++s) {
        const auto z = random_sphere_point(rng, u(rng));
        REQUIRE(std::abs(action_integral(z) - q2_value(z)) <= 1e-12);
        // Invariant along the loop itself.
        REQUIRE(std::abs(action_integral(exact_flow(ModelFlow::Q2, 0.9, z)) - action_integral(z)) <= 1e-12);
    }
    REQUIRE(action_integral(PhasePoint{}) == 0.0);
}

TEST_CASE("flow_lab contract examples")
{
    const auto z = PhasePoint::from_complex(1.0, 1.0);
    const auto a = exact_flow(ModelFlow::Q1, std::log(2.0), z);
    REQUIRE(dist(a, PhasePoint::from_complex(2.0, 0.5)) < 1e-15);

    // q = conj(z1) z2 is invariant under both flows.
    std::mt19937_64 rng(12);
    for (int s = 0; s < 5; ++s) {
        const auto w = random_sphere_point(rng, 1.0);
        const auto q = std::conj(w.z1()) * w.z2();
        for (auto which : {ModelFlow::Q1, ModelFlow::Q2}) {
            const auto v = exact_flow(which, 0.6, w);
            REQUIRE(std::abs(std::conj(v.z1()) * v.z2() - q) < 1e-14);
        }
    }

    const double e = std::exp(1.0);
    REQUIRE(dist(numeric_flow(series::q1(), 1.0, z, 1000), PhasePoint::from_complex(e, 1 / e)) < 1e-8);
    REQUIRE(dist(numeric_flow(series::q2(), 2 * std::numbers::pi, z, 1000), z) < 1e-8);

    // Energy along a trajectory, relative.
    const auto H = series::q1() + random_real_series(rng, 3, 3, 0.3);
    const CompiledSeries h(H);
    auto p = random_sphere_point(rng, 0.3);
    const double h0 = h.real(p);
    for (int k = 0; k < 10; ++k) {
        p = numeric_flow(H, 0.1, p, 50);
        REQUIRE(std::abs(h.real(p) - h0) <= 1e-8 * std::abs(h0));
    }

    REQUIRE(liouville_pairing(series::q2()) == series::q2());
    const auto xi1sq = mul(series::xi1(), series::xi1(), 2);
    REQUIRE(liouville_pairing(xi1sq) == xi1sq * GaussianRational(2));
    REQUIRE(liouville_pairing(series::x1()).empty());

    REQUIRE(action_integral(PhasePoint::from_complex(1.0, {0.0, 1.0})) == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("liouville pairing on xi-homogeneous polynomials")
{
    std::mt19937_64 rng(404);
    for (unsigned n = 0; n <= 4; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            // Real-basis order (x1, xi1, x2, xi2): xi-degree is j + l.
            RealPolynomial p;
            for (unsigned d = n; d <= n + 2; ++d) {
                for (const auto &m : real_monomials(d)) {
                    if (m[1] + m[3] == n && std::bernoulli_distribution(0.3)(rng)) {
                        p.add_term(m, random_rational(rng));
                    }
                }
            }
            const auto H = to_complex_basis(p);
            REQUIRE(liouville_pairing(H) == H * GaussianRational(long(n)));
        }
    }
}

TEST_CASE("taylor_flow_check with a terminating bracket series")
{
    // exp(ad_{x1^3}) q1 = q1 - 3 x1^3 exactly: only integrator error remains.
    const auto A = mul(mul(series::x1(), series::x1(), 3), series::x1(), 3);
    const auto rep = taylor_flow_check(A, series::q1(), 5, {1e-1, 1e-2, 1e-3});
    REQUIRE(rep.pass);
    for (std::size_t k = 0; k < rep.radii.size(); ++k) {
        REQUIRE(rep.errors[k] <= 1e-12 * rep.radii[k] * rep.radii[k]);
    }
}
