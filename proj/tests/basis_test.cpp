#include <random>

#include <catch_amalgamated.hpp>

#include <bnf/basis.hpp>

#include "test_util.hpp"

using namespace bnf;
using namespace bnf_test;

TEST_CASE("real to complex basis examples")
{
    // x1 xi1 + x2 xi2 -> q1.
    const RealPolynomial q1r{{{1, 1, 0, 0}, 1}, {{0, 0, 1, 1}, 1}};
    REQUIRE(to_complex_basis(q1r) == series::q1());
    // x1 xi2 - x2 xi1 -> q2.
    const RealPolynomial q2r{{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, -1}};
    REQUIRE(to_complex_basis(q2r) == series::q2());

    // x1^2 + x2^2 = |z1|^2.
    const RealPolynomial n1{{{2, 0, 0, 0}, 1}, {{0, 0, 2, 0}, 1}};
    REQUIRE(to_complex_basis(n1) == FormalSeries::monomial({1, 0, 1, 0}));

    // x1^3 = (z1 + conj z1)^3 / 8.
    const auto c = to_complex_basis(RealPolynomial::monomial({3, 0, 0, 0}));
    REQUIRE(c.size() == 4);
    REQUIRE(c.coeff({3, 0, 0, 0}) == GaussianRational(Rational(1, 8)));
    REQUIRE(c.coeff({2, 0, 1, 0}) == GaussianRational(Rational(3, 8)));
}

TEST_CASE("complex to real basis examples")
{
    // z1 = x1 + i x2.
    const RealPolynomial expect{{{1, 0, 0, 0}, 1}, {{0, 0, 1, 0}, GaussianRational::i()}};
    REQUIRE(to_real_basis(series::z1()) == expect);
    // q = conj(z1) z2 = q1 + i q2.
    const auto q = to_real_basis(series::q());
    REQUIRE(q.coeff({1, 1, 0, 0}) == GaussianRational(1));
    REQUIRE(q.coeff({0, 0, 1, 1}) == GaussianRational(1));
    REQUIRE(q.coeff({1, 0, 0, 1}) == GaussianRational::i());
    REQUIRE(q.coeff({0, 1, 1, 0}) == -GaussianRational::i());
}

TEST_CASE("basis conversion round trips through degree 8")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        const auto p = random_real_basis(rng, 0, 8, 0.05);
        const auto f = to_complex_basis(p);
        REQUIRE(is_real_valued(f));
        REQUIRE(to_real_basis(f) == p);
    }
    for (int trial = 0; trial < 6; ++trial) {
        const auto f = random_complex_series(rng, 0, 8, 0.05);
        REQUIRE(to_complex_basis(to_real_basis(f)) == f);
    }
    // Every monomial of degree <= 8.
    for (unsigned d = 0; d <= 8; ++d) {
        for (const auto &m : real_monomials(d)) {
            const auto p = RealPolynomial::monomial(m);
            REQUIRE(to_real_basis(to_complex_basis(p)) == p);
        }
    }
}

TEST_CASE("conversion agrees with numeric evaluation")
{
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_real_basis(rng, 0, 5, 0.2);
        const auto f = to_complex_basis(p);
        const PhasePoint z{nd(rng), nd(rng), nd(rng), nd(rng)};
        // Direct evaluation in the real basis, order (x1, xi1, x2, xi2).
        const std::array<double, 4> v{z.x1, z.xi1, z.x2, z.xi2};
        double direct = 0;
        for (const auto &[k, c] : p) {
            double t = c.re.get_d();
            for (std::size_t i = 0; i < 4; ++i) {
                t *= std::pow(v[i], k[i]);
            }
            direct += t;
        }
        const auto val = evaluate(f, z);
        REQUIRE(val.real() == Catch::Approx(direct).epsilon(1e-10).margin(1e-10));
        REQUIRE(std::abs(val.imag()) <= 1e-10 * (1 + std::abs(direct)));
    }
}

TEST_CASE("real-basis derivatives and bracket")
{
    const RealPolynomial x1 = RealPolynomial::monomial({1, 0, 0, 0});
    const RealPolynomial xi1 = RealPolynomial::monomial({0, 1, 0, 0});
    REQUIRE(poisson_bracket(xi1, x1, 4) == RealPolynomial::constant(1));

    const RealPolynomial p{{{2, 1, 0, 3}, Rational(1, 2)}};
    REQUIRE(partial(p, 0) == RealPolynomial{{{1, 1, 0, 3}, 1}});
    REQUIRE(partial(p, 3) == RealPolynomial{{{2, 1, 0, 2}, Rational(3, 2)}});
    REQUIRE(partial(p, 2).empty());

    // Real partials in the complex basis match real-basis partials.
    std::mt19937_64 rng(12);
    const std::size_t real_slot[4] = {0, 2, 1, 3}; // (x1, x2, xi1, xi2) -> (x1, xi1, x2, xi2)
    for (int trial = 0; trial < 5; ++trial) {
        const auto q = random_real_basis(rng, 1, 5, 0.15);
        const auto f = to_complex_basis(q);
        for (std::size_t v = 0; v < 4; ++v) {
            REQUIRE(to_real_basis(real_partial(f, v)) == partial(q, real_slot[v]));
        }
    }
}
