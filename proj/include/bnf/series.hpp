#ifndef BNF_SERIES_HPP
#define BNF_SERIES_HPP

#include <algorithm>
#include <array>
#include <complex>
#include <vector>

#include <bnf/gaussian_rational.hpp>
#include <bnf/monomial.hpp>
#include <bnf/phase_point.hpp>
#include <bnf/polynomial.hpp>

namespace bnf
{

// Truncated formal series in (x1, x2, xi1, xi2), stored in the complex
// monomial basis z1, z2, conj z1, conj z2 where the model flows act
// diagonally.
using FormalSeries = Polynomial4<MultiIndex>;

namespace series
{

inline FormalSeries z1()
{
    return FormalSeries::monomial({1, 0, 0, 0});
}
inline FormalSeries z2()
{
    return FormalSeries::monomial({0, 1, 0, 0});
}
inline FormalSeries zbar1()
{
    return FormalSeries::monomial({0, 0, 1, 0});
}
inline FormalSeries zbar2()
{
    return FormalSeries::monomial({0, 0, 0, 1});
}
inline FormalSeries one()
{
    return FormalSeries::constant(1);
}

// x1 = (z1 + conj z1)/2, x2 = (z1 - conj z1)/(2i), and likewise for xi.
inline FormalSeries x1()
{
    return {{{1, 0, 0, 0}, Rational(1, 2)}, {{0, 0, 1, 0}, Rational(1, 2)}};
}
inline FormalSeries x2()
{
    return {{{1, 0, 0, 0}, GaussianRational(0, Rational(-1, 2))}, {{0, 0, 1, 0}, GaussianRational(0, Rational(1, 2))}};
}
inline FormalSeries xi1()
{
    return {{{0, 1, 0, 0}, Rational(1, 2)}, {{0, 0, 0, 1}, Rational(1, 2)}};
}
inline FormalSeries xi2()
{
    return {{{0, 1, 0, 0}, GaussianRational(0, Rational(-1, 2))}, {{0, 0, 0, 1}, GaussianRational(0, Rational(1, 2))}};
}

// q = q1 + i q2 = conj(z1) z2.
inline FormalSeries q()
{
    return FormalSeries::monomial({0, 1, 1, 0});
}
inline FormalSeries qbar()
{
    return FormalSeries::monomial({1, 0, 0, 1});
}
// q1 = x1 xi1 + x2 xi2 = (q + conj q)/2.
inline FormalSeries q1()
{
    return {{{0, 1, 1, 0}, Rational(1, 2)}, {{1, 0, 0, 1}, Rational(1, 2)}};
}
// q2 = x1 xi2 - x2 xi1 = (q - conj q)/(2i).
inline FormalSeries q2()
{
    return {{{0, 1, 1, 0}, GaussianRational(0, Rational(-1, 2))}, {{1, 0, 0, 1}, GaussianRational(0, Rational(1, 2))}};
}
// |z1|^2 + |z2|^2.
inline FormalSeries rho2()
{
    return {{{1, 0, 1, 0}, 1}, {{0, 1, 0, 1}, 1}};
}

} // namespace series

// Complex partial derivative d/dz_k (k = 0..3 over z1, z2, conj z1,
// conj z2). The truncation order drops by one.
inline FormalSeries complex_partial(const FormalSeries &f, std::size_t k)
{
    const unsigned t = f.truncation() == FormalSeries::no_truncation ? f.truncation() : f.truncation() - 1u;
    FormalSeries r(f.truncation() == 0 ? 0u : t);
    for (const auto &[m, c] : f) {
        const unsigned e = m[k];
        if (e == 0) {
            continue;
        }
        MultiIndex d = m;
        d.e[k] = static_cast<std::uint8_t>(e - 1);
        r.add_term(d, c * GaussianRational(long(e)));
    }
    return r;
}

// Real partial derivatives in the order (x1, x2, xi1, xi2):
//   d/dx1  = d/dz1 + d/dconj(z1),   d/dx2  = i (d/dz1 - d/dconj(z1)),
//   d/dxi1 = d/dz2 + d/dconj(z2),   d/dxi2 = i (d/dz2 - d/dconj(z2)).
inline FormalSeries real_partial(const FormalSeries &f, std::size_t var)
{
    const std::size_t hol = var < 2 ? 0 : 1;
    const std::size_t anti = hol + 2;
    const auto a = complex_partial(f, hol);
    const auto b = complex_partial(f, anti);
    if (var % 2 == 0) {
        return a + b;
    }
    return (a - b) * GaussianRational::i();
}

inline std::array<FormalSeries, 4> real_gradient(const FormalSeries &f)
{
    return {real_partial(f, 0), real_partial(f, 1), real_partial(f, 2), real_partial(f, 3)};
}

// Poisson bracket
//
//   {f, g} = sum_i df/dxi_i dg/dx_i - df/dx_i dg/dxi_i,
//
// truncated at degree n. NOTE: the xi-derivative comes first, which is
// the opposite of a common convention; with it {xi1, x1} = 1 and
// {q1, z^m} = weight1(m) z^m.
inline FormalSeries poisson_bracket(const FormalSeries &f, const FormalSeries &g, unsigned n)
{
    FormalSeries r(n);
    if (f.empty() || g.empty()) {
        return r;
    }
    const auto df = real_gradient(f);
    const auto dg = real_gradient(g);
    for (std::size_t i = 0; i < 2; ++i) {
        r += mul(df[i + 2], dg[i], n);
        r -= mul(df[i], dg[i + 2], n);
    }
    return r;
}

// Complex conjugate of the function represented by f.
inline FormalSeries conj(const FormalSeries &f)
{
    FormalSeries r(f.truncation());
    for (const auto &[m, c] : f) {
        r.add_term(m.swap(), c.conj());
    }
    return r;
}

// f - (f + conj f)/2; zero iff f is real-valued.
inline FormalSeries reality_check(const FormalSeries &f)
{
    return (f - conj(f)) / GaussianRational(2);
}

inline bool is_real_valued(const FormalSeries &f)
{
    return reality_check(f).empty();
}

// Floating-point image of a series, for repeated numeric evaluation.
class CompiledSeries
{
public:
    CompiledSeries() = default;
    explicit CompiledSeries(const FormalSeries &f)
    {
        m_terms.reserve(f.size());
        for (const auto &[m, c] : f) {
            m_terms.push_back({m.e, c.to_complex()});
            m_max_exp = std::max({m_max_exp, unsigned(m[0]), unsigned(m[1]), unsigned(m[2]), unsigned(m[3])});
        }
    }

    std::complex<double> operator()(const PhasePoint &p) const
    {
        if (m_terms.empty()) {
            return 0.0;
        }
        const std::array<std::complex<double>, 4> base{p.z1(), p.z2(), std::conj(p.z1()), std::conj(p.z2())};
        // powers[k][e] = base[k]^e
        std::array<std::vector<std::complex<double>>, 4> powers;
        for (std::size_t k = 0; k < 4; ++k) {
            powers[k].resize(m_max_exp + 1);
            powers[k][0] = 1.0;
            for (unsigned e = 1; e <= m_max_exp; ++e) {
                powers[k][e] = powers[k][e - 1] * base[k];
            }
        }
        std::complex<double> acc = 0.0;
        for (const auto &t : m_terms) {
            acc += t.coeff * powers[0][t.exps[0]] * powers[1][t.exps[1]] * powers[2][t.exps[2]] * powers[3][t.exps[3]];
        }
        return acc;
    }

    // Real part; the imaginary part vanishes up to rounding on
    // real-valued series.
    double real(const PhasePoint &p) const
    {
        return (*this)(p).real();
    }

private:
    struct Term {
        std::array<std::uint8_t, 4> exps;
        std::complex<double> coeff;
    };
    std::vector<Term> m_terms;
    unsigned m_max_exp = 0;
};

// Sum of coefficient times monomial value at p.
inline std::complex<double> evaluate(const FormalSeries &f, const PhasePoint &p)
{
    return CompiledSeries(f)(p);
}

} // namespace bnf

#endif
