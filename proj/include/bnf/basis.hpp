#ifndef BNF_BASIS_HPP
#define BNF_BASIS_HPP

#include <array>
#include <vector>

#include <bnf/polynomial.hpp>
#include <bnf/series.hpp>

namespace bnf
{

// Polynomial in the real basis x1^i xi1^j x2^k xi2^l.
using RealPolynomial = Polynomial4<RealIndex>;

namespace detail
{

template <typename Key>
std::vector<Polynomial4<Key>> powers_of(const Polynomial4<Key> &p, unsigned max_exp, unsigned n)
{
    std::vector<Polynomial4<Key>> pw;
    pw.reserve(max_exp + 1);
    pw.push_back(Polynomial4<Key>::constant(1, n));
    for (unsigned e = 1; e <= max_exp; ++e) {
        pw.push_back(mul(pw.back(), p, n));
    }
    return pw;
}

// Substitutes images[v] for the v-th variable of every term of p.
template <typename To, typename From>
Polynomial4<To> substitute(const Polynomial4<From> &p, const std::array<Polynomial4<To>, 4> &images)
{
    const unsigned n = p.truncation();
    Polynomial4<To> r(n);
    if (p.empty()) {
        return r;
    }
    std::array<unsigned, 4> max_exp{};
    for (const auto &[k, c] : p) {
        for (std::size_t v = 0; v < 4; ++v) {
            max_exp[v] = std::max(max_exp[v], k[v]);
        }
    }
    std::array<std::vector<Polynomial4<To>>, 4> pw;
    for (std::size_t v = 0; v < 4; ++v) {
        pw[v] = powers_of(images[v], max_exp[v], n);
    }
    for (const auto &[k, c] : p) {
        // All images are homogeneous of degree 1, so the product of
        // powers is exact at truncation n.
        auto t = mul(mul(pw[0][k[0]], pw[1][k[1]], n), mul(pw[2][k[2]], pw[3][k[3]], n), n);
        t *= c;
        r += t;
    }
    return r;
}

} // namespace detail

// x1 = (z1 + conj z1)/2, x2 = (z1 - conj z1)/(2i), xi1 = (z2 + conj z2)/2,
// xi2 = (z2 - conj z2)/(2i).
inline FormalSeries to_complex_basis(const RealPolynomial &p)
{
    // Real variable order is (x1, xi1, x2, xi2).
    return detail::substitute<MultiIndex>(p, {series::x1(), series::xi1(), series::x2(), series::xi2()});
}

// Inverse of to_complex_basis: z1 = x1 + i x2, z2 = xi1 + i xi2.
inline RealPolynomial to_real_basis(const FormalSeries &f)
{
    const auto i = GaussianRational::i();
    const RealPolynomial x1 = RealPolynomial::monomial({1, 0, 0, 0});
    const RealPolynomial xi1 = RealPolynomial::monomial({0, 1, 0, 0});
    const RealPolynomial x2 = RealPolynomial::monomial({0, 0, 1, 0});
    const RealPolynomial xi2 = RealPolynomial::monomial({0, 0, 0, 1});
    // Complex variable order is (z1, z2, conj z1, conj z2).
    return detail::substitute<RealIndex>(f, {x1 + x2 * i, xi1 + xi2 * i, x1 - x2 * i, xi1 - xi2 * i});
}

// Partial derivative in the real basis; var indexes (x1, xi1, x2, xi2).
inline RealPolynomial partial(const RealPolynomial &p, std::size_t var)
{
    RealPolynomial r(p.truncation() == RealPolynomial::no_truncation || p.truncation() == 0 ? p.truncation()
                                                                                          : p.truncation() - 1);
    for (const auto &[k, c] : p) {
        if (k[var] == 0) {
            continue;
        }
        RealIndex d = k;
        d.e[var] = static_cast<std::uint8_t>(k[var] - 1);
        r.add_term(d, c * GaussianRational(long(k[var])));
    }
    return r;
}

// Canonical bracket in the real basis, sum_i d_xi_i f d_x_i g - d_x_i f d_xi_i g.
inline RealPolynomial poisson_bracket(const RealPolynomial &f, const RealPolynomial &g, unsigned n)
{
    RealPolynomial r(n);
    for (std::size_t pair = 0; pair < 2; ++pair) {
        const std::size_t x = 2 * pair, xi = 2 * pair + 1;
        r += mul(partial(f, xi), partial(g, x), n);
        r -= mul(partial(f, x), partial(g, xi), n);
    }
    return r;
}

} // namespace bnf

#endif
