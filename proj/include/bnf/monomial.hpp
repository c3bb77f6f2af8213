#ifndef BNF_MONOMIAL_HPP
#define BNF_MONOMIAL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>

namespace bnf
{

// Basis tags. The complex basis is (z1, z2, conj z1, conj z2) with
// z1 = x1 + i x2 and z2 = xi1 + i xi2; the real basis follows the
// monomial order x1^i xi1^j x2^k xi2^l.
struct ComplexBasis {
};
struct RealBasis {
};

// Exponent 4-tuple of a monomial in the given basis. Ordered by total
// degree first, then lexicographically.
template <typename Basis>
struct Exponents {
    std::array<std::uint8_t, 4> e{};

    constexpr Exponents() = default;
    constexpr Exponents(unsigned a, unsigned b, unsigned c, unsigned d)
        : e{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c),
            static_cast<std::uint8_t>(d)}
    {
    }

    constexpr unsigned operator[](std::size_t k) const
    {
        return e[k];
    }
    constexpr unsigned degree() const
    {
        return unsigned(e[0]) + e[1] + e[2] + e[3];
    }

    // Product of monomials.
    friend constexpr Exponents operator+(const Exponents &a, const Exponents &b)
    {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
    }

    friend constexpr bool operator==(const Exponents &, const Exponents &) = default;
    friend constexpr std::strong_ordering operator<=>(const Exponents &a, const Exponents &b)
    {
        if (auto c = a.degree() <=> b.degree(); c != 0) {
            return c;
        }
        return a.e <=> b.e;
    }

    friend std::ostream &operator<<(std::ostream &os, const Exponents &m)
    {
        return os << '[' << m[0] << ',' << m[1] << ',' << m[2] << ',' << m[3] << ']';
    }
};

// Exponents (a1, a2, b1, b2) of z1^a1 z2^a2 conj(z1)^b1 conj(z2)^b2.
struct MultiIndex : Exponents<ComplexBasis> {
    using Exponents<ComplexBasis>::Exponents;
    constexpr MultiIndex(const Exponents<ComplexBasis> &x) : Exponents<ComplexBasis>(x) {}

    constexpr int a1() const
    {
        return e[0];
    }
    constexpr int a2() const
    {
        return e[1];
    }
    constexpr int b1() const
    {
        return e[2];
    }
    constexpr int b2() const
    {
        return e[3];
    }

    // Eigenvalue of {q1, .} on this monomial.
    constexpr int weight1() const
    {
        return a1() - a2() + b1() - b2();
    }
    // {q2, z^m} = i * weight2(m) * z^m.
    constexpr int weight2() const
    {
        return a1() + a2() - b1() - b2();
    }
    // Commutes with both q1 and q2, i.e. a power product of q and conj q.
    constexpr bool resonant() const
    {
        return a1() == b2() && a2() == b1();
    }
    // Index of the complex conjugate monomial.
    constexpr MultiIndex swap() const
    {
        return {e[2], e[3], e[0], e[1]};
    }
};

// Exponents (i, j, k, l) of x1^i xi1^j x2^k xi2^l.
using RealIndex = Exponents<RealBasis>;

} // namespace bnf

#endif
