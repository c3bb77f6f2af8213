#ifndef BNF_POLYNOMIAL_HPP
#define BNF_POLYNOMIAL_HPP

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <map>
#include <ostream>
#include <utility>

#include <bnf/gaussian_rational.hpp>
#include <bnf/monomial.hpp>

namespace bnf
{

// Sparse truncated polynomial in four variables with exact Gaussian
// rational coefficients.
//
// Invariants: no stored coefficient is zero, and every stored key has
// degree <= truncation(). Iteration order is (degree, lexicographic),
// which is the order used for serialization.
template <typename Key>
class Polynomial4
{
public:
    using key_type = Key;
    using container = std::map<Key, GaussianRational>;
    using const_iterator = typename container::const_iterator;

    static constexpr unsigned no_truncation = std::numeric_limits<std::uint8_t>::max();

    Polynomial4() = default;
    explicit Polynomial4(unsigned truncation) : m_trunc(truncation) {}
    Polynomial4(std::initializer_list<std::pair<Key, GaussianRational>> terms, unsigned truncation = no_truncation)
        : m_trunc(truncation)
    {
        for (const auto &[k, c] : terms) {
            add_term(k, c);
        }
    }

    // Single monomial.
    static Polynomial4 monomial(const Key &k, GaussianRational c = GaussianRational(1),
                                unsigned truncation = no_truncation)
    {
        Polynomial4 p(truncation);
        p.add_term(k, std::move(c));
        return p;
    }
    static Polynomial4 constant(GaussianRational c, unsigned truncation = no_truncation)
    {
        return monomial(Key{}, std::move(c), truncation);
    }

    unsigned truncation() const
    {
        return m_trunc;
    }
    std::size_t size() const
    {
        return m_terms.size();
    }
    bool empty() const
    {
        return m_terms.empty();
    }
    const_iterator begin() const
    {
        return m_terms.begin();
    }
    const_iterator end() const
    {
        return m_terms.end();
    }
    const container &terms() const
    {
        return m_terms;
    }

    GaussianRational coeff(const Key &k) const
    {
        const auto it = m_terms.find(k);
        return it == m_terms.end() ? GaussianRational{} : it->second;
    }

    // Adds c * monomial(k). Terms above the truncation are dropped.
    void add_term(const Key &k, const GaussianRational &c)
    {
        if (k.degree() > m_trunc || c.is_zero()) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                m_terms.erase(it);
            }
        }
    }

    // Lowest / highest degree present; 0 for the zero polynomial.
    unsigned low_degree() const
    {
        return m_terms.empty() ? 0u : m_terms.begin()->first.degree();
    }
    unsigned degree() const
    {
        return m_terms.empty() ? 0u : m_terms.rbegin()->first.degree();
    }

    // Homogeneous component of degree d.
    Polynomial4 homogeneous(unsigned d) const
    {
        Polynomial4 r(m_trunc);
        for (const auto &[k, c] : m_terms) {
            if (k.degree() == d) {
                r.m_terms.emplace_hint(r.m_terms.end(), k, c);
            }
        }
        return r;
    }

    // Terms of degree <= n; the truncation order becomes n.
    Polynomial4 truncated(unsigned n) const
    {
        Polynomial4 r(n);
        for (const auto &[k, c] : m_terms) {
            if (k.degree() <= n) {
                r.m_terms.emplace_hint(r.m_terms.end(), k, c);
            }
        }
        return r;
    }

    // Drops terms of degree < n.
    Polynomial4 from_degree(unsigned n) const
    {
        Polynomial4 r(m_trunc);
        for (const auto &[k, c] : m_terms) {
            if (k.degree() >= n) {
                r.m_terms.emplace_hint(r.m_terms.end(), k, c);
            }
        }
        return r;
    }

    Polynomial4 &operator+=(const Polynomial4 &o)
    {
        m_trunc = std::min(m_trunc, o.m_trunc);
        drop_above_truncation();
        for (const auto &[k, c] : o.m_terms) {
            add_term(k, c);
        }
        return *this;
    }
    Polynomial4 &operator-=(const Polynomial4 &o)
    {
        m_trunc = std::min(m_trunc, o.m_trunc);
        drop_above_truncation();
        for (const auto &[k, c] : o.m_terms) {
            add_term(k, -c);
        }
        return *this;
    }
    Polynomial4 &operator*=(const GaussianRational &s)
    {
        if (s.is_zero()) {
            m_terms.clear();
            return *this;
        }
        for (auto &[k, c] : m_terms) {
            c *= s;
        }
        return *this;
    }
    Polynomial4 &operator/=(const GaussianRational &s)
    {
        for (auto &[k, c] : m_terms) {
            c /= s;
        }
        return *this;
    }

    friend Polynomial4 operator+(Polynomial4 a, const Polynomial4 &b)
    {
        return a += b;
    }
    friend Polynomial4 operator-(Polynomial4 a, const Polynomial4 &b)
    {
        return a -= b;
    }
    friend Polynomial4 operator-(Polynomial4 a)
    {
        return a *= GaussianRational(-1);
    }
    friend Polynomial4 operator*(Polynomial4 a, const GaussianRational &s)
    {
        return a *= s;
    }
    friend Polynomial4 operator*(const GaussianRational &s, Polynomial4 a)
    {
        return a *= s;
    }
    friend Polynomial4 operator/(Polynomial4 a, const GaussianRational &s)
    {
        return a /= s;
    }

    // Coefficientwise equality; truncation orders are not compared.
    friend bool operator==(const Polynomial4 &a, const Polynomial4 &b)
    {
        return a.m_terms == b.m_terms;
    }

    friend std::ostream &operator<<(std::ostream &os, const Polynomial4 &p)
    {
        if (p.empty()) {
            return os << '0';
        }
        bool first = true;
        for (const auto &[k, c] : p.m_terms) {
            os << (first ? "" : " + ") << c << '*' << k;
            first = false;
        }
        return os;
    }

private:
    void drop_above_truncation()
    {
        while (!m_terms.empty() && m_terms.rbegin()->first.degree() > m_trunc) {
            m_terms.erase(std::prev(m_terms.end()));
        }
    }

    container m_terms;
    unsigned m_trunc = no_truncation;
};

// Product with every term of degree > n discarded; the result has
// truncation order n.
template <typename Key>
Polynomial4<Key> mul(const Polynomial4<Key> &f, const Polynomial4<Key> &g, unsigned n)
{
    Polynomial4<Key> r(n);
    if (f.empty() || g.empty()) {
        return r;
    }
    const unsigned g_low = g.low_degree();
    for (const auto &[kf, cf] : f) {
        const unsigned df = kf.degree();
        if (df + g_low > n) {
            // f is sorted by degree.
            break;
        }
        for (const auto &[kg, cg] : g) {
            if (df + kg.degree() > n) {
                break;
            }
            r.add_term(kf + kg, cf * cg);
        }
    }
    return r;
}

// Untruncated product of polynomials.
template <typename Key>
Polynomial4<Key> operator*(const Polynomial4<Key> &f, const Polynomial4<Key> &g)
{
    return mul(f, g, std::min(f.truncation(), g.truncation()));
}

} // namespace bnf

#endif
