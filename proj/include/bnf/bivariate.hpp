#ifndef BNF_BIVARIATE_HPP
#define BNF_BIVARIATE_HPP

#include <compare>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <bnf/errors.hpp>
#include <bnf/gaussian_rational.hpp>
#include <bnf/series.hpp>

namespace bnf
{

// Exponents (k, l) of t1^k t2^l, ordered by total degree then (k, l).
struct BiIndex {
    unsigned k = 0, l = 0;

    unsigned degree() const
    {
        return k + l;
    }
    friend bool operator==(const BiIndex &, const BiIndex &) = default;
    friend std::strong_ordering operator<=>(const BiIndex &a, const BiIndex &b)
    {
        if (auto c = a.degree() <=> b.degree(); c != 0) {
            return c;
        }
        if (auto c = a.k <=> b.k; c != 0) {
            return c;
        }
        return a.l <=> b.l;
    }
};

// Real series in (t1, t2), truncated at a total degree.
class BivariateSeries
{
public:
    using container = std::map<BiIndex, Rational>;

    BivariateSeries() = default;
    explicit BivariateSeries(unsigned truncation) : m_trunc(truncation) {}
    BivariateSeries(std::initializer_list<std::pair<BiIndex, Rational>> terms, unsigned truncation = 255)
        : m_trunc(truncation)
    {
        for (const auto &[k, c] : terms) {
            add_term(k, c);
        }
    }

    static BivariateSeries t1(unsigned truncation = 255)
    {
        return BivariateSeries({{{1, 0}, Rational(1)}}, truncation);
    }
    static BivariateSeries t2(unsigned truncation = 255)
    {
        return BivariateSeries({{{0, 1}, Rational(1)}}, truncation);
    }

    unsigned truncation() const
    {
        return m_trunc;
    }
    void set_truncation(unsigned t)
    {
        m_trunc = t;
        std::erase_if(m_terms, [t](const auto &kv) { return kv.first.degree() > t; });
    }
    const container &terms() const
    {
        return m_terms;
    }
    auto begin() const
    {
        return m_terms.begin();
    }
    auto end() const
    {
        return m_terms.end();
    }
    std::size_t size() const
    {
        return m_terms.size();
    }
    bool empty() const
    {
        return m_terms.empty();
    }

    Rational coeff(const BiIndex &k) const
    {
        const auto it = m_terms.find(k);
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    void add_term(const BiIndex &k, const Rational &c)
    {
        if (k.degree() > m_trunc || sgn(c) == 0) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) {
                m_terms.erase(it);
            }
        }
    }

    BivariateSeries &operator+=(const BivariateSeries &o)
    {
        for (const auto &[k, c] : o.m_terms) {
            add_term(k, c);
        }
        return *this;
    }
    BivariateSeries &operator-=(const BivariateSeries &o)
    {
        for (const auto &[k, c] : o.m_terms) {
            add_term(k, -c);
        }
        return *this;
    }
    friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries &b)
    {
        return a += b;
    }
    friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries &b)
    {
        return a -= b;
    }
    BivariateSeries &operator*=(const Rational &s)
    {
        if (sgn(s) == 0) {
            m_terms.clear();
        }
        for (auto &[k, c] : m_terms) {
            c *= s;
        }
        return *this;
    }
    friend BivariateSeries operator*(BivariateSeries a, const Rational &s)
    {
        return a *= s;
    }

    friend bool operator==(const BivariateSeries &a, const BivariateSeries &b)
    {
        return a.m_terms == b.m_terms;
    }

    friend std::ostream &operator<<(std::ostream &os, const BivariateSeries &g)
    {
        if (g.empty()) {
            return os << '0';
        }
        bool first = true;
        for (const auto &[k, c] : g.m_terms) {
            os << (first ? "" : " + ") << c << "*t1^" << k.k << "*t2^" << k.l;
            first = false;
        }
        return os;
    }

private:
    container m_terms;
    unsigned m_trunc = 255;
};

// g(q1, q2) as a formal series truncated at degree n. The result is
// real-valued and supported on resonant monomials.
inline FormalSeries compose_bivariate(const BivariateSeries &g, unsigned n)
{
    FormalSeries r(n);
    if (g.empty()) {
        return r;
    }
    unsigned max_k = 0, max_l = 0;
    for (const auto &[k, c] : g) {
        max_k = std::max(max_k, k.k);
        max_l = std::max(max_l, k.l);
    }
    std::vector<FormalSeries> p1{FormalSeries::constant(1, n)}, p2{FormalSeries::constant(1, n)};
    const auto q1 = series::q1(), q2 = series::q2();
    for (unsigned e = 1; e <= max_k; ++e) {
        p1.push_back(mul(p1.back(), q1, n));
    }
    for (unsigned e = 1; e <= max_l; ++e) {
        p2.push_back(mul(p2.back(), q2, n));
    }
    for (const auto &[k, c] : g) {
        if (2 * k.degree() > n) {
            continue;
        }
        r += mul(p1[k.k], p2[k.l], n) * GaussianRational(c);
    }
    return r;
}

// Rewrites a resonant series sum c_m q^l conj(q)^k (m = (k, l, l, k))
// as a real polynomial in t1 = q1, t2 = q2 by expanding
// q = t1 + i t2 and conj q = t1 - i t2.
inline BivariateSeries resonant_to_bivariate(const FormalSeries &f)
{
    const unsigned n = f.truncation();
    BivariateSeries g(n == FormalSeries::no_truncation ? 255u : n / 2);

    // Binomial rows up to the needed order.
    const unsigned max_deg = f.degree() / 2;
    std::vector<std::vector<Rational>> binom(max_deg + 1);
    for (unsigned a = 0; a <= max_deg; ++a) {
        binom[a].assign(a + 1, Rational(1));
        for (unsigned b = 1; b < a; ++b) {
            binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
        }
    }
    // i^j and (-i)^j.
    auto ipow = [](unsigned j, bool negate) {
        static const GaussianRational cycle[4] = {GaussianRational(1), GaussianRational::i(), GaussianRational(-1),
                                                  -GaussianRational::i()};
        const unsigned idx = negate ? (4 - j % 4) % 4 : j % 4;
        return cycle[idx];
    };

    std::map<BiIndex, GaussianRational> acc;
    for (const auto &[m, c] : f) {
        if (!m.resonant()) {
            std::ostringstream os;
            os << "non-resonant monomial " << m << " in a series expected to be a function of (q1, q2)";
            throw NonResonantTerm(os.str());
        }
        const unsigned lam = m.a2(); // power of q
        const unsigned mu = m.a1();  // power of conj q
        // (t1 + i t2)^lam (t1 - i t2)^mu
        for (unsigned j1 = 0; j1 <= lam; ++j1) {
            const auto c1 = GaussianRational(binom[lam][j1]) * ipow(j1, false);
            for (unsigned j2 = 0; j2 <= mu; ++j2) {
                const auto c2 = GaussianRational(binom[mu][j2]) * ipow(j2, true);
                const BiIndex key{lam + mu - j1 - j2, j1 + j2};
                acc[key] += c * c1 * c2;
            }
        }
    }
    for (const auto &[k, c] : acc) {
        if (!c.is_real()) {
            std::ostringstream os;
            os << "coefficient of t1^" << k.k << " t2^" << k.l << " is not real: " << c;
            throw NonRealCoefficient(os.str());
        }
        g.add_term(k, c.re);
    }
    return g;
}

} // namespace bnf

#endif
