#ifndef BNF_BIRKHOFF_HPP
#define BNF_BIRKHOFF_HPP

#include <sstream>
#include <vector>

#include <bnf/bivariate.hpp>
#include <bnf/errors.hpp>
#include <bnf/series.hpp>

namespace bnf
{

// A pair (f1, f2) of real-valued series at a focus-focus critical point,
// to be normalized through degree `order`.
struct SystemSpec {
    FormalSeries f1;
    FormalSeries f2;
    unsigned order = 2;
};

// Leading 2x2 matrix: f1 = a q1 + b q2 + O(3), f2 = c q1 + d q2 + O(3).
struct LeadingMatrix {
    Rational a{1}, b{0}, c{0}, d{1};

    Rational det() const
    {
        return a * d - b * c;
    }
    friend bool operator==(const LeadingMatrix &, const LeadingMatrix &) = default;
};

// Per-degree bookkeeping of the normalization. Counts are numbers of
// nonzero coefficients.
struct DegreeLedger {
    unsigned degree = 0;
    std::size_t r1_terms = 0;
    std::size_t r2_terms = 0;
    std::size_t generator_terms = 0;
    std::size_t g1_terms = 0;
    std::size_t g2_terms = 0;
};

struct NormalFormResult {
    LeadingMatrix leading;
    // Generator, real-valued, lowest degree >= 3.
    FormalSeries A;
    // Normal forms of the leading-reduced pair: exp(ad_A) f_i = g_i(q1, q2)
    // through degree `order`.
    BivariateSeries g1;
    BivariateSeries g2;
    std::vector<DegreeLedger> ledger;
    // Nonzero coefficients of exp_ad(A, f_i, N) - g_i(q1, q2), both zero
    // on success.
    std::size_t residual1_terms = 0;
    std::size_t residual2_terms = 0;
    unsigned order = 0;
};

namespace detail
{

inline std::string describe(const MultiIndex &m)
{
    std::ostringstream os;
    os << m;
    return os.str();
}

} // namespace detail

// Reads off the quadratic parts in the basis (q1, q2).
inline LeadingMatrix extract_leading(const FormalSeries &f1, const FormalSeries &f2)
{
    for (const auto *f : {&f1, &f2}) {
        for (const auto &[m, c] : *f) {
            if (m.degree() >= 2) {
                break;
            }
            throw NonCritical("term of degree " + std::to_string(m.degree()) + " at monomial " + detail::describe(m)
                              + ": the origin is not a critical point");
        }
    }
    // In the complex basis q1 = (q + conj q)/2, q2 = (q - conj q)/(2i),
    // so a q1 + b q2 has coefficients (a - i b)/2 on q and (a + i b)/2
    // on conj q.
    const MultiIndex q_idx{0, 1, 1, 0}, qbar_idx{1, 0, 0, 1};
    auto read = [&](const FormalSeries &f, const char *name, Rational &a, Rational &b) {
        const auto quad = f.homogeneous(2);
        for (const auto &[m, c] : quad) {
            if (m != q_idx && m != qbar_idx) {
                throw DegenerateLeading(std::string("quadratic part of ") + name + " leaves span(q1, q2) at monomial "
                                        + detail::describe(m));
            }
        }
        const auto cq = quad.coeff(q_idx);
        const auto cqbar = quad.coeff(qbar_idx);
        if (cq.conj() != cqbar) {
            throw DegenerateLeading(std::string("quadratic part of ") + name + " is not real-valued");
        }
        a = cq.re + cqbar.re;
        b = cqbar.im - cq.im;
    };
    LeadingMatrix M;
    read(f1, "f1", M.a, M.b);
    read(f2, "f2", M.c, M.d);
    if (sgn(M.det()) == 0) {
        throw DegenerateLeading("leading matrix is singular");
    }
    return M;
}

// Left-composes F with M^{-1}, so that the quadratic parts become
// exactly (q1, q2).
inline SystemSpec reduce_leading(const SystemSpec &F, const LeadingMatrix &M)
{
    const Rational det = M.det();
    if (sgn(det) == 0) {
        throw DegenerateLeading("leading matrix is singular");
    }
    const Rational ia = M.d / det, ib = -M.b / det, ic = -M.c / det, id = M.a / det;
    SystemSpec r;
    r.order = F.order;
    r.f1 = F.f1 * GaussianRational(ia) + F.f2 * GaussianRational(ib);
    r.f2 = F.f1 * GaussianRational(ic) + F.f2 * GaussianRational(id);
    return r;
}

// sum_k ad_A^k(f)/k! truncated at degree n, with ad_A f = {A, f}. Each
// application of ad_A raises the lowest degree by at least one, so the
// sum is finite.
inline FormalSeries exp_ad(const FormalSeries &A, const FormalSeries &f, unsigned n)
{
    if (!A.empty() && A.low_degree() < 3) {
        throw GeneratorTooLow("generator has a term of degree " + std::to_string(A.low_degree()) + " (< 3)");
    }
    FormalSeries result = f.truncated(n);
    if (A.empty()) {
        return result;
    }
    FormalSeries term = result;
    for (long k = 1; !term.empty(); ++k) {
        term = poisson_bracket(A, term, n) / GaussianRational(k);
        result += term;
    }
    return result;
}

// Output of one degree of the homological equation.
struct HomologicalSolution {
    FormalSeries A;
    BivariateSeries g1;
    BivariateSeries g2;
};

// Solves, coefficient by coefficient in the complex basis,
//
//   r1 + {A_d, q1} = g1_d,   r2 + {A_d, q2} = g2_d,
//
// with g_i resonant. Since {z^m, q1} = -weight1(m) z^m and
// {z^m, q2} = -i weight2(m) z^m, this gives A_m = r1_m / weight1(m) when
// weight1(m) != 0, else A_m = r2_m / (i weight2(m)) when weight2(m) != 0,
// and A_m = 0 on doubly resonant indices.
inline HomologicalSolution homological_step(const FormalSeries &r1, const FormalSeries &r2, unsigned d)
{
    HomologicalSolution sol;
    sol.A = FormalSeries(d);
    FormalSeries g1(d), g2(d);

    auto check_support = [d](const FormalSeries &r) {
        for (const auto &[m, c] : r) {
            if (m.degree() != d) {
                throw std::invalid_argument("homological_step: input is not homogeneous of degree " + std::to_string(d));
            }
        }
    };
    check_support(r1);
    check_support(r2);

    auto visit = [&](const MultiIndex &m) {
        const auto c1 = r1.coeff(m);
        const auto c2 = r2.coeff(m);
        const int w1 = m.weight1();
        const int w2 = m.weight2();
        // Cross commuting relation {r1, q2} = {r2, q1}.
        if (c1 * GaussianRational(0, w2) != c2 * GaussianRational(w1)) {
            throw CocycleViolation("cross commuting relation fails at monomial " + detail::describe(m));
        }
        if (w1 != 0) {
            sol.A.add_term(m, c1 / GaussianRational(w1));
        } else if (w2 != 0) {
            sol.A.add_term(m, c2 / GaussianRational(0, w2));
        }
        if (w1 == 0) {
            g1.add_term(m, c1);
        }
        if (w2 == 0) {
            g2.add_term(m, c2);
        }
    };
    for (const auto &[m, c] : r1) {
        visit(m);
    }
    for (const auto &[m, c] : r2) {
        if (r1.coeff(m).is_zero()) {
            visit(m);
        }
    }
    sol.g1 = resonant_to_bivariate(g1);
    sol.g2 = resonant_to_bivariate(g2);
    return sol;
}

// {f1, f2} truncated at n; zero for a commuting pair.
inline FormalSeries commutation_residual(const FormalSeries &f1, const FormalSeries &f2, unsigned n)
{
    return poisson_bracket(f1, f2, n);
}

// Degree-by-degree normalization: returns a generator A and (g1, g2)
// with exp(ad_A) f_i = g_i(q1, q2) through degree F.order, where f_i are
// the leading-reduced inputs.
inline NormalFormResult birkhoff_normalize(const SystemSpec &F)
{
    const unsigned N = F.order;
    if (N < 2) {
        throw std::invalid_argument("normalization order must be >= 2");
    }
    NormalFormResult res;
    res.order = N;
    res.leading = extract_leading(F.f1, F.f2);
    for (const auto *f : {&F.f1, &F.f2}) {
        if (!is_real_valued(f->truncated(N))) {
            throw std::invalid_argument("birkhoff_normalize: inputs must be real-valued");
        }
    }
    const auto G = reduce_leading(F, res.leading);
    const auto f1 = G.f1.truncated(N);
    const auto f2 = G.f2.truncated(N);

    if (const auto c = commutation_residual(f1, f2, N); !c.empty()) {
        std::ostringstream os;
        os << "{f1, f2} has " << c.size() << " nonzero coefficient(s) through degree " << N << ", lowest at degree "
           << c.low_degree();
        throw NonCommuting(os.str());
    }

    res.A = FormalSeries(N);
    res.g1 = BivariateSeries::t1(N / 2);
    res.g2 = BivariateSeries::t2(N / 2);

    for (unsigned d = 3; d <= N; ++d) {
        const auto e1 = exp_ad(res.A, f1, d) - compose_bivariate(res.g1, d);
        const auto e2 = exp_ad(res.A, f2, d) - compose_bivariate(res.g2, d);
        // Degrees < d are already normalized.
        if (!e1.empty() && e1.low_degree() < d) {
            throw std::logic_error("normalization invariant broken below degree " + std::to_string(d));
        }
        if (!e2.empty() && e2.low_degree() < d) {
            throw std::logic_error("normalization invariant broken below degree " + std::to_string(d));
        }
        const auto step = homological_step(e1, e2, d);
        // step.A carries truncation d; keep A at N.
        res.A += step.A.truncated(N);
        res.g1 += step.g1;
        res.g2 += step.g2;
        res.ledger.push_back({d, e1.size(), e2.size(), step.A.size(), step.g1.size(), step.g2.size()});
    }

    const auto final1 = exp_ad(res.A, f1, N) - compose_bivariate(res.g1, N);
    const auto final2 = exp_ad(res.A, f2, N) - compose_bivariate(res.g2, N);
    res.residual1_terms = final1.size();
    res.residual2_terms = final2.size();
    if (!is_real_valued(res.A)) {
        throw std::logic_error("generator is not real-valued");
    }
    return res;
}

// Normal forms of the original (unreduced) pair: (a g1 + b g2, c g1 + d g2).
inline std::pair<BivariateSeries, BivariateSeries> original_normal_forms(const NormalFormResult &r)
{
    const auto &M = r.leading;
    return {r.g1 * M.a + r.g2 * M.b, r.g1 * M.c + r.g2 * M.d};
}

} // namespace bnf

#endif
