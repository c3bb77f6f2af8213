#ifndef BNF_COHOMOLOGY_HPP
#define BNF_COHOMOLOGY_HPP

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include <bnf/errors.hpp>
#include <bnf/exact_flow.hpp>
#include <bnf/phase_point.hpp>
#include <bnf/series.hpp>

namespace bnf
{

// Real function on R^4, optionally backed by the polynomial it
// evaluates. Evaluators must be safe to call concurrently.
class ScalarField
{
public:
    using evaluator = std::function<double(const PhasePoint &)>;

    ScalarField() : m_eval([](const PhasePoint &) { return 0.0; }) {}
    explicit ScalarField(evaluator e) : m_eval(std::move(e)) {}

    static ScalarField from_series(const FormalSeries &f)
    {
        ScalarField s([c = CompiledSeries(f)](const PhasePoint &p) { return c.real(p); });
        s.m_series = f;
        return s;
    }

    double operator()(const PhasePoint &p) const
    {
        return m_eval(p);
    }
    const std::optional<FormalSeries> &series() const
    {
        return m_series;
    }

private:
    evaluator m_eval;
    std::optional<FormalSeries> m_series;
};

// Components in the basis (d/dx1, d/dx2, d/dxi1, d/dxi2).
struct VectorField4 {
    std::array<ScalarField, 4> components;

    std::array<double, 4> operator()(const PhasePoint &p) const
    {
        return {components[0](p), components[1](p), components[2](p), components[3](p)};
    }
};

struct QuadratureConfig {
    // Periodic trapezoid nodes for S^1 integrals.
    unsigned nodes = 64;
    double fd_step = 1e-4;
    double tolerance = 1e-5;

    void validate() const
    {
        if (nodes < 8) {
            throw std::invalid_argument("QuadratureConfig: nodes must be >= 8");
        }
        if (!(fd_step > 0)) {
            throw std::invalid_argument("QuadratureConfig: fd_step must be > 0");
        }
    }
};

// dq1 = xi1 dx1 + xi2 dx2 + x1 dxi1 + x2 dxi2 and
// dq2 = xi2 dx1 - xi1 dx2 - x2 dxi1 + x1 dxi2 applied to v at p.
inline std::pair<double, double> contract_dq(const PhasePoint &p, const std::array<double, 4> &v)
{
    return {p.xi1 * v[0] + p.xi2 * v[1] + p.x1 * v[2] + p.x2 * v[3],
            p.xi2 * v[0] - p.xi1 * v[1] - p.x2 * v[2] + p.x1 * v[3]};
}

// Right inverse of U -> (dq1(Y), dq2(Y)):
//
//              1      [ xi1   xi2 ]
//   Psi(U) = ----- *  [ xi2  -xi1 ] [u1]
//            rho^2    [ x1   -x2  ] [u2]
//                     [ x2    x1  ]
//
// with rho^2 = x1^2 + x2^2 + xi1^2 + xi2^2. Undefined at the origin.
inline VectorField4 psi_right_inverse(const ScalarField &u1, const ScalarField &u2)
{
    auto component = [u1, u2](std::size_t row) {
        return ScalarField([u1, u2, row](const PhasePoint &p) {
            const double r2 = p.norm2();
            if (r2 == 0) {
                throw EvalAtOrigin("Psi(U) evaluated at the origin");
            }
            const double a = u1(p), b = u2(p);
            switch (row) {
            case 0:
                return (p.xi1 * a + p.xi2 * b) / r2;
            case 1:
                return (p.xi2 * a - p.xi1 * b) / r2;
            case 2:
                return (p.x1 * a - p.x2 * b) / r2;
            default:
                return (p.x2 * a + p.x1 * b) / r2;
            }
        });
    };
    return {{component(0), component(1), component(2), component(3)}};
}

// Exact counterpart on polynomials: the numerator M * (u1, u2) of
// Psi(U), i.e. Psi(U) = psi_numerator(u1, u2) / rho^2.
inline std::array<FormalSeries, 4> psi_numerator(const FormalSeries &u1, const FormalSeries &u2)
{
    using namespace series;
    const auto n = std::min(u1.truncation(), u2.truncation());
    auto m = [n](const FormalSeries &a, const FormalSeries &b) { return mul(a, b, n); };
    return {m(xi1(), u1) + m(xi2(), u2), m(xi2(), u1) - m(xi1(), u2), m(x1(), u1) - m(x2(), u2),
            m(x2(), u1) + m(x1(), u2)};
}

// (dq1(Y), dq2(Y)) for a polynomial vector field Y.
inline std::pair<FormalSeries, FormalSeries> contract_dq(const std::array<FormalSeries, 4> &Y)
{
    using namespace series;
    unsigned n = FormalSeries::no_truncation;
    for (const auto &c : Y) {
        n = std::min(n, c.truncation());
    }
    auto m = [n](const FormalSeries &a, const FormalSeries &b) { return mul(a, b, n); };
    return {m(xi1(), Y[0]) + m(xi2(), Y[1]) + m(x1(), Y[2]) + m(x2(), Y[3]),
            m(xi2(), Y[0]) - m(xi1(), Y[1]) - m(x2(), Y[2]) + m(x1(), Y[3])};
}

namespace detail
{

// Points phi_{q2}^{s_k}(z), s_k = 2 pi k / n.
inline std::vector<PhasePoint> s1_orbit(const PhasePoint &z, unsigned n)
{
    std::vector<PhasePoint> pts(n);
    for (unsigned k = 0; k < n; ++k) {
        pts[k] = exact_flow(ModelFlow::Q2, 2 * std::numbers::pi * k / n, z);
    }
    return pts;
}

// Weights W_k with sum_k W_k p(s_k) = int_0^{2pi} s p(s) ds exactly for
// trigonometric polynomials p of degree < n/2.
inline std::vector<double> s_moment_weights(unsigned n)
{
    std::vector<double> w(n);
    const double pi = std::numbers::pi;
    const unsigned jmax = (n - 1) / 2;
    for (unsigned k = 0; k < n; ++k) {
        const double s = 2 * pi * k / n;
        double acc = 2 * pi * pi;
        for (unsigned j = 1; j <= jmax; ++j) {
            acc -= 4 * pi / j * std::sin(j * s);
        }
        w[k] = acc / n;
    }
    return w;
}

} // namespace detail

// z -> (1/2pi) int_0^{2pi} r(phi_{q2}^s z) ds by the periodic trapezoid
// rule on cfg.nodes nodes.
inline ScalarField s1_average(const ScalarField &r, const QuadratureConfig &cfg = {})
{
    cfg.validate();
    return ScalarField([r, n = cfg.nodes](const PhasePoint &z) {
        double acc = 0;
        for (const auto &p : detail::s1_orbit(z, n)) {
            acc += r(p);
        }
        return acc / n;
    });
}

// Section of a fiber-constant h along q: (c1, c2) -> h at
// (x1, x2, xi1, xi2) = (c1, -c2, 1, 0), a point where q = (c1, c2).
inline std::function<double(double, double)> phi2_extract(const ScalarField &h)
{
    return [h](double c1, double c2) { return h(PhasePoint{c1, -c2, 1.0, 0.0}); };
}

// f2(z) = -(1/2pi) int_0^{2pi} s (r2 - <r2>)(phi_{q2}^s z) ds, where <r2>
// is the S^1-average. Then {f2, q2} = r2 - <r2>.
inline ScalarField f2_from_average(const ScalarField &r2, const QuadratureConfig &cfg = {})
{
    cfg.validate();
    return ScalarField([r2, n = cfg.nodes, w = detail::s_moment_weights(cfg.nodes)](const PhasePoint &z) {
        const double pi = std::numbers::pi;
        double moment = 0, mean = 0;
        const auto pts = detail::s1_orbit(z, n);
        for (unsigned k = 0; k < n; ++k) {
            const double v = r2(pts[k]);
            moment += w[k] * v;
            mean += v;
        }
        mean /= n;
        // The average is flow-invariant and int_0^{2pi} s ds = 2 pi^2.
        return -(moment - 2 * pi * pi * mean) / (2 * pi);
    });
}

// T = (ln|z2|^2 - ln|z1|^2)/4, with {T, q1} = 1 and {T, q2} = 0. T
// decreases at unit rate along the q1-flow, so phi_{q1}^{T}(z) lies on
// |z1| = |z2|.
inline double transport_time(const PhasePoint &z)
{
    const double n1 = std::norm(z.z1()), n2 = std::norm(z.z2());
    if (n1 == 0 || n2 == 0) {
        throw OnSingularAxis("transport time undefined on the axes z1 = 0 or z2 = 0");
    }
    return 0.25 * (std::log(n2) - std::log(n1));
}

// Central-difference gradient of f in the order (x1, x2, xi1, xi2).
inline std::array<double, 4> gradient_fd(const ScalarField &f, const PhasePoint &z, double h)
{
    std::array<double, 4> g{};
    const auto c = z.coords();
    for (std::size_t k = 0; k < 4; ++k) {
        auto plus = c, minus = c;
        plus[k] += h;
        minus[k] -= h;
        g[k] = (f(PhasePoint::from_coords(plus)) - f(PhasePoint::from_coords(minus))) / (2 * h);
    }
    return g;
}

// Central-difference approximation of the canonical bracket
// {f, g} = sum_i f_{xi_i} g_{x_i} - f_{x_i} g_{xi_i}; O(h^2) accurate.
inline double bracket_fd(const ScalarField &f, const ScalarField &g, const PhasePoint &z, double h)
{
    if (!(h > 0)) {
        throw std::invalid_argument("bracket_fd: step must be > 0");
    }
    const auto df = gradient_fd(f, z, h);
    const auto dg = gradient_fd(g, z, h);
    return df[2] * dg[0] + df[3] * dg[1] - df[0] * dg[2] - df[1] * dg[3];
}

inline const ScalarField &q1_field()
{
    static const ScalarField f([](const PhasePoint &p) { return q1_value(p); });
    return f;
}
inline const ScalarField &q2_field()
{
    static const ScalarField f([](const PhasePoint &p) { return q2_value(p); });
    return f;
}

struct DivisionSolution {
    // Solves {f, q1} = r1 and {f, q2} = r2 - phi2(q1, q2) off the axes.
    ScalarField f;
    std::function<double(double, double)> phi2;
    // Worst fd-bracket residuals over the checkpoints.
    double worst_q1_residual = 0;
    double worst_q2_residual = 0;
    PhasePoint worst_point;
};

namespace detail
{

// int_0^T g(phi_{q1}^s z) ds by 30-point Gauss-Legendre.
inline double transport_integral(const ScalarField &g, const PhasePoint &z, double T)
{
    if (T == 0) {
        return 0;
    }
    auto integrand = [&](double s) { return g(exact_flow(ModelFlow::Q1, s, z)); };
    using quad = boost::math::quadrature::gauss<double, 30>;
    return T > 0 ? quad::integrate(integrand, 0.0, T) : -quad::integrate(integrand, T, 0.0);
}

} // namespace detail

// Constructive solution of the division problem
//
//   {f, q1} = r1,   {f, q2} = r2 - phi2(q1, q2)
//
// for inputs satisfying {r1, q2} = {r2, q1}:
//   - phi2 is the S^1-average of r2, read off through phi2_extract;
//   - f2 = f2_from_average(r2) solves the q2 equation, and then
//     {f2, q1} = r1 - <r1>;
//   - the remainder <r1> is q2-invariant and is transported along the
//     q1-flow up to the hypersurface |z1| = |z2|.
// f is defined off the axes z1 = 0 and z2 = 0. Both the cross commuting
// condition and the result are checked by finite differences at the
// checkpoints.
inline DivisionSolution solve_division(const ScalarField &r1, const ScalarField &r2, const QuadratureConfig &cfg,
                                       std::span<const PhasePoint> checkpoints)
{
    cfg.validate();
    const double h = cfg.fd_step;
    for (const auto &p : checkpoints) {
        const double lhs = bracket_fd(r1, q2_field(), p, h);
        const double rhs = bracket_fd(r2, q1_field(), p, h);
        if (std::abs(lhs - rhs) > cfg.tolerance) {
            std::ostringstream os;
            os << "{r1, q2} - {r2, q1} = " << lhs - rhs << " at " << p;
            throw CrossCommutingViolation(os.str());
        }
    }

    DivisionSolution sol;
    const auto h2 = s1_average(r2, cfg);
    sol.phi2 = phi2_extract(h2);
    const auto f2 = f2_from_average(r2, cfg);
    const auto r1_avg = s1_average(r1, cfg);
    sol.f = ScalarField([f2, r1_avg](const PhasePoint &z) {
        return f2(z) + detail::transport_integral(r1_avg, z, transport_time(z));
    });

    for (const auto &p : checkpoints) {
        const double e1 = std::abs(bracket_fd(sol.f, q1_field(), p, h) - r1(p));
        const double e2 = std::abs(bracket_fd(sol.f, q2_field(), p, h) - (r2(p) - sol.phi2(q1_value(p), q2_value(p))));
        if (std::max(e1, e2) > std::max(sol.worst_q1_residual, sol.worst_q2_residual)) {
            sol.worst_point = p;
        }
        sol.worst_q1_residual = std::max(sol.worst_q1_residual, e1);
        sol.worst_q2_residual = std::max(sol.worst_q2_residual, e2);
    }
    if (std::max(sol.worst_q1_residual, sol.worst_q2_residual) > cfg.tolerance) {
        std::ostringstream os;
        os << "division residuals ({f,q1}: " << sol.worst_q1_residual << ", {f,q2}: " << sol.worst_q2_residual
           << ") exceed " << cfg.tolerance << "; worst point " << sol.worst_point;
        throw VerificationFailure(os.str());
    }
    return sol;
}

} // namespace bnf

#endif
