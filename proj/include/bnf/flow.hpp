#ifndef BNF_FLOW_HPP
#define BNF_FLOW_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <bnf/birkhoff.hpp>
#include <bnf/errors.hpp>
#include <bnf/exact_flow.hpp>
#include <bnf/phase_point.hpp>
#include <bnf/series.hpp>

namespace bnf
{

// Hamiltonian vector field of a polynomial H, evaluated numerically:
// dx_i/dt = dH/dxi_i, dxi_i/dt = -dH/dx_i.
class HamiltonianField
{
public:
    explicit HamiltonianField(const FormalSeries &H)
    {
        for (std::size_t v = 0; v < 4; ++v) {
            m_grad[v] = CompiledSeries(real_partial(H, v));
        }
    }

    std::array<double, 4> operator()(const PhasePoint &p) const
    {
        return {m_grad[2].real(p), m_grad[3].real(p), -m_grad[0].real(p), -m_grad[1].real(p)};
    }

private:
    // Gradient in the order (x1, x2, xi1, xi2).
    std::array<CompiledSeries, 4> m_grad;
};

// Classical fourth-order Runge-Kutta integration of Hamilton's equations
// for H over time t. Throws StepOverflow when the trajectory leaves the
// ball of radius `bound`.
inline PhasePoint numeric_flow(const FormalSeries &H, double t, const PhasePoint &z, unsigned steps,
                               double bound = 1e6)
{
    if (steps == 0) {
        throw std::invalid_argument("numeric_flow: steps must be >= 1");
    }
    const HamiltonianField X(H);
    const double dt = t / steps;
    auto y = z.coords();
    auto axpy = [](const std::array<double, 4> &a, double s, const std::array<double, 4> &b) {
        return std::array<double, 4>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
    };
    for (unsigned k = 0; k < steps; ++k) {
        const auto k1 = X(PhasePoint::from_coords(y));
        const auto k2 = X(PhasePoint::from_coords(axpy(y, dt / 2, k1)));
        const auto k3 = X(PhasePoint::from_coords(axpy(y, dt / 2, k2)));
        const auto k4 = X(PhasePoint::from_coords(axpy(y, dt, k3)));
        for (std::size_t i = 0; i < 4; ++i) {
            y[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        }
        const auto p = PhasePoint::from_coords(y);
        if (!p.finite() || p.norm() > bound) {
            std::ostringstream os;
            os << "trajectory left the ball of radius " << bound << " at step " << k + 1;
            throw StepOverflow(os.str());
        }
    }
    return PhasePoint::from_coords(y);
}

// Uniform random point on the sphere |z| = r in R^4.
template <typename Rng>
PhasePoint random_sphere_point(Rng &rng, double r)
{
    std::normal_distribution<double> nd;
    PhasePoint p{nd(rng), nd(rng), nd(rng), nd(rng)};
    const double n = p.norm();
    return {r * p.x1 / n, r * p.x2 / n, r * p.xi1 / n, r * p.xi2 / n};
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y)
{
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct TaylorFlowOptions {
    unsigned samples = 16;
    unsigned steps = 200;
    std::uint64_t seed = 1;
};

struct TaylorFlowReport {
    unsigned order = 0;
    std::vector<double> radii;
    // Max contact error per radius.
    std::vector<double> errors;
    // Fitted log-log slope over radii whose error is above the noise
    // floor; NaN when fewer than two such radii exist.
    double slope = std::numeric_limits<double>::quiet_NaN();
    // All errors are at the noise floor (exp_ad exact to rounding).
    bool degenerate = false;
    bool pass = false;
};

// Contact order of the time-1 flow of A with exp(ad_A): draws `samples`
// unit directions u once and, for each radius r, records
//   e(r) = max_u |f(phi_A^1(r u)) - exp_ad(A, f, N)(r u)|,
// which is O(r^{N+1}). Passes when the fitted slope is >= N + 1 - 0.3, or
// when every error is at the noise floor 1e-13 r^2.
inline TaylorFlowReport taylor_flow_check(const FormalSeries &A, const FormalSeries &f, unsigned N,
                                          const std::vector<double> &radii, const TaylorFlowOptions &opt = {})
{
    TaylorFlowReport rep;
    rep.order = N;
    rep.radii = radii;
    const CompiledSeries f_num(f);
    const CompiledSeries lie(exp_ad(A, f, N));
    std::mt19937_64 rng(opt.seed);
    // Same directions at every radius, so e(r) varies only through r.
    std::vector<PhasePoint> dirs(opt.samples);
    for (auto &u : dirs) {
        u = random_sphere_point(rng, 1.0);
    }
    std::vector<double> fit_r, fit_e;
    for (const double r : radii) {
        double worst = 0;
        for (const auto &u : dirs) {
            const PhasePoint z{r * u.x1, r * u.x2, r * u.xi1, r * u.xi2};
            const auto moved = A.empty() ? z : numeric_flow(A, 1.0, z, opt.steps);
            worst = std::max(worst, std::abs(f_num.real(moved) - lie.real(z)));
        }
        rep.errors.push_back(worst);
        if (worst > 1e-13 * r * r) {
            fit_r.push_back(r);
            fit_e.push_back(worst);
        }
    }
    if (fit_r.size() >= 2) {
        rep.slope = loglog_slope(fit_r, fit_e);
        rep.pass = rep.slope >= N + 1 - 0.3;
    } else {
        rep.degenerate = fit_r.empty();
        rep.pass = fit_r.empty();
    }
    return rep;
}

// xi1 dH/dxi1 + xi2 dH/dxi2 = alpha_0(X_H); equals n H when H is
// homogeneous of degree n in (xi1, xi2).
inline FormalSeries liouville_pairing(const FormalSeries &H)
{
    const unsigned n = H.truncation();
    return mul(series::xi1(), real_partial(H, 2), n) + mul(series::xi2(), real_partial(H, 3), n);
}

// K(z) = (1/2pi) int_{gamma_z} alpha_0 over the loop
// gamma_z(t) = (e^{2 pi i t} z1, e^{2 pi i t} z2), by the periodic
// trapezoid rule. The loop tangent is 2 pi X_{q2}.
inline double action_integral(const PhasePoint &z, unsigned nodes = 256)
{
    if (z.norm2() == 0) {
        return 0.0;
    }
    double acc = 0;
    for (unsigned k = 0; k < nodes; ++k) {
        const auto p = exact_flow(ModelFlow::Q2, 2 * std::numbers::pi * k / nodes, z);
        // X_{q2} = (-x2, x1, -xi2, xi1); alpha_0 = xi1 dx1 + xi2 dx2.
        const std::array<double, 4> tangent{-p.x2, p.x1, -p.xi2, p.xi1};
        acc += p.xi1 * tangent[0] + p.xi2 * tangent[1];
    }
    return acc / nodes;
}

} // namespace bnf

#endif
