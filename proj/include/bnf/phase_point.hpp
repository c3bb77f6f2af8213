#ifndef BNF_PHASE_POINT_HPP
#define BNF_PHASE_POINT_HPP

#include <array>
#include <cmath>
#include <complex>
#include <ostream>

namespace bnf
{

// Point of R^4 = T*R^2 with coordinates (x1, x2, xi1, xi2), identified
// with C^2 through z1 = x1 + i x2 and z2 = xi1 + i xi2.
struct PhasePoint {
    double x1 = 0, x2 = 0, xi1 = 0, xi2 = 0;

    static PhasePoint from_complex(std::complex<double> z1, std::complex<double> z2)
    {
        return {z1.real(), z1.imag(), z2.real(), z2.imag()};
    }

    std::complex<double> z1() const
    {
        return {x1, x2};
    }
    std::complex<double> z2() const
    {
        return {xi1, xi2};
    }

    // Coordinates in the order (x1, x2, xi1, xi2).
    std::array<double, 4> coords() const
    {
        return {x1, x2, xi1, xi2};
    }
    static PhasePoint from_coords(const std::array<double, 4> &c)
    {
        return {c[0], c[1], c[2], c[3]};
    }

    double norm2() const
    {
        return x1 * x1 + x2 * x2 + xi1 * xi1 + xi2 * xi2;
    }
    double norm() const
    {
        return std::sqrt(norm2());
    }
    bool finite() const
    {
        return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(xi1) && std::isfinite(xi2);
    }

    friend std::ostream &operator<<(std::ostream &os, const PhasePoint &p)
    {
        return os << '(' << p.x1 << ", " << p.x2 << ", " << p.xi1 << ", " << p.xi2 << ')';
    }
};

// Model quadratic integrals, evaluated numerically.
inline double q1_value(const PhasePoint &p)
{
    return p.x1 * p.xi1 + p.x2 * p.xi2;
}
inline double q2_value(const PhasePoint &p)
{
    return p.x1 * p.xi2 - p.x2 * p.xi1;
}

} // namespace bnf

#endif
