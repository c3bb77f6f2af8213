#ifndef BNF_EXACT_FLOW_HPP
#define BNF_EXACT_FLOW_HPP

#include <complex>

#include <bnf/phase_point.hpp>

namespace bnf
{

enum class ModelFlow { Q1, Q2 };

// Hamiltonian flows of the model integrals:
//   Q1: (z1, z2) -> (e^t z1, e^{-t} z2),   Q2: (z1, z2) -> (e^{it} z1, e^{it} z2).
inline PhasePoint exact_flow(ModelFlow which, double t, const PhasePoint &z)
{
    if (which == ModelFlow::Q1) {
        const double a = std::exp(t), b = std::exp(-t);
        return {a * z.x1, a * z.x2, b * z.xi1, b * z.xi2};
    }
    const std::complex<double> rot = std::polar(1.0, t);
    return PhasePoint::from_complex(rot * z.z1(), rot * z.z2());
}

} // namespace bnf

#endif
