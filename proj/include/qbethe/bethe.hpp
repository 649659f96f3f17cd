#ifndef QBETHE_BETHE_HPP
#define QBETHE_BETHE_HPP

#include "qbethe/rmatrix.hpp"

namespace qbethe {

// Spectral parameter families of one Bethe vector: a first-level parameters
// (t or tau) and b second-level ones (s or sigma).
struct BetheParams {
    std::vector<Scalar> first;  // t_1..t_a (or tau)
    std::vector<Scalar> second; // s_1..s_b (or sigma)

    int a() const { return static_cast<int>(first.size()); }
    int b() const { return static_cast<int>(second.size()); }

    // Pairwise distinctness, distinctness from xi and q^-2 xi, no q^{+-2}
    // related pairs, s_j != t_i. Throws ParameterCollision.
    void validate(const ChainSpec& chain) const;
};

// Off-shell Bethe vector via the trace formula: contract
// L^(1)(t_1)...L^(M)(u_M) R^(M..1) with E_21^a x E_32^b inserted on the aux
// legs, apply to e1^N, and multiply by prod (q s_j - q^-1 t_i)/(s_j - t_i).
StateVector bethe_vector(const ChainSpec& chain, const BetheParams& p);

// Dual vector (covector components): same construction with weights
// E_12^a x E_23^b acting from the left on v' = (e1^N)^T.
StateVector dual_bethe_vector(const ChainSpec& chain, const BetheParams& p);

// <C(tau,sigma), B(t,s)> with the pairing normalized by <v',v> = 1.
Scalar direct_scalar_product(const ChainSpec& chain, const BetheParams& left,
                             const BetheParams& right);

} // namespace qbethe

#endif
