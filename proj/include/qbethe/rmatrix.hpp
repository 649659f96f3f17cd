#ifndef QBETHE_RMATRIX_HPP
#define QBETHE_RMATRIX_HPP

#include <array>

#include "qbethe/chain.hpp"
#include "qbethe/tensor.hpp"

namespace qbethe {

// Trigonometric gl3 R-matrix on two legs:
//   R(u,v) = sum_i Eii x Eii
//          + (u-v)/(qu-q^{-1}v) sum_{i<j} (Eii x Ejj + Ejj x Eii)
//          + (q-q^{-1})/(qu-q^{-1}v) sum_{i<j} (u Eij x Eji + v Eji x Eij)
SparseOperator r_matrix(const Scalar& q, const Scalar& u, const Scalar& v);

// Ordered product prod_{M>=j>1} prod_{j>i>=1} R^{(ji)}(u_j,u_i) on M legs,
// with R^{(ji)} to the left of R^{(ml)} when j>m, or j=m and i>l.
SparseOperator r_product(const Scalar& q, const std::vector<Scalar>& u);

// Max |entry| of R12 R13 R23 - R23 R13 R12 on three legs; exactly 0 on the
// rational backend for valid parameters.
Scalar check_yang_baxter(const Scalar& q, const Scalar& u, const Scalar& v, const Scalar& w);

using MonodromyMatrix = std::array<std::array<SparseOperator, 3>, 3>;

// T_{ij}(z) on the N quantum legs of the inhomogeneous fundamental chain;
// the site operator at xi_k is r_matrix(q, z, xi_k) with the aux leg first.
MonodromyMatrix monodromy(const ChainSpec& chain, const Scalar& z);

// Max residual entry of R(u,v) (T(u) x 1)(1 x T(v)) - (1 x T(v))(T(u) x 1) R(u,v).
Scalar check_rtt(const ChainSpec& chain, const Scalar& u, const Scalar& v);

// Gauss coordinates of the monodromy matrix: T = F K E with F lower-unitriangular
// carriers F_{j,i} (j>i), diagonal K_i, and E upper carriers E_{i,j} (i<j).
struct GaussDecomposition {
    // f[j][i] = F_{j,i} for j>i; k[i] = K_i; e[i][j] = E_{i,j} for i<j (1-based).
    std::array<std::array<SparseOperator, 4>, 4> f;
    std::array<SparseOperator, 4> k;
    std::array<std::array<SparseOperator, 4>, 4> e;

    // Rebuild all nine monodromy entries from the coordinates.
    MonodromyMatrix recompose(const TensorShape& shape, Backend bk) const;
};

GaussDecomposition gauss_decompose(const ChainSpec& chain, const Scalar& z);

// Dense exact inverse on the 3^N space; NonInvertibleBlock if singular.
SparseOperator invert_operator(const SparseOperator& op, Backend bk);

WeightFunctions weight_functions(const ChainSpec& chain);

} // namespace qbethe

#endif
