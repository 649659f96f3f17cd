#ifndef QBETHE_KERNELS_HPP
#define QBETHE_KERNELS_HPP

#include <functional>
#include <vector>

#include "qbethe/scalar.hpp"

namespace qbethe {

using Evaluator = std::function<Scalar(const std::vector<Scalar>&)>;

// Sym G = sum over S_n of prod_{l<l', s(l)>s(l')}
//   (q^-1 - q t_{s(l')}/t_{s(l)}) / (q - q^-1 t_{s(l')}/t_{s(l)}) * G(^s t).
// Guarded by n <= 6.
Scalar q_symmetrize(const Scalar& q, const Evaluator& G, const std::vector<Scalar>& vars);

// Twist factor of one permutation (the pi(sigma) coefficient above).
Scalar sym_twist(const Scalar& q, const std::vector<Scalar>& vars, const std::vector<int>& perm);

// Two-family symmetrization over S_a x S_b, a!b! terms.
Scalar q_symmetrize_two(const Scalar& q,
                        const std::function<Scalar(const std::vector<Scalar>&,
                                                   const std::vector<Scalar>&)>& G,
                        const std::vector<Scalar>& fam1, const std::vector<Scalar>& fam2);

// Y(t_1..t_n; x_1..x_n) = prod_i 1/(1-x_i/t_i) prod_{j<i} (q^-1 - q x_i/t_j)/(1 - x_i/t_j),
// first displayed product form; kernel_Y_alt is the second form (j from i+1 to n).
Scalar kernel_Y(const Scalar& q, const std::vector<Scalar>& t, const std::vector<Scalar>& x);
Scalar kernel_Y_alt(const Scalar& q, const std::vector<Scalar>& t, const std::vector<Scalar>& x);
Scalar kernel_Z(const Scalar& q, const std::vector<Scalar>& t, const std::vector<Scalar>& x);

// phi_{s_l}(s_1; s_2..s_k) = prod_{j=2, j!=l}^k (s_1-s_j)/(s_l-s_j)
//                          * prod_{j=2}^k (q^-1 s_l - q s_j)/(q^-1 s_1 - q s_j)
// with l in 2..k; s = (s_1, ..., s_k).
Scalar phi(const Scalar& q, int l, const std::vector<Scalar>& s);
// varphi_{s_l}(s_k; s_{k-1}..s_1) = prod_{j=1, j!=l}^{k-1} (s_k-s_j)/(s_l-s_j)
//                                 * prod_{j=1}^{k-1} (q s_l - q^-1 s_j)/(q s_k - q^-1 s_j)
// with l in 1..k-1.
Scalar varphi(const Scalar& q, int l, const std::vector<Scalar>& s);

// Literal evaluation of the displayed sums for the projection kernels.
Scalar kernel_KF(const Scalar& q, const std::vector<Scalar>& t, const std::vector<Scalar>& s,
                 const std::vector<Scalar>& x, const std::vector<Scalar>& y);
Scalar kernel_KE(const Scalar& q, const std::vector<Scalar>& tau, const std::vector<Scalar>& sig,
                 const std::vector<Scalar>& x, const std::vector<Scalar>& y);

// Izergin determinant form:
// prod_i t_i prod_{i,j}(q^-1 t_i - q x_j) / prod_{i<j}(t_i-t_j)(x_j-x_i)
//   * det | 1/((t_i-x_j)(q^-1 t_i - q x_j)) |
Scalar izergin_determinant(const Scalar& q, const std::vector<Scalar>& t,
                           const std::vector<Scalar>& x);

// Max |lhs - rhs| over the three-way equality between the two prefactored
// q-symmetrizations of Y and the determinant form.
Scalar check_izergin_identity(const Scalar& q, const std::vector<Scalar>& t,
                              const std::vector<Scalar>& x);

// Residual of the exchange identity
// prod_{i<j} (q^-1 t_i - q t_j)/(t_i-t_j) Sym_t Y(t_n..t_1; ^w s)
//   = prod_{i<j} (q^-1 s_i - q s_j)/(s_i-s_j) Sym_s Y(^w' t; s_n..s_1)
// for arbitrary permutations w of s and w' of t.
Scalar check_exchange_identity(const Scalar& q, const std::vector<Scalar>& t,
                               const std::vector<Scalar>& s, const std::vector<int>& w,
                               const std::vector<int>& wprime);

Scalar det_dense(std::vector<std::vector<Scalar>> m, Backend bk);

} // namespace qbethe

#endif
