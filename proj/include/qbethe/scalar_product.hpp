#ifndef QBETHE_SCALAR_PRODUCT_HPP
#define QBETHE_SCALAR_PRODUCT_HPP

#include <cstdint>
#include <string>

#include "qbethe/bethe.hpp"
#include "qbethe/integrand.hpp"

namespace qbethe {

// Residue convention for the iterated evaluation of the integral formula.
// The default is the frozen convention validated against the direct oracle;
// the alternates exist as diagnostic modes.
// Frozen residue convention, arbitrated against the direct oracle:
//  - x_j integrals pick +residues at the kernel poles t_1..t_a and tau_1..tau_a;
//  - y_i integrals pick -residues at the q^-2-shifted poles of the pairing
//    factor, which is read in the orientation (x-y)/(q^-1 x - q y) implied by
//    the inverse entries of the Hopf-pairing table;
//  - weight-function poles, Sym-twist shifts and the points 0 and infinity
//    never contribute;
//  - x variables are eliminated before y variables, ascending within each
//    family. family_descending is kept as a diagnostic mode; on the frozen
//    whitelists both orders agree.
struct ResidueConvention {
    std::vector<PoleClass> x_classes{PoleClass::TFamily, PoleClass::TauFamily};
    std::vector<PoleClass> y_classes{PoleClass::PairShift};
    int sign_x = +1;
    int sign_y = -1;
    bool x_stage_first = true;      // process x variables before y variables
    bool family_descending = false; // within a family, eliminate highest index first
    bool invert_pairing = true;     // pairing factor as (x-y)/(q^-1 x - q y)
    bool invert_antisym = false;    // diagnostic variant
};

struct KernelEvalStats {
    uint64_t residue_terms = 0; // residue tree nodes (terms kept after each stage)
    uint64_t stages = 0;
};

// The integrand of the universal scalar-product formula: pairing factors,
// family antisymmetrizers, K_E, Sym_{x,y}(K_F) and the weight-function
// product, expanded into sum-of-products-of-linear-fractional-atom form over
// the integration variables x_1..x_a (ids 0..a-1) and y_1..y_b (ids a..a+b-1).
FormalIntegrand build_scalar_product_integrand(const ChainSpec& chain, const BetheParams& left,
                                               const BetheParams& right,
                                               const ResidueConvention& conv = ResidueConvention());

// Evaluate the universal scalar-product formula by iterated residues.
Scalar scalar_product_kernel(const ChainSpec& chain, const BetheParams& left,
                             const BetheParams& right,
                             const ResidueConvention& conv = ResidueConvention(),
                             KernelEvalStats* stats = nullptr);

// prod_i lambda_1(t_i) mu_1(tau_i) prod_j lambda_2(s_j) mu_2(sigma_j)
Scalar scalar_product_normalization(const ChainSpec& chain, const BetheParams& left,
                                    const BetheParams& right);

struct CompareReport {
    Scalar direct;
    Scalar kernel;
    Scalar normalization;
    bool pass = false;
    uint64_t residue_tree_nodes = 0;
    int64_t elapsed_ms = 0;

    std::string to_json() const;
};

CompareReport compare_scalar_products(const ChainSpec& chain, const BetheParams& left,
                                      const BetheParams& right,
                                      const ResidueConvention& conv = ResidueConvention());

} // namespace qbethe

#endif
