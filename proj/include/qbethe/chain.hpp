#ifndef QBETHE_CHAIN_HPP
#define QBETHE_CHAIN_HPP

#include <vector>

#include "qbethe/rational_function.hpp"
#include "qbethe/scalar.hpp"

namespace qbethe {

// Deformation parameter, chain length and inhomogeneities of the fundamental
// inhomogeneous chain. q must not be zero or a root of unity (checked up to
// order 12 on the rational backend); inhomogeneities must be pairwise distinct.
struct ChainSpec {
    Scalar q;
    int sites = 0;
    std::vector<Scalar> xi;

    ChainSpec(Scalar q_, std::vector<Scalar> xi_) : q(std::move(q_)), xi(std::move(xi_)) {
        sites = static_cast<int>(xi.size());
        validate();
    }

    Backend backend() const { return q.backend(); }
    Scalar qinv() const { return q.inverse(); }

    void validate() const {
        if (q.is_zero()) throw Error(ErrorCode::SingularParameters, "q = 0");
        if (q.is_rational()) {
            Scalar p = Scalar::one(q.backend());
            for (int k = 1; k <= 12; ++k) {
                p *= q;
                if (p == Scalar::one(q.backend()))
                    throw Error(ErrorCode::SingularParameters,
                                "q is a root of unity of order " + std::to_string(k));
            }
        }
        for (size_t i = 0; i < xi.size(); ++i)
            for (size_t j = i + 1; j < xi.size(); ++j)
                if (xi[i] == xi[j])
                    throw Error(ErrorCode::ParameterCollision, "coinciding inhomogeneities");
    }
};

// Closed-form diagonal eigenvalues of the singular vectors: lambda_i(z) for
// v = e1^N and mu_i(z) for v' = v^T. For the fundamental chain lambda_1 = 1
// and lambda_2 = lambda_3 = prod_k (z - xi_k)/(q z - q^{-1} xi_k), mu_i = lambda_i.
// These closed forms are certified against gauss_decompose by the test suite.
struct WeightFunctions {
    ChainSpec chain;

    explicit WeightFunctions(ChainSpec c) : chain(std::move(c)) {}

    Scalar lambda(int i, const Scalar& z) const {
        if (i == 1) return Scalar::one(chain.backend());
        Scalar r = Scalar::one(chain.backend());
        for (const auto& xk : chain.xi) {
            Scalar den = chain.q * z - chain.qinv() * xk;
            if (den.is_zero())
                throw Error(ErrorCode::SingularParameters, "lambda evaluated at q^-2 xi");
            r *= (z - xk) / den;
        }
        return r;
    }
    Scalar mu(int i, const Scalar& z) const { return lambda(i, z); }

    UnivariateRationalFunction lambda_rf(int i, const std::string& var = "z") const {
        Backend bk = chain.backend();
        Polynomial num = Polynomial::constant(Scalar::one(bk));
        Polynomial den = Polynomial::constant(Scalar::one(bk));
        if (i != 1) {
            for (const auto& xk : chain.xi) {
                num = num * Polynomial::linear(-xk, Scalar::one(bk));
                den = den * Polynomial::linear(-(chain.qinv() * xk), chain.q);
            }
        }
        return UnivariateRationalFunction(num, den, var);
    }
};

} // namespace qbethe

#endif
