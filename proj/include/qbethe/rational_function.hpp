#ifndef QBETHE_RATIONAL_FUNCTION_HPP
#define QBETHE_RATIONAL_FUNCTION_HPP

#include <string>
#include <utility>

#include "qbethe/polynomial.hpp"

namespace qbethe {

// Ratio of univariate polynomials in one active variable. Normalized on
// construction: common factors removed by polynomial gcd (rational backend)
// and the denominator made monic.
class UnivariateRationalFunction {
public:
    UnivariateRationalFunction() : num_(), den_(Polynomial::constant(Scalar(1))) {}
    UnivariateRationalFunction(Polynomial num, Polynomial den, std::string var = "z")
        : num_(std::move(num)), den_(std::move(den)), var_(std::move(var)) {
        if (den_.is_zero())
            throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
        normalize();
    }

    static UnivariateRationalFunction constant(const Scalar& s, std::string var = "z") {
        return UnivariateRationalFunction(Polynomial::constant(s),
                                          Polynomial::constant(Scalar::one(s.backend())),
                                          std::move(var));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const std::string& variable() const { return var_; }
    bool is_zero() const { return num_.is_zero(); }

    Scalar eval(const Scalar& z0) const;

    // Residue at a simple pole p: num(p)/den'(p). Errors: NotAPole if den(p) != 0,
    // HigherOrderPole if the multiplicity exceeds one.
    Scalar residue(const Scalar& p) const;

    // Coefficient of (z-p)^{-1} in the Laurent expansion; works for any pole order.
    // Returns zero when p is not a pole at all.
    Scalar laurent_residue(const Scalar& p) const;

    // Multiplicity of p as a root of the denominator (0 if not a root).
    int pole_order(const Scalar& p) const;

    friend UnivariateRationalFunction operator+(const UnivariateRationalFunction& a,
                                                const UnivariateRationalFunction& b) {
        return UnivariateRationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_,
                                          a.var_);
    }
    friend UnivariateRationalFunction operator*(const UnivariateRationalFunction& a,
                                                const UnivariateRationalFunction& b) {
        return UnivariateRationalFunction(a.num_ * b.num_, a.den_ * b.den_, a.var_);
    }

private:
    void normalize();

    Polynomial num_, den_;
    std::string var_ = "z";
};

} // namespace qbethe

#endif
