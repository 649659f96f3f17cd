#ifndef QBETHE_POLYNOMIAL_HPP
#define QBETHE_POLYNOMIAL_HPP

#include <vector>

#include "qbethe/scalar.hpp"

namespace qbethe {

// Dense univariate polynomial, coefficients in ascending degree order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const Scalar& s) { return Polynomial({s}); }
    // beta + alpha*z
    static Polynomial linear(const Scalar& beta, const Scalar& alpha) {
        return Polynomial({beta, alpha});
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero poly
    const std::vector<Scalar>& coeffs() const { return c_; }
    const Scalar& operator[](size_t i) const { return c_[i]; }

    Backend backend() const { return c_.empty() ? Backend::Rational : c_[0].backend(); }

    Scalar eval(const Scalar& z) const {
        if (c_.empty()) return Scalar::zero(z.backend());
        Scalar acc = c_.back();
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * z + c_[i];
        return acc;
    }

    Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<Scalar> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * Scalar::integer(static_cast<long>(i), backend());
        return Polynomial(std::move(d));
    }

    Polynomial operator-() const {
        std::vector<Scalar> r(c_);
        for (auto& x : r) x = -x;
        return Polynomial(std::move(r));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()));
        Backend bk = a.c_.empty() ? b.backend() : a.backend();
        for (size_t i = 0; i < r.size(); ++i) {
            Scalar x = i < a.c_.size() ? a.c_[i] : Scalar::zero(bk);
            Scalar y = i < b.c_.size() ? b.c_[i] : Scalar::zero(bk);
            r[i] = x + y;
        }
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        Backend bk = a.backend();
        std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar::zero(bk));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    Polynomial scaled(const Scalar& s) const {
        std::vector<Scalar> r(c_);
        for (auto& x : r) x *= s;
        return Polynomial(std::move(r));
    }

    // Euclidean division over the coefficient field; exact remainder on both backends.
    static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);

    // Monic gcd by the Euclidean algorithm; rational backend only.
    static Polynomial gcd(Polynomial a, Polynomial b);

    // Coefficients of p(x0 + u) as a polynomial in u.
    Polynomial taylor_shift(const Scalar& x0) const;

    Polynomial monic() const {
        if (is_zero()) return *this;
        return scaled(leading().inverse());
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_negligible()) c_.pop_back();
    }

    std::vector<Scalar> c_;
};

} // namespace qbethe

#endif
