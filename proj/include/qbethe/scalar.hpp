#ifndef QBETHE_SCALAR_HPP
#define QBETHE_SCALAR_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "qbethe/errors.hpp"

namespace qbethe {

enum class Backend { Rational, Float };

// Field element. Either an exact big rational or a double-precision complex
// number; the two backends never mix inside one expression.
class Scalar {
public:
    Scalar() : backend_(Backend::Rational), q_(0) {}
    Scalar(long n) : backend_(Backend::Rational), q_(static_cast<long>(n)) {}
    Scalar(long num, long den) : backend_(Backend::Rational) {
        if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Scalar(const mpq_class& q) : backend_(Backend::Rational), q_(q) {
        q_.canonicalize();
    }
    explicit Scalar(std::complex<double> z) : backend_(Backend::Float), z_(z) {}

    static Scalar zero(Backend b) {
        return b == Backend::Rational ? Scalar(0) : Scalar(std::complex<double>(0.0));
    }
    static Scalar one(Backend b) {
        return b == Backend::Rational ? Scalar(1) : Scalar(std::complex<double>(1.0));
    }
    static Scalar integer(long n, Backend b) {
        return b == Backend::Rational ? Scalar(n)
                                      : Scalar(std::complex<double>(static_cast<double>(n)));
    }
    // Parses "num/den", "num", or a decimal "[re,im]" style is handled by JSON I/O.
    static Scalar from_string(const std::string& s);

    Backend backend() const { return backend_; }
    bool is_rational() const { return backend_ == Backend::Rational; }

    const mpq_class& rat() const {
        require(Backend::Rational);
        return q_;
    }
    std::complex<double> cplx() const {
        require(Backend::Float);
        return z_;
    }

    // Exact value as double (rational backend) or |z| components.
    double to_double() const {
        return backend_ == Backend::Rational ? q_.get_d() : z_.real();
    }
    // Lossless re-tagging onto the float backend (used by the float shadow runs).
    Scalar to_float_backend() const {
        if (backend_ == Backend::Float) return *this;
        return Scalar(std::complex<double>(q_.get_d(), 0.0));
    }

    bool is_zero() const {
        if (backend_ == Backend::Rational) return sgn(q_) == 0;
        return z_ == std::complex<double>(0.0, 0.0);
    }
    // Magnitude test used by the float backend where exact zero tests are meaningless.
    bool is_negligible(double eps = 1e-14) const {
        if (backend_ == Backend::Rational) return sgn(q_) == 0;
        return std::abs(z_) < eps;
    }

    double abs_double() const {
        if (backend_ == Backend::Rational) return std::abs(q_.get_d());
        return std::abs(z_);
    }
    // |x| on the same backend (rational stays exact, float takes |z| as a real).
    Scalar abs_scalar() const {
        if (backend_ == Backend::Rational) return Scalar(mpq_class(::abs(q_)));
        return Scalar(std::complex<double>(std::abs(z_), 0.0));
    }

    Scalar operator-() const {
        if (backend_ == Backend::Rational) return Scalar(mpq_class(-q_));
        return Scalar(-z_);
    }

    Scalar& operator+=(const Scalar& o) {
        match(o);
        if (backend_ == Backend::Rational) q_ += o.q_;
        else z_ += o.z_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        match(o);
        if (backend_ == Backend::Rational) q_ -= o.q_;
        else z_ -= o.z_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        match(o);
        if (backend_ == Backend::Rational) q_ *= o.q_;
        else z_ *= o.z_;
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        match(o);
        if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "scalar division by zero");
        if (backend_ == Backend::Rational) q_ /= o.q_;
        else z_ /= o.z_;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        a.match(b);
        if (a.backend_ == Backend::Rational) return a.q_ == b.q_;
        return a.z_ == b.z_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const {
        if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
        if (backend_ == Backend::Rational) return Scalar(mpq_class(1) / q_);
        return Scalar(std::complex<double>(1.0) / z_);
    }

    Scalar pow(long e) const {
        Scalar base = *this;
        if (e < 0) {
            base = base.inverse();
            e = -e;
        }
        Scalar r = one(backend_);
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    std::string str() const;

private:
    void require(Backend b) const {
        if (backend_ != b) throw Error(ErrorCode::BackendMismatch, "wrong backend access");
    }
    void match(const Scalar& o) const {
        if (backend_ != o.backend_)
            throw Error(ErrorCode::BackendMismatch, "mixed rational/float operands");
    }

    Backend backend_;
    mpq_class q_;
    std::complex<double> z_{0.0, 0.0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace qbethe

#endif
