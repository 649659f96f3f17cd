#include "qbethe/polynomial.hpp"

namespace qbethe {

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    Backend bk = b.backend();
    std::vector<Scalar> rem = a.c_;
    int db = b.degree();
    int da = static_cast<int>(rem.size()) - 1;
    if (da < db) {
        q = Polynomial();
        r = a;
        return;
    }
    std::vector<Scalar> quot(da - db + 1, Scalar::zero(bk));
    Scalar lead_inv = b.leading().inverse();
    for (int k = da - db; k >= 0; --k) {
        Scalar coef = rem[k + db] * lead_inv;
        quot[k] = coef;
        if (coef.is_zero()) continue;
        for (int j = 0; j <= db; ++j) rem[k + j] -= coef * b.c_[j];
    }
    rem.resize(db > 0 ? db : 0);
    q = Polynomial(std::move(quot));
    r = Polynomial(std::move(rem));
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    if (!a.is_zero() && a.backend() != Backend::Rational)
        throw Error(ErrorCode::BackendMismatch, "polynomial gcd requires the rational backend");
    while (!b.is_zero()) {
        Polynomial q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

Polynomial Polynomial::taylor_shift(const Scalar& x0) const {
    // Synthetic division: repeatedly divide by (z - x0), collecting remainders.
    if (c_.empty()) return Polynomial();
    std::vector<Scalar> work = c_;
    std::vector<Scalar> out(c_.size(), Scalar::zero(backend()));
    for (size_t k = 0; k < c_.size(); ++k) {
        // work <- work div (z - x0), out[k] = remainder
        Scalar rem = Scalar::zero(backend());
        for (size_t i = work.size(); i-- > 0;) {
            Scalar tmp = work[i] + rem * x0;
            work[i] = rem; // quotient coefficient of z^i
            rem = tmp;
        }
        out[k] = rem;
        if (!work.empty()) work.pop_back();
    }
    return Polynomial(std::move(out));
}

} // namespace qbethe
