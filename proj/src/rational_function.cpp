#include "qbethe/rational_function.hpp"

namespace qbethe {

namespace {
constexpr double kFloatPoleEps = 1e-9;

bool vanishes(const Scalar& s) { return s.is_negligible(kFloatPoleEps); }
} // namespace

void UnivariateRationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(Scalar::one(den_.backend()));
        return;
    }
    if (num_.backend() == Backend::Rational) {
        Polynomial g = Polynomial::gcd(num_, den_);
        if (g.degree() > 0) {
            Polynomial q, r;
            Polynomial::divmod(num_, g, q, r);
            num_ = q;
            Polynomial::divmod(den_, g, q, r);
            den_ = q;
        }
    }
    // Monic denominator fixes the representation.
    Scalar lead = den_.leading();
    den_ = den_.scaled(lead.inverse());
    num_ = num_.scaled(lead.inverse());
}

Scalar UnivariateRationalFunction::eval(const Scalar& z0) const {
    Scalar d = den_.eval(z0);
    if (vanishes(d))
        throw Error(ErrorCode::EvaluationAtPole, "denominator vanishes at " + z0.str());
    return num_.eval(z0) / d;
}

int UnivariateRationalFunction::pole_order(const Scalar& p) const {
    Polynomial shifted = den_.taylor_shift(p);
    int order = 0;
    const auto& c = shifted.coeffs();
    while (order < static_cast<int>(c.size()) && vanishes(c[order])) ++order;
    return order;
}

Scalar UnivariateRationalFunction::residue(const Scalar& p) const {
    Scalar d = den_.eval(p);
    if (!vanishes(d)) throw Error(ErrorCode::NotAPole, "den(" + p.str() + ") != 0");
    Scalar dprime = den_.derivative().eval(p);
    if (vanishes(dprime))
        throw Error(ErrorCode::HigherOrderPole, "pole of order > 1 at " + p.str());
    return num_.eval(p) / dprime;
}

Scalar UnivariateRationalFunction::laurent_residue(const Scalar& p) const {
    Backend bk = num_.is_zero() ? den_.backend() : num_.backend();
    Polynomial ds = den_.taylor_shift(p);
    const auto& dc = ds.coeffs();
    int m = 0;
    while (m < static_cast<int>(dc.size()) && vanishes(dc[m])) ++m;
    if (m == 0) return Scalar::zero(bk);
    // f(p+u) = num(p+u) / (u^m * dtilde(u)); residue = [u^{m-1}] num(p+u)/dtilde(u).
    Polynomial ns = num_.taylor_shift(p);
    const auto& nc = ns.coeffs();
    std::vector<Scalar> dt(dc.begin() + m, dc.end());
    std::vector<Scalar> g(m, Scalar::zero(bk));
    Scalar d0inv = dt[0].inverse();
    for (int k = 0; k < m; ++k) {
        Scalar acc = k < static_cast<int>(nc.size()) ? nc[k] : Scalar::zero(bk);
        for (int i = 1; i <= k && i < static_cast<int>(dt.size()); ++i) acc -= dt[i] * g[k - i];
        g[k] = acc * d0inv;
    }
    return g[m - 1];
}

} // namespace qbethe
