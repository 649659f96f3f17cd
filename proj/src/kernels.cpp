#include "qbethe/kernels.hpp"

#include <algorithm>
#include <numeric>

#include "qbethe/errors.hpp"

namespace qbethe {

Scalar sym_twist(const Scalar& q, const std::vector<Scalar>& vars, const std::vector<int>& perm) {
    Backend bk = q.backend();
    Scalar tw = Scalar::one(bk);
    Scalar qi = q.inverse();
    int n = static_cast<int>(vars.size());
    for (int l = 0; l < n; ++l)
        for (int lp = l + 1; lp < n; ++lp)
            if (perm[l] > perm[lp]) {
                Scalar ratio = vars[perm[lp]] / vars[perm[l]];
                Scalar den = q - qi * ratio;
                if (den.is_zero())
                    throw Error(ErrorCode::ParameterCollision, "q^2-related pair in Sym twist");
                tw *= (qi - q * ratio) / den;
            }
    return tw;
}

Scalar q_symmetrize(const Scalar& q, const Evaluator& G, const std::vector<Scalar>& vars) {
    int n = static_cast<int>(vars.size());
    if (n > 6) throw Error(ErrorCode::TooManyVariables, "Sym over more than 6 variables");
    Backend bk = q.backend();
    if (n == 0) return G({});
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar acc = Scalar::zero(bk);
    do {
        std::vector<Scalar> pv(n);
        for (int i = 0; i < n; ++i) pv[i] = vars[perm[i]];
        acc += sym_twist(q, vars, perm) * G(pv);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

Scalar q_symmetrize_two(const Scalar& q,
                        const std::function<Scalar(const std::vector<Scalar>&,
                                                   const std::vector<Scalar>&)>& G,
                        const std::vector<Scalar>& fam1, const std::vector<Scalar>& fam2) {
    return q_symmetrize(
        q,
        [&](const std::vector<Scalar>& v1) {
            return q_symmetrize(
                q, [&](const std::vector<Scalar>& v2) { return G(v1, v2); }, fam2);
        },
        fam1);
}

namespace {

Scalar ratio_factor(const Scalar& q, const Scalar& num_hi, const Scalar& num_lo,
                    const Scalar& den_hi, const Scalar& den_lo) {
    // (num_hi - num_lo) / (den_hi - den_lo) with a collision guard.
    Scalar den = den_hi - den_lo;
    if (den.is_zero()) throw Error(ErrorCode::ParameterCollision, "kernel denominator vanishes");
    return (num_hi - num_lo) / den;
}

} // namespace

Scalar kernel_Y(const Scalar& q, const std::vector<Scalar>& t, const std::vector<Scalar>& x) {
    if (t.size() != x.size())
        throw Error(ErrorCode::ParameterCollision, "Y kernel needs equally long families");
    Backend bk = q.backend();
    Scalar qi = q.inverse();
    Scalar acc = Scalar::one(bk);
    int n = static_cast<int>(t.size());
    for (int i = 0; i < n; ++i) {
        if (t[i].is_zero()) throw Error(ErrorCode::ParameterCollision, "t_i = 0 in Y kernel");
        Scalar den = Scalar::one(bk) - x[i] / t[i];
        if (den.is_zero()) throw Error(ErrorCode::ParameterCollision, "x_i = t_i in Y kernel");
        acc /= den;
        for (int j = 0; j < i; ++j) {
            Scalar d = Scalar::one(bk) - x[i] / t[j];
            if (d.is_zero()) throw Error(ErrorCode::ParameterCollision, "x_i = t_j in Y kernel");
            acc *= (qi - q * x[i] / t[j]) / d;
        }
    }
    return acc;
}

Scalar kernel_Y_alt(const Scalar& q, const std::vector<Scalar>& t, const std::vector<Scalar>& x) {
    if (t.size() != x.size())
        throw Error(ErrorCode::ParameterCollision, "Y kernel needs equally long families");
    Backend bk = q.backend();
    Scalar qi = q.inverse();
    Scalar acc = Scalar::one(bk);
    int n = static_cast<int>(t.size());
    for (int i = 0; i < n; ++i) {
        Scalar den = Scalar::one(bk) - x[i] / t[i];
        if (den.is_zero()) throw Error(ErrorCode::ParameterCollision, "x_i = t_i in Y kernel");
        acc /= den;
        for (int j = i + 1; j < n; ++j) {
            Scalar d = Scalar::one(bk) - x[j] / t[i];
            if (d.is_zero()) throw Error(ErrorCode::ParameterCollision, "x_j = t_i in Y kernel");
            acc *= (qi - q * x[j] / t[i]) / d;
        }
    }
    return acc;
}

Scalar kernel_Z(const Scalar& q, const std::vector<Scalar>& t, const std::vector<Scalar>& x) {
    Scalar acc = kernel_Y(q, t, x);
    for (size_t i = 0; i < t.size(); ++i) acc *= x[i] / t[i];
    return acc;
}

Scalar phi(const Scalar& q, int l, const std::vector<Scalar>& s) {
    int k = static_cast<int>(s.size());
    if (l < 2 || l > k) throw Error(ErrorCode::ConfigError, "phi index out of range");
    Backend bk = q.backend();
    Scalar qi = q.inverse();
    Scalar acc = Scalar::one(bk);
    for (int j = 2; j <= k; ++j) {
        if (j != l) acc *= ratio_factor(q, s[0], s[j - 1], s[l - 1], s[j - 1]);
        acc *= ratio_factor(q, qi * s[l - 1], q * s[j - 1], qi * s[0], q * s[j - 1]);
    }
    return acc;
}

Scalar varphi(const Scalar& q, int l, const std::vector<Scalar>& s) {
    int k = static_cast<int>(s.size());
    if (l < 1 || l > k - 1) throw Error(ErrorCode::ConfigError, "varphi index out of range");
    Backend bk = q.backend();
    Scalar qi = q.inverse();
    Scalar acc = Scalar::one(bk);
    for (int j = 1; j <= k - 1; ++j) {
        if (j != l) acc *= ratio_factor(q, s[k - 1], s[j - 1], s[l - 1], s[j - 1]);
        acc *= ratio_factor(q, q * s[l - 1], qi * s[j - 1], q * s[k - 1], qi * s[j - 1]);
    }
    return acc;
}

namespace {

// Shared inner sum of the projection kernels. `efl` flips the roles Y <-> Z
// between the F-kernel (false) and the E-kernel (true).
Scalar kernel_sum(const Scalar& q, const std::vector<Scalar>& f1, const std::vector<Scalar>& f2,
                  const std::vector<Scalar>& x, const std::vector<Scalar>& y, bool efl) {
    int a = static_cast<int>(f1.size());
    int b = static_cast<int>(f2.size());
    Backend bk = q.backend();
    Scalar qi = q.inverse();

    auto fact = [](int n) {
        long f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };

    Scalar total = Scalar::zero(bk);
    int kmax = std::min(a, b);
    for (int k = 0; k <= kmax; ++k) {
        Scalar term = (qi - q).pow(k);
        term /= Scalar::integer(fact(k) * fact(a - k) * fact(b - k), bk);

        for (int i = k + 1; i <= b; ++i)
            for (int j = i + 1; j <= b; ++j)
                term *= ratio_factor(q, f2[i - 1], f2[j - 1], qi * f2[i - 1], q * f2[j - 1]);
        for (int i = 1; i <= a - k; ++i)
            for (int j = i + 1; j <= a - k; ++j)
                term *= ratio_factor(q, f1[i - 1], f1[j - 1], qi * f1[i - 1], q * f1[j - 1]);
        for (int i = a - k + 1; i <= a; ++i)
            for (int j = i + 1; j <= a; ++j)
                term *= ratio_factor(q, f1[i - 1], f1[j - 1], qi * f1[i - 1], q * f1[j - 1]);

        // Z(f1_a..f1_{a-k+1}; f2_k..f2_1)  (Y for the E kernel)
        std::vector<Scalar> ta, sk;
        for (int i = a; i >= a - k + 1; --i) ta.push_back(f1[i - 1]);
        for (int i = k; i >= 1; --i) sk.push_back(f2[i - 1]);
        term *= efl ? kernel_Y(q, ta, sk) : kernel_Z(q, ta, sk);

        // Y(f1_a..f1_1; x_a..x_1)  (Z for the E kernel)
        std::vector<Scalar> trev(f1.rbegin(), f1.rend());
        std::vector<Scalar> xrev(x.rbegin(), x.rend());
        term *= efl ? kernel_Z(q, trev, xrev) : kernel_Y(q, trev, xrev);

        // Y(x_a..x_{a-k+1}, f2_{k+1}..f2_b; y_1..y_b)  (Z for the E kernel)
        std::vector<Scalar> mixed;
        for (int i = a; i >= a - k + 1; --i) mixed.push_back(x[i - 1]);
        for (int i = k + 1; i <= b; ++i) mixed.push_back(f2[i - 1]);
        std::vector<Scalar> yfwd(y.begin(), y.end());
        term *= efl ? kernel_Z(q, mixed, yfwd) : kernel_Y(q, mixed, yfwd);

        // prod_{j=1}^{a-k} prod_{i=k+1}^{b} (q^-1 - q y_i/x_j)/(1 - y_i/x_j)
        for (int j = 1; j <= a - k; ++j)
            for (int i = k + 1; i <= b; ++i)
                term *= ratio_factor(q, qi * x[j - 1], q * y[i - 1], x[j - 1], y[i - 1]);

        total += term;
    }
    return total;
}

} // namespace

Scalar kernel_KF(const Scalar& q, const std::vector<Scalar>& t, const std::vector<Scalar>& s,
                 const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    if (t.size() > 3 || s.size() > 3)
        throw Error(ErrorCode::TooManyVariables, "K_F limited to a,b <= 3");
    return q_symmetrize_two(
        q,
        [&](const std::vector<Scalar>& tp, const std::vector<Scalar>& sp) {
            return kernel_sum(q, tp, sp, x, y, false);
        },
        t, s);
}

Scalar kernel_KE(const Scalar& q, const std::vector<Scalar>& tau, const std::vector<Scalar>& sig,
                 const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    if (tau.size() > 3 || sig.size() > 3)
        throw Error(ErrorCode::TooManyVariables, "K_E limited to a,b <= 3");
    return q_symmetrize_two(
        q,
        [&](const std::vector<Scalar>& tp, const std::vector<Scalar>& sp) {
            return kernel_sum(q, tp, sp, x, y, true);
        },
        tau, sig);
}

Scalar det_dense(std::vector<std::vector<Scalar>> m, Backend bk) {
    size_t n = m.size();
    Scalar det = Scalar::one(bk);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_negligible()) ++piv;
        if (piv == n) return Scalar::zero(bk);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Scalar inv = m[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_negligible()) continue;
            Scalar f = m[r][col] * inv;
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

Scalar izergin_determinant(const Scalar& q, const std::vector<Scalar>& t,
                           const std::vector<Scalar>& x) {
    size_t n = t.size();
    if (x.size() != n) throw Error(ErrorCode::ParameterCollision, "family size mismatch");
    Backend bk = q.backend();
    Scalar qi = q.inverse();
    Scalar pref = Scalar::one(bk);
    for (size_t i = 0; i < n; ++i) pref *= t[i];
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) pref *= qi * t[i] - q * x[j];
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Scalar dt = t[i] - t[j];
            Scalar dx = x[j] - x[i];
            if (dt.is_zero() || dx.is_zero())
                throw Error(ErrorCode::ParameterCollision, "coinciding parameters");
            pref /= dt * dx;
        }
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar::zero(bk)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Scalar d = (t[i] - x[j]) * (qi * t[i] - q * x[j]);
            if (d.is_zero()) throw Error(ErrorCode::ParameterCollision, "t_i = x_j");
            m[i][j] = d.inverse();
        }
    return pref * det_dense(std::move(m), bk);
}

Scalar check_izergin_identity(const Scalar& q, const std::vector<Scalar>& t,
                              const std::vector<Scalar>& x) {
    Backend bk = q.backend();
    Scalar qi = q.inverse();
    auto antisym = [&](const std::vector<Scalar>& v) {
        Scalar p = Scalar::one(bk);
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = i + 1; j < v.size(); ++j) p *= (qi * v[i] - q * v[j]) / (v[i] - v[j]);
        return p;
    };
    // The symmetrized family enters in reversed order, as in the exchange
    // identity; the other family's order is immaterial under the Sym.
    Scalar lhs_t = antisym(t) * q_symmetrize(
                                    q, [&](const std::vector<Scalar>& tp) {
                                        std::vector<Scalar> trev(tp.rbegin(), tp.rend());
                                        return kernel_Y(q, trev, x);
                                    },
                                    t);
    Scalar lhs_x = antisym(x) * q_symmetrize(
                                    q, [&](const std::vector<Scalar>& xp) {
                                        std::vector<Scalar> xrev(xp.rbegin(), xp.rend());
                                        return kernel_Y(q, t, xrev);
                                    },
                                    x);
    Scalar rhs = izergin_determinant(q, t, x);
    Scalar r1 = (lhs_t - rhs).abs_scalar();
    Scalar r2 = (lhs_x - rhs).abs_scalar();
    return r1.abs_double() >= r2.abs_double() ? r1 : r2;
}

Scalar check_exchange_identity(const Scalar& q, const std::vector<Scalar>& t,
                               const std::vector<Scalar>& s, const std::vector<int>& w,
                               const std::vector<int>& wprime) {
    Backend bk = q.backend();
    Scalar qi = q.inverse();
    size_t n = t.size();
    auto antisym = [&](const std::vector<Scalar>& v) {
        Scalar p = Scalar::one(bk);
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = i + 1; j < v.size(); ++j) p *= (qi * v[i] - q * v[j]) / (v[i] - v[j]);
        return p;
    };
    std::vector<Scalar> s_w(n), t_wp(n);
    for (size_t i = 0; i < n; ++i) s_w[i] = s[w[i]];
    for (size_t i = 0; i < n; ++i) t_wp[i] = t[wprime[i]];

    // Sym acts on t with Y(t_n..t_1; ^w s)
    Scalar lhs = antisym(t) * q_symmetrize(
                                  q,
                                  [&](const std::vector<Scalar>& tp) {
                                      std::vector<Scalar> trev(tp.rbegin(), tp.rend());
                                      return kernel_Y(q, trev, s_w);
                                  },
                                  t);
    Scalar rhs = antisym(s) * q_symmetrize(
                                  q,
                                  [&](const std::vector<Scalar>& sp) {
                                      std::vector<Scalar> srev(sp.rbegin(), sp.rend());
                                      return kernel_Y(q, t_wp, srev);
                                  },
                                  s);
    return (lhs - rhs).abs_scalar();
}

} // namespace qbethe
