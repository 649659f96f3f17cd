#include "qbethe/scalar_product.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

namespace qbethe {

namespace {

long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

using Args = std::vector<LinearForm>;

// Y(list1; list2) as atoms, first displayed product form.
void emit_Y(Term& term, const Scalar& q, const Args& t, const Args& x) {
    Scalar qi = q.inverse();
    int n = static_cast<int>(t.size());
    for (int i = 0; i < n; ++i) {
        // 1/(1 - x_i/t_i) = t_i / (t_i - x_i)
        term.push(t[i], t[i] + x[i].scaled(-Scalar::one(q.backend())));
        for (int j = 0; j < i; ++j) {
            // (q^-1 - q x_i/t_j)/(1 - x_i/t_j) = (q^-1 t_j - q x_i)/(t_j - x_i)
            term.push(t[j].scaled(qi) + x[i].scaled(-q), t[j] + x[i].scaled(-Scalar::one(q.backend())));
        }
    }
}

void emit_Z(Term& term, const Scalar& q, const Args& t, const Args& x) {
    emit_Y(term, q, t, x);
    for (size_t i = 0; i < t.size(); ++i) term.push(x[i], t[i]);
}

// (q^-1 hi - q lo)/(hi - lo)
void emit_cross(Term& term, const Scalar& q, const LinearForm& hi, const LinearForm& lo) {
    Scalar qi = q.inverse();
    term.push(hi.scaled(qi) + lo.scaled(-q), hi + lo.scaled(-Scalar::one(q.backend())));
}

// Twist of one permutation: prod over inversions of
// (q^-1 v_{p(l)} - q v_{p(l')})/(q v_{p(l)} - q^-1 v_{p(l')}).
void emit_sym_twist(Term& term, const Scalar& q, const Args& vars, const std::vector<int>& perm) {
    Scalar qi = q.inverse();
    int n = static_cast<int>(vars.size());
    for (int l = 0; l < n; ++l)
        for (int lp = l + 1; lp < n; ++lp)
            if (perm[l] > perm[lp]) {
                const LinearForm& hi = vars[perm[l]];
                const LinearForm& lo = vars[perm[lp]];
                term.push(hi.scaled(qi) + lo.scaled(-q), hi.scaled(q) + lo.scaled(-qi), 1,
                          AtomOrigin::Antisym);
            }
}

// Inner sum of the projection kernels as symbolic terms. `efl` selects the
// E-kernel role assignment (Y <-> Z) exactly as in kernels.cpp.
std::vector<Term> kernel_terms(const Scalar& q, const Args& f1, const Args& f2, const Args& x,
                               const Args& y, bool efl) {
    int a = static_cast<int>(f1.size());
    int b = static_cast<int>(f2.size());
    Backend bk = q.backend();
    Scalar qi = q.inverse();
    std::vector<Term> out;
    for (int k = 0; k <= std::min(a, b); ++k) {
        Term term;
        term.coeff = (qi - q).pow(k) /
                     Scalar::integer(factorial(k) * factorial(a - k) * factorial(b - k), bk);
        for (int i = k + 1; i <= b; ++i)
            for (int j = i + 1; j <= b; ++j)
                term.push(f2[i - 1] + f2[j - 1].scaled(-Scalar::one(bk)),
                          f2[i - 1].scaled(qi) + f2[j - 1].scaled(-q));
        auto t_pair = [&](int i, int j) {
            term.push(f1[i - 1] + f1[j - 1].scaled(-Scalar::one(bk)),
                      f1[i - 1].scaled(qi) + f1[j - 1].scaled(-q));
        };
        for (int i = 1; i <= a - k; ++i)
            for (int j = i + 1; j <= a - k; ++j) t_pair(i, j);
        for (int i = a - k + 1; i <= a; ++i)
            for (int j = i + 1; j <= a; ++j) t_pair(i, j);

        Args ta, sk;
        for (int i = a; i >= a - k + 1; --i) ta.push_back(f1[i - 1]);
        for (int i = k; i >= 1; --i) sk.push_back(f2[i - 1]);
        efl ? emit_Y(term, q, ta, sk) : emit_Z(term, q, ta, sk);

        Args f1rev(f1.rbegin(), f1.rend());
        Args xrev(x.rbegin(), x.rend());
        efl ? emit_Z(term, q, f1rev, xrev) : emit_Y(term, q, f1rev, xrev);

        Args mixed;
        for (int i = a; i >= a - k + 1; --i) mixed.push_back(x[i - 1]);
        for (int i = k + 1; i <= b; ++i) mixed.push_back(f2[i - 1]);
        efl ? emit_Z(term, q, mixed, y) : emit_Y(term, q, mixed, y);

        for (int j = 1; j <= a - k; ++j)
            for (int i = k + 1; i <= b; ++i) emit_cross(term, q, x[j - 1], y[i - 1]);

        out.push_back(std::move(term));
    }
    return out;
}

// Two-family q-symmetrization of a symbolic term generator.
template <typename Gen>
std::vector<Term> sym_two_families(const Scalar& q, const Args& fam1, const Args& fam2,
                                   Gen&& gen) {
    std::vector<Term> out;
    int n1 = static_cast<int>(fam1.size());
    int n2 = static_cast<int>(fam2.size());
    std::vector<int> p1(n1), p2(n2);
    std::iota(p1.begin(), p1.end(), 0);
    do {
        std::vector<int> p2l(n2);
        std::iota(p2l.begin(), p2l.end(), 0);
        do {
            Args v1(n1), v2(n2);
            for (int i = 0; i < n1; ++i) v1[i] = fam1[p1[i]];
            for (int i = 0; i < n2; ++i) v2[i] = fam2[p2l[i]];
            Term twist;
            twist.coeff = Scalar::one(q.backend());
            emit_sym_twist(twist, q, fam1, p1);
            emit_sym_twist(twist, q, fam2, p2l);
            for (auto t : gen(v1, v2)) {
                Term combined;
                combined.coeff = t.coeff * twist.coeff;
                combined.atoms = twist.atoms;
                for (const auto& a : t.atoms) combined.push(a.num, a.den, a.pow, a.origin);
                out.push_back(std::move(combined));
            }
        } while (std::next_permutation(p2l.begin(), p2l.end()));
    } while (std::next_permutation(p1.begin(), p1.end()));
    return out;
}

std::vector<Term> multiply_term_lists(const std::vector<Term>& A, const std::vector<Term>& B) {
    std::vector<Term> out;
    out.reserve(A.size() * B.size());
    for (const auto& a : A)
        for (const auto& b : B) {
            Term t;
            t.coeff = a.coeff * b.coeff;
            t.atoms = a.atoms;
            for (const auto& atom : b.atoms) t.push(atom.num, atom.den, atom.pow, atom.origin);
            out.push_back(std::move(t));
        }
    return out;
}

} // namespace

FormalIntegrand build_scalar_product_integrand(const ChainSpec& chain, const BetheParams& left,
                                               const BetheParams& right,
                                               const ResidueConvention& conv) {
    const Scalar& q = chain.q;
    Scalar qi = chain.qinv();
    Backend bk = chain.backend();
    int a = right.a(), b = right.b();
    if (left.a() != a || left.b() != b)
        throw Error(ErrorCode::ParameterCollision,
                    "kernel formula requires matching family sizes");
    if (a > 3 || b > 3) throw Error(ErrorCode::TooManyVariables, "kernel formula: a,b <= 3");

    Args xs(a), ys(b);
    for (int i = 0; i < a; ++i) xs[i] = LinearForm::variable(i, bk);
    for (int j = 0; j < b; ++j) ys[j] = LinearForm::variable(a + j, bk);
    auto consts = [](const std::vector<Scalar>& v) {
        Args r(v.size());
        for (size_t i = 0; i < v.size(); ++i) r[i] = LinearForm(v[i]);
        return r;
    };
    Args tau = consts(left.first), sig = consts(left.second);
    Args t = consts(right.first), s = consts(right.second);

    // Base factor: prefactor, pairing, antisymmetrizers, weight functions.
    // The pairing and antisymmetrizer orientations are part of the residue
    // convention (see the frozen-convention notes on scalar_product_kernel).
    Term base;
    base.coeff = (q - qi).pow(a + b);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < a; ++j) {
            LinearForm shifted = xs[j].scaled(qi) + ys[i].scaled(-q); // q^-1 x - q y
            LinearForm plain = xs[j] + ys[i].scaled(-Scalar::one(bk)); // x - y
            if (conv.invert_pairing)
                base.push(plain, shifted, 1, AtomOrigin::Pairing);
            else
                base.push(shifted, plain, 1, AtomOrigin::Pairing);
        }
    auto antisym_pair = [&](const LinearForm& u, const LinearForm& v) {
        LinearForm num = u.scaled(qi) + v.scaled(-q); // q^-1 u - q v
        LinearForm den = u.scaled(q) + v.scaled(-qi); // q u - q^-1 v
        if (conv.invert_antisym)
            base.push(den, num, 1, AtomOrigin::Antisym);
        else
            base.push(num, den, 1, AtomOrigin::Antisym);
    };
    for (int i = 0; i < a; ++i)
        for (int j = i + 1; j < a; ++j) antisym_pair(xs[i], xs[j]);
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j) antisym_pair(ys[i], ys[j]);
    // psi_1^+(x) = lambda_2/lambda_1 = prod_k (x - xi_k)/(q x - q^-1 xi_k);
    // psi_2^+(y) = lambda_3/lambda_2 = 1 on the fundamental chain (certified
    // against gauss_decompose by the weight-function suite).
    for (int i = 0; i < a; ++i)
        for (const auto& xk : chain.xi)
            base.push(xs[i] + LinearForm(-xk), xs[i].scaled(q) + LinearForm(-(qi * xk)), 1,
                      AtomOrigin::Psi);

    // K_E(tau, sigma; x, y)
    std::vector<Term> ke = sym_two_families(q, tau, sig, [&](const Args& v1, const Args& v2) {
        return kernel_terms(q, v1, v2, xs, ys, true);
    });

    // Sym_{x,y} K_F(t, s; x, y): permutations act on the integration variables.
    std::vector<Term> kf;
    {
        std::vector<int> px(a), py(b);
        std::iota(px.begin(), px.end(), 0);
        do {
            std::vector<int> pyl(b);
            std::iota(pyl.begin(), pyl.end(), 0);
            do {
                Args xp(a), yp(b);
                for (int i = 0; i < a; ++i) xp[i] = xs[px[i]];
                for (int j = 0; j < b; ++j) yp[j] = ys[pyl[j]];
                Term twist;
                twist.coeff = Scalar::one(bk);
                emit_sym_twist(twist, q, xs, px);
                emit_sym_twist(twist, q, ys, pyl);
                auto inner = sym_two_families(q, t, s, [&](const Args& v1, const Args& v2) {
                    return kernel_terms(q, v1, v2, xp, yp, false);
                });
                for (const auto& innert : inner) {
                    Term combined;
                    combined.coeff = innert.coeff * twist.coeff;
                    combined.atoms = twist.atoms;
                    for (const auto& atom : innert.atoms)
                        combined.push(atom.num, atom.den, atom.pow, atom.origin);
                    kf.push_back(std::move(combined));
                }
            } while (std::next_permutation(pyl.begin(), pyl.end()));
        } while (std::next_permutation(px.begin(), px.end()));
    }

    FormalIntegrand f;
    f.backend = bk;
    f.terms = multiply_term_lists(multiply_term_lists({base}, ke), kf);
    return f;
}

Scalar scalar_product_kernel(const ChainSpec& chain, const BetheParams& left,
                             const BetheParams& right, const ResidueConvention& conv,
                             KernelEvalStats* stats) {
    left.validate(chain);
    right.validate(chain);
    Backend bk = chain.backend();
    int a = right.a(), b = right.b();

    FormalIntegrand f = build_scalar_product_integrand(chain, left, right, conv);

    PoleTable table;
    table.q = chain.q;
    table.s = right.second;
    table.sigma = left.second;
    table.t = right.first;
    table.tau = left.first;
    for (const auto& xk : chain.xi) table.psi_poles.push_back(chain.qinv() * chain.qinv() * xk);

    std::vector<int> order;
    auto push_family = [&](int lo, int n) {
        std::vector<int> ids(n);
        std::iota(ids.begin(), ids.end(), lo);
        if (conv.family_descending) std::reverse(ids.begin(), ids.end());
        order.insert(order.end(), ids.begin(), ids.end());
    };
    if (conv.x_stage_first) {
        push_family(0, a);
        push_family(a, b);
    } else {
        push_family(a, b);
        push_family(0, a);
    }

    std::vector<Term> terms = f.terms;
    for (int v : order) {
        bool is_x = v < a;
        terms = eliminate_variable(terms, v, bk, table,
                                   is_x ? conv.x_classes : conv.y_classes,
                                   is_x ? conv.sign_x : conv.sign_y);
        if (stats) {
            stats->residue_terms += terms.size();
            stats->stages++;
        }
    }
    FormalIntegrand done;
    done.backend = bk;
    done.terms = std::move(terms);
    return done.value();
}

Scalar scalar_product_normalization(const ChainSpec& chain, const BetheParams& left,
                                    const BetheParams& right) {
    WeightFunctions wf(chain);
    Scalar n = Scalar::one(chain.backend());
    for (const auto& ti : right.first) n *= wf.lambda(1, ti);
    for (const auto& taui : left.first) n *= wf.mu(1, taui);
    for (const auto& sj : right.second) n *= wf.lambda(2, sj);
    for (const auto& sigj : left.second) n *= wf.mu(2, sigj);
    return n;
}

std::string CompareReport::to_json() const {
    std::ostringstream os;
    os << "{\"direct\":\"" << direct.str() << "\",\"kernel\":\"" << kernel.str()
       << "\",\"normalization\":\"" << normalization.str() << "\",\"pass\":"
       << (pass ? "true" : "false") << ",\"residue_tree_nodes\":" << residue_tree_nodes
       << ",\"elapsed_ms\":" << elapsed_ms << "}";
    return os.str();
}

CompareReport compare_scalar_products(const ChainSpec& chain, const BetheParams& left,
                                      const BetheParams& right, const ResidueConvention& conv) {
    auto t0 = std::chrono::steady_clock::now();
    CompareReport rep;
    rep.direct = direct_scalar_product(chain, left, right);
    KernelEvalStats stats;
    rep.kernel = scalar_product_kernel(chain, left, right, conv, &stats);
    rep.normalization = scalar_product_normalization(chain, left, right);
    rep.residue_tree_nodes = stats.residue_terms;
    Scalar rhs = rep.kernel * rep.normalization;
    if (chain.backend() == Backend::Rational) {
        rep.pass = (rep.direct == rhs);
    } else {
        // relative 1e-9 against |direct|, with an absolute floor for the
        // identically vanishing sectors
        double tol = 1e-9 * rep.direct.abs_double() + 1e-15;
        rep.pass = (rep.direct - rhs).abs_double() <= tol;
    }
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

} // namespace qbethe
