#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qbethe/sampling.hpp"
#include "qbethe/scalar_product.hpp"

using namespace qbethe;

namespace {

FormalIntegrand geometric(const Scalar& s) {
    // 1/(1 - z/s) = s/(s - z) in variable 0
    Backend bk = s.backend();
    FormalIntegrand f;
    f.backend = bk;
    Term t;
    t.coeff = Scalar::one(bk);
    LinearForm num(s);
    LinearForm den(s);
    den.coef[0] = -Scalar::one(bk);
    t.push(num, den);
    f.terms.push_back(t);
    return f;
}

} // namespace

TEST_CASE("zero mode of the geometric kernel is 1") {
    Scalar s(7, 2);
    FormalIntegrand f = geometric(s);
    CHECK(formal_contour_integral(f, 0, {{s}}) == Scalar(1));
}

TEST_CASE("empty whitelist integrates to zero; constants never contribute") {
    Scalar s(7, 2);
    FormalIntegrand f = geometric(s);
    CHECK(formal_contour_integral(f, 0, {}) == Scalar(0));

    FormalIntegrand c;
    c.backend = Backend::Rational;
    Term t;
    t.coeff = Scalar(42);
    c.terms.push_back(t);
    CHECK(formal_contour_integral(c, 0, {}) == Scalar(0));
    CHECK(candidate_poles(c, 0).empty());
}

TEST_CASE("worked-example y-kernel decomposes into the two residue contributions") {
    // f = [1/(1-y/s)] [(q^-1 - q y/x)/(1 - y/x)], whitelist {s, x}:
    // A_s = (q^-1 x - q s)/(x - s), A_x = (q^-1 - q) s/(s - x), sum = q^-1.
    Scalar q(3), s(5), x(7);
    Scalar qi = q.inverse();
    Backend bk = Backend::Rational;
    FormalIntegrand f;
    f.backend = bk;
    Term t;
    t.coeff = Scalar::one(bk);
    LinearForm den1(s);
    den1.coef[0] = -Scalar::one(bk); // s - y
    t.push(LinearForm(s), den1);
    LinearForm num2(qi * x);
    num2.coef[0] = -q; // q^-1 x - q y
    LinearForm den2(x);
    den2.coef[0] = -Scalar::one(bk); // x - y
    t.push(num2, den2);
    f.terms.push_back(t);

    Scalar As = (qi * x - q * s) / (x - s);
    Scalar Ax = (qi - q) * s / (s - x);
    CHECK(formal_contour_integral(f, 0, {{s}}) == As);
    CHECK(formal_contour_integral(f, 0, {{x}}) == Ax);
    CHECK(formal_contour_integral(f, 0, {{s, x}}) == As + Ax);
    CHECK(As + Ax == qi);
}

TEST_CASE("whitelist guards: non-candidate and higher-order poles") {
    Scalar s(7, 2);
    FormalIntegrand f = geometric(s);
    CHECK_THROWS_AS(formal_contour_integral(f, 0, {{Scalar(9)}}), Error);

    FormalIntegrand g = geometric(s);
    g.terms[0].push(g.terms[0].atoms[0].num, g.terms[0].atoms[0].den); // square the pole
    CHECK_THROWS_AS(formal_contour_integral(g, 0, {{s}}), Error);
}

TEST_CASE("linearity and whitelist additivity") {
    Rng rng(191);
    Scalar q(2);
    std::vector<Scalar> avoid;
    Scalar p1 = random_parameter(rng, q, avoid);
    avoid.push_back(p1);
    Scalar p2 = random_parameter(rng, q, avoid);
    Scalar alpha(3, 4), beta(-5, 7);
    FormalIntegrand f1 = geometric(p1), f2 = geometric(p2);
    FormalIntegrand comb;
    comb.backend = Backend::Rational;
    Term t1 = f1.terms[0];
    t1.coeff *= alpha;
    Term t2 = f2.terms[0];
    t2.coeff *= beta;
    comb.terms = {t1, t2};
    Scalar whole = formal_contour_integral(comb, 0, {{p1, p2}});
    Scalar split = formal_contour_integral(comb, 0, {{p1}}) +
                   formal_contour_integral(comb, 0, {{p2}});
    CHECK(whole == split);
    CHECK(whole == alpha * formal_contour_integral(f1, 0, {{p1}}) +
                       beta * formal_contour_integral(f2, 0, {{p2}}));
}

TEST_CASE("collapse round-trip preserves evaluation at random points") {
    Rng rng(193);
    Scalar q(2);
    std::vector<Scalar> avoid;
    Scalar s = random_parameter(rng, q, avoid);
    avoid.push_back(s);
    Scalar x = random_parameter(rng, q, avoid);
    avoid.push_back(x);
    FormalIntegrand f = geometric(s);
    Term extra = f.terms[0];
    LinearForm den(x);
    den.coef[0] = -Scalar::one(Backend::Rational);
    extra.push(LinearForm(Scalar(1)), den);
    f.terms.push_back(extra);
    UnivariateRationalFunction rf = collapse_to_rational(f, 0);
    for (int i = 0; i < 10; ++i) {
        Scalar z = random_parameter(rng, q, avoid);
        avoid.push_back(z);
        Scalar direct(0);
        for (const auto& term : f.terms) {
            Scalar v = term.coeff;
            for (const auto& a : term.atoms) {
                Scalar num = a.num.c0 + a.num.coeff_of(0, Backend::Rational) * z;
                Scalar dnm = a.den.c0 + a.den.coeff_of(0, Backend::Rational) * z;
                v *= (num / dnm).pow(a.pow);
            }
            direct += v;
        }
        CHECK(rf.eval(z) == direct);
    }
}

TEST_CASE("symbolic elimination matches a hand-computed two-variable chain") {
    // f(x,y) = 1/((s-y)(x-y)(t-x)): eliminate y at pole s with x symbolic,
    // then x at t; Res_{y=s}[f/y] = -1/((x-s) s); then
    // Res_{x=t}[-1/((x-s) s (t-x) x)] = +1/((t-s) s t).
    Scalar s(5), t(3), q(2);
    Backend bk = Backend::Rational;
    PoleTable table;
    table.q = q;
    table.s = {s};
    table.t = {t};

    Term term;
    term.coeff = Scalar::one(bk);
    LinearForm dy(s);
    dy.coef[1] = -Scalar::one(bk); // s - y
    term.push(LinearForm(Scalar(1)), dy);
    LinearForm dxy;
    dxy.c0 = Scalar(0);
    dxy.coef[0] = Scalar::one(bk);
    dxy.coef[1] = -Scalar::one(bk); // x - y
    term.push(LinearForm(Scalar(1)), dxy);
    LinearForm dx(t);
    dx.coef[0] = -Scalar::one(bk); // t - x
    term.push(LinearForm(Scalar(1)), dx);

    auto stage1 = eliminate_variable({term}, 1, bk, table, {PoleClass::SFamily}, +1);
    auto stage2 = eliminate_variable(stage1, 0, bk, table, {PoleClass::TFamily}, +1);
    FormalIntegrand done;
    done.backend = bk;
    done.terms = stage2;
    CHECK(done.value() == Scalar(1) / ((t - s) * s * t));
}

TEST_CASE("higher-order pole residue via symbolic elimination") {
    // f(y) = 1/((s-y)^2 (c-y)): Laurent residue at y=s of f/y equals
    // d/dy [1/((c-y) y)] at y=s = (by direct computation) the exact value below.
    Scalar s(5), c(3), q(2);
    Backend bk = Backend::Rational;
    PoleTable table;
    table.q = q;
    table.s = {s};

    Term term;
    term.coeff = Scalar::one(bk);
    LinearForm dy(s);
    dy.coef[0] = -Scalar::one(bk);
    term.push(LinearForm(Scalar(1)), dy, 2);
    LinearForm dc(c);
    dc.coef[0] = -Scalar::one(bk);
    term.push(LinearForm(Scalar(1)), dc);

    auto out = eliminate_variable({term}, 0, bk, table, {PoleClass::SFamily}, +1);
    FormalIntegrand done;
    done.backend = bk;
    done.terms = out;
    // d/dy [ 1/((c-y) y) ] = (1/((c-y) y)) (1/(c-y) - 1/y); at y=s:
    Scalar expect = (Scalar(1) / ((c - s) * s)) * (Scalar(1) / (c - s) - Scalar(1) / s);
    CHECK(done.value() == expect);
}

namespace {

ChainSpec scan_chain(Rng& rng, int sites) {
    Scalar q = random_rational(rng);
    while (q == Scalar(1) || q == Scalar(-1) || q.is_zero()) q = random_rational(rng);
    ParameterDraw d = draw_parameters(rng, q, sites, 0, 0);
    return ChainSpec(q, d.xi);
}

std::pair<BetheParams, BetheParams> scan_pair(Rng& rng, const ChainSpec& chain, int a, int b) {
    std::vector<Scalar> avoid = chain.xi;
    auto take = [&](int n) {
        std::vector<Scalar> v;
        for (int i = 0; i < n; ++i) {
            Scalar c = random_parameter(rng, chain.q, avoid);
            v.push_back(c);
            avoid.push_back(c);
        }
        return v;
    };
    BetheParams right, left;
    right.first = take(a);
    right.second = take(b);
    left.first = take(a);
    left.second = take(b);
    return {left, right};
}

} // namespace

TEST_CASE("scalar product formula: trivial sector") {
    Rng rng(211);
    ChainSpec chain = scan_chain(rng, 2);
    BetheParams none;
    CHECK(scalar_product_kernel(chain, none, none) == Scalar(1));
    CHECK(scalar_product_normalization(chain, none, none) == Scalar(1));
}

TEST_CASE("scalar product formula: (1,0) bring-up closed form") {
    Rng rng(223);
    ChainSpec chain = scan_chain(rng, 1);
    auto [left, right] = scan_pair(rng, chain, 1, 0);
    Scalar S = scalar_product_kernel(chain, left, right);
    // S * lambda_1(t) mu_1(tau) = direct; lambda_1 = mu_1 = 1 here.
    CHECK(S == direct_scalar_product(chain, left, right));
}

TEST_CASE("scalar product equivalence on the core sectors") {
    Rng rng(227);
    for (auto [a, b] : {std::pair<int, int>{1, 0}, {0, 1}, {1, 1}})
        for (int sites : {1, 2}) {
            ChainSpec chain = scan_chain(rng, sites);
            auto [left, right] = scan_pair(rng, chain, a, b);
            CompareReport rep = compare_scalar_products(chain, left, right);
            CHECK(rep.pass);
            CHECK(rep.direct == rep.kernel * rep.normalization);
        }
}

TEST_CASE("kernel-side (1,0) value is rational in t with poles only at q^-2 xi") {
    // Reconstruct S(tau; t) as a function of t and inspect its denominator.
    Rng rng(229);
    ChainSpec chain = scan_chain(rng, 2);
    auto [left, right] = scan_pair(rng, chain, 1, 0);
    int d = 4;
    int U = 2 * d + 2, npts = U;
    std::vector<Scalar> ts, vals;
    std::vector<Scalar> avoid = chain.xi;
    avoid.push_back(left.first[0]);
    for (int i = 0; i < npts; ++i) {
        Scalar tv = random_parameter(rng, chain.q, avoid);
        avoid.push_back(tv);
        BetheParams r2 = right;
        r2.first[0] = tv;
        ts.push_back(tv);
        vals.push_back(scalar_product_kernel(chain, left, r2));
    }
    std::vector<std::vector<Scalar>> M(npts, std::vector<Scalar>(U, Scalar(0)));
    for (int r = 0; r < npts; ++r) {
        Scalar pw(1);
        for (int k = 0; k <= d; ++k) {
            M[r][k] = pw;
            pw *= ts[r];
        }
        pw = Scalar(1);
        for (int k = 0; k <= d; ++k) {
            M[r][d + 1 + k] = -vals[r] * pw;
            pw *= ts[r];
        }
    }
    std::vector<int> pivot_of_col(U, -1);
    int rank = 0;
    for (int col = 0; col < U && rank < npts; ++col) {
        int piv = rank;
        while (piv < npts && M[piv][col].is_zero()) ++piv;
        if (piv == npts) continue;
        std::swap(M[piv], M[rank]);
        Scalar inv = M[rank][col].inverse();
        for (int c = col; c < U; ++c) M[rank][c] *= inv;
        for (int r = 0; r < npts; ++r) {
            if (r == rank || M[r][col].is_zero()) continue;
            Scalar f = M[r][col];
            for (int c = col; c < U; ++c) M[r][c] -= f * M[rank][c];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    REQUIRE(rank < U);
    int free_col = 0;
    while (pivot_of_col[free_col] != -1) ++free_col;
    std::vector<Scalar> sol(U, Scalar(0));
    sol[free_col] = Scalar(1);
    for (int col = 0; col < U; ++col)
        if (pivot_of_col[col] != -1) sol[col] = -M[pivot_of_col[col]][free_col];
    UnivariateRationalFunction rf(Polynomial({sol.begin(), sol.begin() + d + 1}),
                                  Polynomial({sol.begin() + d + 1, sol.end()}));
    // every denominator root must be a q^-2 xi_k point
    for (const auto& xk : chain.xi) {
        Scalar psi_pole = chain.qinv() * chain.qinv() * xk;
        CHECK(rf.pole_order(psi_pole) <= 1);
    }
    Polynomial expected_den = Polynomial::constant(Scalar(1));
    for (const auto& xk : chain.xi)
        expected_den = expected_den *
                       Polynomial({-(chain.qinv() * chain.qinv() * xk), Scalar(1)});
    Polynomial quo, rem;
    Polynomial::divmod(expected_den, rf.den(), quo, rem);
    CHECK(rem.is_zero()); // den divides prod (t - q^-2 xi_k)
}

TEST_CASE("sector-mismatched inputs: direct vanishes and kernel side vanishes too") {
    Rng rng(233);
    ChainSpec chain = scan_chain(rng, 1);
    // (a,b)=(2,0) on one site cannot host two excitations
    auto [left, right] = scan_pair(rng, chain, 2, 0);
    CHECK(direct_scalar_product(chain, left, right) == Scalar(0));
    CHECK(scalar_product_kernel(chain, left, right) == Scalar(0));
}

TEST_CASE("diagnostic elimination order agrees on the frozen whitelists") {
    Rng rng(239);
    ChainSpec chain = scan_chain(rng, 2);
    auto [left, right] = scan_pair(rng, chain, 1, 1);
    ResidueConvention a, b;
    b.family_descending = true;
    CHECK(scalar_product_kernel(chain, left, right, a) ==
          scalar_product_kernel(chain, left, right, b));
    ResidueConvention c;
    c.x_stage_first = false;
    CHECK(scalar_product_kernel(chain, left, right, a) ==
          scalar_product_kernel(chain, left, right, c));
}

TEST_CASE("float backend shadow of an exact comparison") {
    Rng rng(241);
    ChainSpec chain = scan_chain(rng, 1);
    auto [left, right] = scan_pair(rng, chain, 1, 1);
    std::vector<Scalar> fxi;
    for (const auto& x : chain.xi) fxi.push_back(x.to_float_backend());
    ChainSpec fchain(chain.q.to_float_backend(), fxi);
    auto tofl = [](std::vector<Scalar> v) {
        for (auto& x : v) x = x.to_float_backend();
        return v;
    };
    BetheParams fl{tofl(left.first), tofl(left.second)};
    BetheParams fr{tofl(right.first), tofl(right.second)};
    CompareReport rep = compare_scalar_products(fchain, fl, fr);
    CHECK(rep.pass);
}
