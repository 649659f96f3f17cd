#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qbethe/rational_function.hpp"
#include "qbethe/sampling.hpp"

using namespace qbethe;

namespace {

Polynomial poly(std::initializer_list<long> cs) {
    std::vector<Scalar> v;
    for (long c : cs) v.push_back(Scalar(c));
    return Polynomial(std::move(v));
}

} // namespace

TEST_CASE("rational scalar arithmetic is exact and canonical") {
    Scalar a(3, 7), b(-6, 14);
    CHECK(a + b == Scalar(0));
    CHECK(a * a.inverse() == Scalar(1));
    CHECK(Scalar(2, 4) == Scalar(1, 2));
    CHECK(Scalar::from_string("-3/7").str() == "-3/7");
    CHECK(Scalar::from_string("5").str() == "5");
    CHECK(Scalar(5, 3).pow(-2) == Scalar(9, 25));
    // (a/b)*(b/a) = 1 for random nonzero rationals
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        Scalar x = random_rational(rng);
        CHECK(x * x.inverse() == Scalar(1));
    }
}

TEST_CASE("backends never mix") {
    Scalar r(1, 2);
    Scalar f(std::complex<double>(0.5, 0));
    CHECK_THROWS_AS(r + f, Error);
    CHECK_THROWS_AS(r == f, Error);
}

TEST_CASE("polynomial division and gcd") {
    Polynomial a = poly({-1, 0, 1}); // z^2 - 1
    Polynomial b = poly({-1, 1});    // z - 1
    Polynomial q, r;
    Polynomial::divmod(a, b, q, r);
    CHECK(r.is_zero());
    CHECK(q.eval(Scalar(5)) == Scalar(6)); // z + 1
    Polynomial g = Polynomial::gcd(a, b);
    CHECK(g.degree() == 1);
    CHECK(g.eval(Scalar(1)) == Scalar(0));
}

TEST_CASE("taylor shift") {
    Polynomial p = poly({1, 2, 3}); // 1 + 2z + 3z^2
    Polynomial s = p.taylor_shift(Scalar(2));
    // p(2+u) = 1 + 2(2+u) + 3(2+u)^2 = 17 + 14u + 3u^2
    CHECK(s.eval(Scalar(0)) == Scalar(17));
    CHECK(s[1] == Scalar(14));
    CHECK(s[2] == Scalar(3));
}

TEST_CASE("rf_eval removable singularity cancels under normalize") {
    UnivariateRationalFunction f(poly({-1, 0, 1}), poly({-1, 1})); // (z^2-1)/(z-1)
    CHECK(f.eval(Scalar(1)) == Scalar(2));
}

TEST_CASE("rf_eval simple values and pole error") {
    UnivariateRationalFunction f(poly({1}), poly({-2, 1})); // 1/(z-2)
    CHECK(f.eval(Scalar(0)) == Scalar(-1, 2));
    CHECK_THROWS_AS(f.eval(Scalar(2)), Error);
}

TEST_CASE("rf_eval linear form matches direct substitution at random rationals") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        Scalar q = random_rational(rng), xi = random_rational(rng), z0 = random_rational(rng);
        // f(z) = q z - q^-1 xi
        UnivariateRationalFunction f(
            Polynomial({-(q.inverse() * xi), q}),
            Polynomial::constant(Scalar(1)));
        CHECK(f.eval(z0) == q * z0 - q.inverse() * xi);
    }
}

TEST_CASE("rf_residue at simple poles") {
    UnivariateRationalFunction f(poly({1}), poly({-2, 1})); // 1/(z-2)
    CHECK(f.residue(Scalar(2)) == Scalar(1));

    // z/((z-1)(z-3)): residue at 1 is -1/2 (partial fraction oracle)
    UnivariateRationalFunction g(poly({0, 1}), poly({3, -4, 1}));
    CHECK(g.residue(Scalar(1)) == Scalar(-1, 2));

    CHECK_THROWS_AS(g.residue(Scalar(5)), Error); // NotAPole
}

TEST_CASE("rf_residue higher-order pole error and laurent residue") {
    UnivariateRationalFunction f(poly({1}), poly({1, -2, 1})); // 1/(z-1)^2
    CHECK_THROWS_AS(f.residue(Scalar(1)), Error);
    CHECK(f.laurent_residue(Scalar(1)) == Scalar(0));

    // (3 + (z-1))/(z-1)^2 has laurent residue 1 at z=1
    UnivariateRationalFunction g(poly({2, 1}), poly({1, -2, 1}));
    CHECK(g.laurent_residue(Scalar(1)) == Scalar(1));
    CHECK(g.pole_order(Scalar(1)) == 2);
}

TEST_CASE("partial fraction reconstruction: f minus sum of residue parts is polynomial") {
    Rng rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        // Distinct poles p1,p2,p3 and a random numerator of degree <= 2.
        std::vector<Scalar> poles;
        Scalar q(2);
        for (int i = 0; i < 3; ++i) poles.push_back(random_parameter(rng, q, poles));
        Polynomial den = Polynomial::constant(Scalar(1));
        for (const auto& p : poles) den = den * Polynomial({-p, Scalar(1)});
        Polynomial num({random_rational(rng), random_rational(rng), random_rational(rng)});
        UnivariateRationalFunction f(num, den);

        // Evaluate f - sum_k res_k/(z - p_k) at deg+1 extra points: must agree
        // with a polynomial (here: a constant, since deg num < deg den gives 0).
        std::vector<Scalar> res;
        for (const auto& p : poles) res.push_back(f.residue(p));
        auto remainder = [&](const Scalar& z) {
            Scalar acc = f.eval(z);
            for (size_t k = 0; k < poles.size(); ++k) acc -= res[k] / (z - poles[k]);
            return acc;
        };
        // deg num <= 2 < 3 = deg den: remainder must be identically zero.
        for (int i = 0; i < 4; ++i) {
            Scalar z = random_parameter(rng, q, poles);
            CHECK(remainder(z) == Scalar(0));
        }
    }
}

TEST_CASE("residue is linear") {
    Rng rng(5);
    Scalar p = Scalar(3);
    // f = a/(z-3) + poly, g = b/(z-3) + poly
    for (int rep = 0; rep < 10; ++rep) {
        Scalar a = random_rational(rng), b = random_rational(rng);
        Scalar alpha = random_rational(rng), beta = random_rational(rng);
        UnivariateRationalFunction f(Polynomial({a}), poly({-3, 1}));
        UnivariateRationalFunction g(Polynomial({b, Scalar(1)}), poly({-3, 1}));
        UnivariateRationalFunction comb(
            Polynomial({alpha * a + beta * b, beta}), poly({-3, 1}));
        CHECK(comb.residue(p) == alpha * f.residue(p) + beta * g.residue(p));
    }
}

TEST_CASE("normalize is idempotent") {
    UnivariateRationalFunction f(poly({-1, 0, 1}), poly({-1, 1}));
    UnivariateRationalFunction g(f.num(), f.den());
    CHECK(g.num().coeffs() == f.num().coeffs());
    CHECK(g.den().coeffs() == f.den().coeffs());
}

TEST_CASE("float backend: evaluation and pole threshold") {
    auto c = [](double x) { return Scalar(std::complex<double>(x, 0)); };
    Polynomial num({c(1)});
    Polynomial den({c(-2), c(1)});
    UnivariateRationalFunction f(num, den);
    CHECK((f.eval(c(0)) - c(-0.5)).abs_double() < 1e-14);
    CHECK_THROWS_AS(f.eval(c(2)), Error);
    CHECK((f.residue(c(2)) - c(1)).abs_double() < 1e-12);
}

TEST_CASE("float backend forbids gcd normalization") {
    auto c = [](double x) { return Scalar(std::complex<double>(x, 0)); };
    Polynomial a({c(-1), c(0), c(1)});
    Polynomial b({c(-1), c(1)});
    CHECK_THROWS_AS(Polynomial::gcd(a, b), Error);
    // construction still works: denominator made monic, no gcd pass
    UnivariateRationalFunction f(a, b);
    CHECK((f.eval(c(3)) - c(4.0)).abs_double() < 1e-12);
}
