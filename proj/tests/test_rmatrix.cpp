#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qbethe/rmatrix.hpp"
#include "qbethe/sampling.hpp"

using namespace qbethe;

namespace {

ChainSpec random_chain(Rng& rng, int sites) {
    Scalar q = random_rational(rng);
    while (q == Scalar(1) || q == Scalar(-1) || q.is_zero()) q = random_rational(rng);
    ParameterDraw d = draw_parameters(rng, q, sites, 0, 0);
    return ChainSpec(q, d.xi);
}

Scalar rand_param(Rng& rng, const ChainSpec& chain, std::vector<Scalar> avoid = {}) {
    for (const auto& x : chain.xi) avoid.push_back(x);
    return random_parameter(rng, chain.q, avoid);
}

} // namespace

TEST_CASE("r_matrix entries: diagonal coefficient and count") {
    Rng rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        Scalar q(3, 2), u = random_rational(rng), v = random_rational(rng);
        if (q * u == q.inverse() * v || u == v) continue;
        SparseOperator R = r_matrix(q, u, v);
        CHECK(R.entries().size() == 15);
        // E_ii x E_jj coefficient for i<j is (u-v)/(qu - q^-1 v)
        Scalar a = (u - v) / (q * u - q.inverse() * v);
        CHECK(R.entry(0 * 3 + 1, 0 * 3 + 1) == a); // (1,2) diagonal entry
        CHECK(R.entry(1 * 3 + 2, 1 * 3 + 2) == a);
    }
}

TEST_CASE("R(u,u) is the permutation operator") {
    Scalar q(5, 3), u(7, 4);
    SparseOperator R = r_matrix(q, u, u);
    SparseOperator P(TensorShape{2});
    for (uint64_t i = 0; i < 3; ++i)
        for (uint64_t j = 0; j < 3; ++j) P.add(i * 3 + j, j * 3 + i, Scalar(1));
    CHECK((R - P).empty());
}

TEST_CASE("singular parameters error") {
    Scalar q(2);
    // qu - q^-1 v = 0 at v = q^2 u
    CHECK_THROWS_AS(r_matrix(q, Scalar(1), Scalar(4)), Error);
}

TEST_CASE("r_product: empty and two-variable cases") {
    Scalar q(2);
    std::vector<Scalar> u1 = {Scalar(5)};
    SparseOperator R1 = r_product(q, u1);
    CHECK((R1 - SparseOperator::identity(TensorShape{1})).empty());

    std::vector<Scalar> u2 = {Scalar(5), Scalar(7)};
    SparseOperator R2 = r_product(q, u2);
    SparseOperator expect = embed_on_legs(r_matrix(q, Scalar(7), Scalar(5)), {2, 1},
                                          TensorShape{2});
    CHECK((R2 - expect).empty());
}

TEST_CASE("r_product M=3 ordering against factor-by-factor application") {
    Rng rng(43);
    Scalar q(2);
    std::vector<Scalar> u;
    for (int i = 0; i < 3; ++i) u.push_back(random_parameter(rng, q, u));
    SparseOperator prod = r_product(q, u);
    TensorShape sh{3};
    SparseOperator R32 = embed_on_legs(r_matrix(q, u[2], u[1]), {3, 2}, sh);
    SparseOperator R31 = embed_on_legs(r_matrix(q, u[2], u[0]), {3, 1}, sh);
    SparseOperator R21 = embed_on_legs(r_matrix(q, u[1], u[0]), {2, 1}, sh);
    SparseOperator expect = R32 * R31 * R21;
    CHECK((prod - expect).empty());
}

TEST_CASE("Yang-Baxter residual is exactly zero") {
    Rng rng(47);
    Scalar q(4, 7);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<Scalar> p;
        for (int i = 0; i < 3; ++i) p.push_back(random_parameter(rng, q, p));
        CHECK(check_yang_baxter(q, p[0], p[1], p[2]) == Scalar(0));
    }
    // u = v degenerate case
    CHECK(check_yang_baxter(q, Scalar(3), Scalar(3), Scalar(5)) == Scalar(0));
}

TEST_CASE("Yang-Baxter on the float backend") {
    auto c = [](double x) { return Scalar(std::complex<double>(x, 0)); };
    Scalar r = check_yang_baxter(c(0.7), c(1.3), c(-2.1), c(0.4));
    CHECK(r.abs_double() <= 1e-12);
}

TEST_CASE("monodromy: N=0 and N=1 closed forms") {
    Scalar q(2);
    ChainSpec empty(q, {});
    MonodromyMatrix T0 = monodromy(empty, Scalar(5));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) CHECK((T0[i][j] - SparseOperator::identity(TensorShape{0})).empty());
            else CHECK(T0[i][j].empty());
        }

    Scalar xi(7), z(3);
    ChainSpec one(q, {xi});
    MonodromyMatrix T = monodromy(one, z);
    // T_{12}(z) = (q - q^-1) z/(q z - q^-1 xi) E_21
    Scalar coef = (q - q.inverse()) * z / (q * z - q.inverse() * xi);
    CHECK(T[0][1].entry(1, 0) == coef);
    CHECK(T[0][1].entries().size() == 1);
}

TEST_CASE("monodromy N=2 equals aux-block of the two-site product") {
    Rng rng(53);
    ChainSpec chain = random_chain(rng, 2);
    Scalar z = rand_param(rng, chain);
    MonodromyMatrix T = monodromy(chain, z);

    // Brute force: act with R^{(aux,1)}(z,xi1) R^{(aux,2)}(z,xi2) on aux x q1 x q2.
    TensorShape full{3};
    SparseOperator L1 = embed_on_legs(r_matrix(chain.q, z, chain.xi[0]), {1, 2}, full);
    SparseOperator L2 = embed_on_legs(r_matrix(chain.q, z, chain.xi[1]), {1, 3}, full);
    SparseOperator prod = L1 * L2;
    TensorShape qsh{2};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SparseOperator blk(qsh);
            for (const auto& [k, v] : prod.entries()) {
                uint64_t rq = k.first % 9, cq = k.second % 9;
                if (k.first / 9 == static_cast<uint64_t>(i) &&
                    k.second / 9 == static_cast<uint64_t>(j))
                    blk.add(rq, cq, v);
            }
            CHECK((blk - T[i][j]).empty());
        }
}

TEST_CASE("RTT residual is exactly zero for N=1 and N=3") {
    Rng rng(59);
    for (int sites : {1, 3}) {
        ChainSpec chain = random_chain(rng, sites);
        std::vector<Scalar> avoid;
        Scalar u = rand_param(rng, chain, avoid);
        avoid.push_back(u);
        Scalar v = rand_param(rng, chain, avoid);
        CHECK(check_rtt(chain, u, v) == Scalar(0));
    }
}

TEST_CASE("singular vector conditions hwv and hwvl") {
    Rng rng(61);
    for (int sites : {1, 2, 3}) {
        ChainSpec chain = random_chain(rng, sites);
        Scalar z = rand_param(rng, chain);
        MonodromyMatrix T = monodromy(chain, z);
        TensorShape qsh{sites};
        StateVector v = StateVector::basis(qsh, 0); // e1^N
        WeightFunctions wf = weight_functions(chain);
        // Lower entries annihilate v; diagonal entries give lambda_i v.
        std::vector<int> qlegs(sites);
        for (int s = 0; s < sites; ++s) qlegs[s] = s + 1;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                StateVector out = apply_on_legs(T[i - 1][j - 1], qlegs, v);
                if (i > j) CHECK(out.is_zero());
                if (i == j) CHECK(out == v.scaled(wf.lambda(i, z)));
            }
        // Left singular vector: v' T_{ij} = 0 for i<j; v' T_{ii} = mu_i v'.
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                StateVector out = apply_on_legs(T[i - 1][j - 1].transpose(), qlegs, v);
                if (i < j) CHECK(out.is_zero());
                if (i == j) CHECK(out == v.scaled(wf.mu(i, z)));
            }
    }
}

TEST_CASE("gauss decomposition: N=0 trivial, recomposition exact, weights certified") {
    Scalar q(2);
    ChainSpec empty(q, {});
    GaussDecomposition g0 = gauss_decompose(empty, Scalar(5));
    CHECK((g0.k[1] - SparseOperator::identity(TensorShape{0})).empty());
    CHECK(g0.f[2][1].empty());
    CHECK(g0.e[1][2].empty());

    Rng rng(67);
    for (int sites : {1, 2}) {
        ChainSpec chain = random_chain(rng, sites);
        Scalar z = rand_param(rng, chain);
        GaussDecomposition g = gauss_decompose(chain, z);
        MonodromyMatrix T = monodromy(chain, z);
        MonodromyMatrix R = g.recompose(TensorShape{sites}, chain.backend());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK((T[i][j] - R[i][j]).empty());

        // k_i(z) v = lambda_i(z) v certifies the closed forms.
        StateVector v = StateVector::basis(TensorShape{sites}, 0);
        std::vector<int> qlegs(sites);
        for (int s = 0; s < sites; ++s) qlegs[s] = s + 1;
        WeightFunctions wf = weight_functions(chain);
        for (int i = 1; i <= 3; ++i) {
            StateVector out = apply_on_legs(g.k[i], qlegs, v);
            CHECK(out == v.scaled(wf.lambda(i, z)));
        }
    }
}

TEST_CASE("weight functions: closed forms and psi2 ratio") {
    Scalar q(2);
    ChainSpec empty(q, {});
    WeightFunctions wf0 = weight_functions(empty);
    CHECK(wf0.lambda(1, Scalar(9)) == Scalar(1));
    CHECK(wf0.lambda(2, Scalar(9)) == Scalar(1));

    ChainSpec one(q, {Scalar(7)});
    WeightFunctions wf = weight_functions(one);
    Scalar z(3);
    CHECK(wf.lambda(2, z) == (z - Scalar(7)) / (q * z - q.inverse() * Scalar(7)));
    // lambda_3 / lambda_2 = 1 on the fundamental chain
    CHECK(wf.lambda(3, z) == wf.lambda(2, z));
    // rational-function factory agrees with pointwise evaluation
    auto rf = wf.lambda_rf(2);
    CHECK(rf.eval(z) == wf.lambda(2, z));
}

TEST_CASE("chain spec guards") {
    CHECK_THROWS_AS(ChainSpec(Scalar(1), {}), Error);           // q = 1
    CHECK_THROWS_AS(ChainSpec(Scalar(-1), {}), Error);          // q = -1
    CHECK_THROWS_AS(ChainSpec(Scalar(0), {}), Error);           // q = 0
    CHECK_THROWS_AS(ChainSpec(Scalar(2), {Scalar(3), Scalar(3)}), Error);
}

TEST_CASE("monodromy singular point and non-invertible Gauss block") {
    Scalar q(2), xi(8);
    ChainSpec chain(q, {xi});
    // z = q^-2 xi hits the site-operator pole
    CHECK_THROWS_AS(monodromy(chain, Scalar(2)), Error);
    // z = xi makes k_1 = T_11 singular on the quantum space
    CHECK_THROWS_AS(gauss_decompose(chain, xi), Error);
}
