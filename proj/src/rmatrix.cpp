#include "qbethe/rmatrix.hpp"

#include <vector>

namespace qbethe {

SparseOperator r_matrix(const Scalar& q, const Scalar& u, const Scalar& v) {
    Backend bk = q.backend();
    Scalar den = q * u - q.inverse() * v;
    if (den.is_negligible(1e-12))
        throw Error(ErrorCode::SingularParameters, "q u - q^-1 v = 0");
    Scalar a = (u - v) / den;
    Scalar b = (q - q.inverse()) / den;

    SparseOperator R(TensorShape{2});
    auto idx = [](int i, int j) { return static_cast<uint64_t>((i - 1) * 3 + (j - 1)); };
    for (int i = 1; i <= 3; ++i) R.add(idx(i, i), idx(i, i), Scalar::one(bk));
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            R.add(idx(i, j), idx(i, j), a);
            R.add(idx(j, i), idx(j, i), a);
            R.add(idx(i, j), idx(j, i), b * u); // u Eij x Eji
            R.add(idx(j, i), idx(i, j), b * v); // v Eji x Eij
        }
    return R;
}

SparseOperator r_product(const Scalar& q, const std::vector<Scalar>& u) {
    int M = static_cast<int>(u.size());
    Backend bk = q.backend();
    SparseOperator acc = SparseOperator::identity(TensorShape{M}, bk);
    // Factors listed left-to-right; compose so the leftmost acts last.
    for (int j = M; j >= 2; --j)
        for (int i = j - 1; i >= 1; --i) {
            SparseOperator Rji = embed_on_legs(r_matrix(q, u[j - 1], u[i - 1]), {j, i},
                                               TensorShape{M});
            acc = acc * Rji;
        }
    return acc;
}

Scalar check_yang_baxter(const Scalar& q, const Scalar& u, const Scalar& v, const Scalar& w) {
    TensorShape sh{3};
    SparseOperator R12 = embed_on_legs(r_matrix(q, u, v), {1, 2}, sh);
    SparseOperator R13 = embed_on_legs(r_matrix(q, u, w), {1, 3}, sh);
    SparseOperator R23 = embed_on_legs(r_matrix(q, v, w), {2, 3}, sh);
    SparseOperator lhs = R12 * R13 * R23;
    SparseOperator rhs = R23 * R13 * R12;
    return (lhs - rhs).max_abs_scalar(q.backend());
}

namespace {

// Single-leg block (i,j) of a two-leg operator whose first leg is the aux space.
SparseOperator aux_block(const SparseOperator& two_leg, int i, int j) {
    SparseOperator blk(TensorShape{1});
    for (const auto& [k, v] : two_leg.entries()) {
        int ri = static_cast<int>(k.first / 3), rq = static_cast<int>(k.first % 3);
        int ci = static_cast<int>(k.second / 3), cq = static_cast<int>(k.second % 3);
        if (ri == i - 1 && ci == j - 1) blk.add(rq, cq, v);
    }
    return blk;
}

} // namespace

MonodromyMatrix monodromy(const ChainSpec& chain, const Scalar& z) {
    Backend bk = chain.backend();
    int N = chain.sites;
    TensorShape qsh{N};
    MonodromyMatrix T;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            T[i][j] = (i == j) ? SparseOperator::identity(qsh, bk) : SparseOperator(qsh);

    for (int site = 1; site <= N; ++site) {
        SparseOperator L = r_matrix(chain.q, z, chain.xi[site - 1]);
        std::array<std::array<SparseOperator, 3>, 3> blk;
        for (int m = 0; m < 3; ++m)
            for (int j = 0; j < 3; ++j)
                blk[m][j] = embed_on_legs(aux_block(L, m + 1, j + 1), {site}, qsh);
        MonodromyMatrix next;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                SparseOperator acc(qsh);
                for (int m = 0; m < 3; ++m)
                    if (!T[i][m].empty() && !blk[m][j].empty()) acc = acc + T[i][m] * blk[m][j];
                next[i][j] = acc;
            }
        T = next;
    }
    return T;
}

Scalar check_rtt(const ChainSpec& chain, const Scalar& u, const Scalar& v) {
    Backend bk = chain.backend();
    int N = chain.sites;
    TensorShape full{2 + N};
    MonodromyMatrix Tu = monodromy(chain, u);
    MonodromyMatrix Tv = monodromy(chain, v);

    std::vector<int> qlegs(N);
    for (int s = 0; s < N; ++s) qlegs[s] = 3 + s;

    SparseOperator TuA(full), TvB(full);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (!Tu[i][j].empty()) {
                SparseOperator e = embed_on_legs(SparseOperator::matrix_unit(i + 1, j + 1, bk),
                                                 {1}, full);
                TuA = TuA + e * embed_on_legs(Tu[i][j], qlegs, full);
            }
            if (!Tv[i][j].empty()) {
                SparseOperator e = embed_on_legs(SparseOperator::matrix_unit(i + 1, j + 1, bk),
                                                 {2}, full);
                TvB = TvB + e * embed_on_legs(Tv[i][j], qlegs, full);
            }
        }
    SparseOperator R = embed_on_legs(r_matrix(chain.q, u, v), {1, 2}, full);
    SparseOperator lhs = R * TuA * TvB;
    SparseOperator rhs = TvB * TuA * R;
    return (lhs - rhs).max_abs_scalar(bk);
}

SparseOperator invert_operator(const SparseOperator& op, Backend bk) {
    uint64_t n = op.shape().dim();
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(2 * n, Scalar::zero(bk)));
    for (uint64_t i = 0; i < n; ++i) m[i][n + i] = Scalar::one(bk);
    for (const auto& [k, v] : op.entries()) m[k.first][k.second] = v;

    for (uint64_t col = 0; col < n; ++col) {
        // Pivot: first exactly-nonzero row (rational) or largest magnitude (float).
        uint64_t piv = col;
        if (bk == Backend::Rational) {
            while (piv < n && m[piv][col].is_zero()) ++piv;
            if (piv == n) throw Error(ErrorCode::NonInvertibleBlock, "singular diagonal block");
        } else {
            double best = -1;
            uint64_t at = n;
            for (uint64_t r = col; r < n; ++r)
                if (m[r][col].abs_double() > best) best = m[r][col].abs_double(), at = r;
            if (at == n || best < 1e-12)
                throw Error(ErrorCode::NonInvertibleBlock, "singular diagonal block");
            piv = at;
        }
        if (piv != col) std::swap(m[piv], m[col]);
        Scalar inv = m[col][col].inverse();
        for (uint64_t c = 0; c < 2 * n; ++c) m[col][c] *= inv;
        for (uint64_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_negligible()) continue;
            Scalar f = m[r][col];
            for (uint64_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    SparseOperator out(op.shape());
    for (uint64_t i = 0; i < n; ++i)
        for (uint64_t j = 0; j < n; ++j)
            if (!m[i][n + j].is_negligible()) out.add(i, j, m[i][n + j]);
    return out;
}

GaussDecomposition gauss_decompose(const ChainSpec& chain, const Scalar& z) {
    Backend bk = chain.backend();
    MonodromyMatrix T = monodromy(chain, z);
    auto L = [&](int i, int j) -> const SparseOperator& { return T[i - 1][j - 1]; };

    GaussDecomposition g;
    // Layer 1.
    g.k[1] = L(1, 1);
    SparseOperator k1inv = invert_operator(g.k[1], bk);
    g.f[2][1] = L(1, 2) * k1inv;
    g.f[3][1] = L(1, 3) * k1inv;
    g.e[1][2] = k1inv * L(2, 1);
    g.e[1][3] = k1inv * L(3, 1);
    // Layer 2.
    g.k[2] = L(2, 2) - g.f[2][1] * g.k[1] * g.e[1][2];
    SparseOperator k2inv = invert_operator(g.k[2], bk);
    g.f[3][2] = (L(2, 3) - g.f[3][1] * g.k[1] * g.e[1][2]) * k2inv;
    g.e[2][3] = k2inv * (L(3, 2) - g.f[2][1] * g.k[1] * g.e[1][3]);
    // Layer 3.
    g.k[3] = L(3, 3) - g.f[3][1] * g.k[1] * g.e[1][3] - g.f[3][2] * g.k[2] * g.e[2][3];
    return g;
}

MonodromyMatrix GaussDecomposition::recompose(const TensorShape& shape, Backend bk) const {
    MonodromyMatrix T;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T[i][j] = SparseOperator(shape);
    // Diagonal: L_{ii} = k_i + sum_{m<i} F_{i,m} k_m E_{m,i}
    for (int i = 1; i <= 3; ++i) {
        SparseOperator acc = k[i];
        for (int m = 1; m < i; ++m) acc = acc + f[i][m] * k[m] * e[m][i];
        T[i - 1][i - 1] = acc;
    }
    // Upper rows (i<j): L_{ij} = F_{j,i} k_i + sum_{m<i} F_{j,m} k_m E_{m,i}
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            SparseOperator acc = f[j][i] * k[i];
            for (int m = 1; m < i; ++m) acc = acc + f[j][m] * k[m] * e[m][i];
            T[i - 1][j - 1] = acc;
        }
    // Lower rows (i>j): L_{ij} = k_j E_{j,i} + sum_{m<j} F_{j,m} k_m E_{m,i}
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j < i; ++j) {
            SparseOperator acc = k[j] * e[j][i];
            for (int m = 1; m < j; ++m) acc = acc + f[j][m] * k[m] * e[m][i];
            T[i - 1][j - 1] = acc;
        }
    (void)bk;
    return T;
}

WeightFunctions weight_functions(const ChainSpec& chain) { return WeightFunctions(chain); }

} // namespace qbethe
