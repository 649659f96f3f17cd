#include "qbethe/bethe.hpp"

namespace qbethe {

void BetheParams::validate(const ChainSpec& chain) const {
    if (a() + b() > 5)
        throw Error(ErrorCode::TooManyVariables, "a + b > 5 exceeds the desk-scale guard");
    std::vector<Scalar> all = first;
    all.insert(all.end(), second.begin(), second.end());
    Scalar q2 = chain.q * chain.q;
    for (size_t i = 0; i < all.size(); ++i) {
        if (all[i].is_zero())
            throw Error(ErrorCode::ParameterCollision, "zero spectral parameter");
        for (size_t j = i + 1; j < all.size(); ++j) {
            if (all[i] == all[j])
                throw Error(ErrorCode::ParameterCollision, "coinciding spectral parameters");
            if (all[i] == q2 * all[j] || all[j] == q2 * all[i])
                throw Error(ErrorCode::ParameterCollision, "q^2-related spectral parameters");
        }
        for (const auto& xk : chain.xi) {
            if (all[i] == xk)
                throw Error(ErrorCode::ParameterCollision, "spectral parameter hits xi");
            if (chain.q * all[i] == chain.qinv() * xk)
                throw Error(ErrorCode::ParameterCollision, "spectral parameter hits q^-2 xi");
        }
    }
}

namespace {

// Applies T(u_1..u_M) = L^(1)(u_1)...L^(M)(u_M) R^(M..1)(u_M..u_1) to
// |aux column> x e1^N, factor by factor. Aux legs come first.
StateVector apply_trace_operand(const ChainSpec& chain, const std::vector<Scalar>& u,
                                const std::vector<int>& aux_column, bool transposed) {
    Backend bk = chain.backend();
    int M = static_cast<int>(u.size());
    int N = chain.sites;
    TensorShape full{M + N};

    uint64_t start = 0;
    for (int k = 0; k < M; ++k) start = start * 3 + aux_column[k];
    for (int s = 0; s < N; ++s) start = start * 3; // quantum part e1 = digit 0
    StateVector psi = StateVector::basis(full, start, bk);

    struct Factor {
        SparseOperator op;
        std::vector<int> legs;
    };
    std::vector<Factor> factors; // listed left to right as in the written product

    for (int k = 1; k <= M; ++k) // L^(k)(u_k): site 1 factor leftmost
        for (int s = 1; s <= N; ++s)
            factors.push_back({r_matrix(chain.q, u[k - 1], chain.xi[s - 1]), {k, M + s}});
    for (int j = M; j >= 2; --j)
        for (int i = j - 1; i >= 1; --i)
            factors.push_back({r_matrix(chain.q, u[j - 1], u[i - 1]), {j, i}});

    if (!transposed) {
        for (auto it = factors.rbegin(); it != factors.rend(); ++it)
            psi = apply_on_legs(it->op, it->legs, psi);
    } else {
        // (F1 F2 ... Fk)^T = Fk^T ... F1^T: apply in written order, transposed.
        for (auto& f : factors) psi = apply_on_legs(f.op.transpose(), f.legs, psi);
    }
    return psi;
}

Scalar trace_prefactor(const ChainSpec& chain, const BetheParams& p) {
    Scalar pref = Scalar::one(chain.backend());
    for (const auto& sj : p.second)
        for (const auto& ti : p.first) {
            Scalar den = sj - ti;
            if (den.is_zero())
                throw Error(ErrorCode::ParameterCollision, "s_j = t_i in the trace prefactor");
            pref *= (chain.q * sj - chain.qinv() * ti) / den;
        }
    return pref;
}

} // namespace

StateVector bethe_vector(const ChainSpec& chain, const BetheParams& p) {
    p.validate(chain);
    Backend bk = chain.backend();
    int a = p.a(), b = p.b();

    std::vector<Scalar> u = p.first;
    u.insert(u.end(), p.second.begin(), p.second.end());

    // tr(X E_21) = X_{1,2}: prepare column digit 1 (e2) on t-legs, digit 2 (e3)
    // on s-legs, then extract rows via the weights' column indices.
    std::vector<int> column(a + b);
    std::vector<SparseOperator> weights;
    for (int i = 0; i < a; ++i) {
        column[i] = 1;
        weights.push_back(SparseOperator::matrix_unit(2, 1, bk));
    }
    for (int j = 0; j < b; ++j) {
        column[a + j] = 2;
        weights.push_back(SparseOperator::matrix_unit(3, 2, bk));
    }

    StateVector psi = apply_trace_operand(chain, u, column, false);
    StateVector traced = weighted_aux_trace(psi, weights);
    return traced.scaled(trace_prefactor(chain, p));
}

StateVector dual_bethe_vector(const ChainSpec& chain, const BetheParams& p) {
    p.validate(chain);
    Backend bk = chain.backend();
    int a = p.a(), b = p.b();

    std::vector<Scalar> u = p.first;
    u.insert(u.end(), p.second.begin(), p.second.end());

    // tr(X E_12) = X_{2,1}: the covector is v' <alpha*|T|beta*> with
    // alpha* digits (e2..e2, e3..e3) and beta* digits (e1..e1, e2..e2);
    // computed as the transposed sandwich applied to |alpha*> x v.
    std::vector<int> alpha(a + b);
    std::vector<SparseOperator> weights; // column sums pick beta* after transposition
    for (int i = 0; i < a; ++i) {
        alpha[i] = 1;
        weights.push_back(SparseOperator::matrix_unit(2, 1, bk)); // extracts digit 0 (e1)
    }
    for (int j = 0; j < b; ++j) {
        alpha[a + j] = 2;
        weights.push_back(SparseOperator::matrix_unit(3, 2, bk)); // extracts digit 1 (e2)
    }

    StateVector psi = apply_trace_operand(chain, u, alpha, true);
    StateVector traced = weighted_aux_trace(psi, weights);

    Scalar pref = trace_prefactor(chain, p);
    return traced.scaled(pref);
}

Scalar direct_scalar_product(const ChainSpec& chain, const BetheParams& left,
                             const BetheParams& right) {
    StateVector c = dual_bethe_vector(chain, left);
    StateVector bvec = bethe_vector(chain, right);
    return StateVector::dot(c, bvec, chain.backend());
}

} // namespace qbethe
