#include "qbethe/tensor.hpp"

#include <unordered_map>

namespace qbethe {

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    if (!(a.shape() == b.shape()))
        throw Error(ErrorCode::ShapeMismatch, "operator composition shape mismatch");
    // Index b's rows for the contraction.
    std::unordered_map<uint64_t, std::vector<std::pair<uint64_t, const Scalar*>>> rows;
    for (const auto& [k, v] : b.entries()) rows[k.first].push_back({k.second, &v});
    SparseOperator r(a.shape());
    for (const auto& [k, v] : a.entries()) {
        auto it = rows.find(k.second);
        if (it == rows.end()) continue;
        for (const auto& [col, bv] : it->second) r.add(k.first, col, v * (*bv));
    }
    return r;
}

SparseOperator SparseOperator::tensor(const SparseOperator& other) const {
    TensorShape sh{shape_.legs + other.shape_.legs};
    uint64_t od = other.shape_.dim();
    SparseOperator r(sh);
    for (const auto& [k1, v1] : m_)
        for (const auto& [k2, v2] : other.m_)
            r.add(k1.first * od + k2.first, k1.second * od + k2.second, v1 * v2);
    return r;
}

StateVector operator+(const StateVector& a, const StateVector& b) {
    if (!(a.shape() == b.shape()))
        throw Error(ErrorCode::ShapeMismatch, "state vector addition shape mismatch");
    StateVector r = a;
    for (const auto& [k, v] : b.entries()) r.add(k, v);
    return r;
}

bool operator==(const StateVector& a, const StateVector& b) {
    return a.shape() == b.shape() && a.entries() == b.entries();
}

Scalar StateVector::dot(const StateVector& a, const StateVector& b, Backend bk) {
    if (!(a.shape() == b.shape()))
        throw Error(ErrorCode::ShapeMismatch, "dot product shape mismatch");
    Scalar acc = Scalar::zero(bk);
    const auto& small = a.entries().size() <= b.entries().size() ? a : b;
    const auto& big = a.entries().size() <= b.entries().size() ? b : a;
    for (const auto& [k, v] : small.entries()) {
        auto it = big.entries().find(k);
        if (it != big.entries().end()) acc += v * it->second;
    }
    return acc;
}

StateVector apply_on_legs(const SparseOperator& A, const std::vector<int>& legs,
                          const StateVector& psi) {
    const TensorShape& sh = psi.shape();
    if (A.shape().legs != static_cast<int>(legs.size()))
        throw Error(ErrorCode::ShapeMismatch, "operator leg count != leg list length");
    for (size_t i = 0; i < legs.size(); ++i) {
        if (legs[i] < 1 || legs[i] > sh.legs)
            throw Error(ErrorCode::ShapeMismatch, "leg position out of range");
        for (size_t j = i + 1; j < legs.size(); ++j)
            if (legs[i] == legs[j])
                throw Error(ErrorCode::ShapeMismatch, "duplicate leg position");
    }
    // Column-indexed view of A over its own (small) shape.
    TensorShape sub{static_cast<int>(legs.size())};
    std::unordered_map<uint64_t, std::vector<std::pair<uint64_t, const Scalar*>>> cols;
    for (const auto& [k, v] : A.entries()) cols[k.second].push_back({k.first, &v});

    StateVector out(sh);
    for (const auto& [idx, val] : psi.entries()) {
        uint64_t sub_col = 0;
        for (size_t i = 0; i < legs.size(); ++i)
            sub_col = sub_col * 3 + sh.digit(idx, legs[i]);
        auto it = cols.find(sub_col);
        if (it == cols.end()) continue;
        for (const auto& [sub_row, av] : it->second) {
            uint64_t nidx = idx;
            uint64_t sr = sub_row;
            for (size_t i = legs.size(); i-- > 0;) {
                nidx = sh.with_digit(nidx, legs[i], static_cast<int>(sr % 3));
                sr /= 3;
            }
            out.add(nidx, val * (*av));
        }
    }
    return out;
}

SparseOperator embed_on_legs(const SparseOperator& A, const std::vector<int>& legs,
                             TensorShape target) {
    SparseOperator out(target);
    for (uint64_t col = 0; col < target.dim(); ++col) {
        StateVector e = StateVector::basis(target, col,
                                           A.entries().empty()
                                               ? Backend::Rational
                                               : A.entries().begin()->second.backend());
        StateVector img = apply_on_legs(A, legs, e);
        for (const auto& [row, v] : img.entries()) out.add(row, col, v);
    }
    return out;
}

StateVector weighted_aux_trace(const StateVector& psi,
                               const std::vector<SparseOperator>& weights) {
    int M = static_cast<int>(weights.size());
    const TensorShape& sh = psi.shape();
    if (M > sh.legs) throw Error(ErrorCode::ShapeMismatch, "more weights than legs");
    for (const auto& w : weights)
        if (w.shape().legs != 1)
            throw Error(ErrorCode::ShapeMismatch, "weights must be single-leg operators");
    int N = sh.legs - M;
    TensorShape qsh{N};
    uint64_t qdim = qsh.dim();

    Backend bk = Backend::Rational;
    if (!psi.entries().empty()) bk = psi.entries().begin()->second.backend();

    // Column sums of each weight: sum_beta (w)_{beta,alpha}.
    std::vector<std::array<Scalar, 3>> colsum(M);
    for (int k = 0; k < M; ++k) {
        for (int a = 0; a < 3; ++a) colsum[k][a] = Scalar::zero(bk);
        for (const auto& [key, v] : weights[k].entries()) colsum[k][key.second] += v;
    }

    StateVector out(qsh);
    for (const auto& [idx, val] : psi.entries()) {
        uint64_t quantum = idx % qdim;
        uint64_t aux = idx / qdim;
        Scalar coef = val;
        bool dead = false;
        for (int k = M; k-- > 0;) {
            int alpha = static_cast<int>(aux % 3);
            aux /= 3;
            const Scalar& c = colsum[k][alpha];
            if (c.is_zero()) {
                dead = true;
                break;
            }
            coef *= c;
        }
        if (!dead) out.add(quantum, coef);
    }
    return out;
}

} // namespace qbethe
