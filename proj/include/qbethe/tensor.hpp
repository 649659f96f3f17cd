#ifndef QBETHE_TENSOR_HPP
#define QBETHE_TENSOR_HPP

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "qbethe/scalar.hpp"

namespace qbethe {

// Tensor product of 3-dimensional legs. Basis index is the mixed-radix-3
// integer with leg 1 as the most significant digit; digits 0,1,2 stand for
// the basis states e1,e2,e3 of a single leg.
struct TensorShape {
    int legs = 0;

    uint64_t dim() const {
        uint64_t d = 1;
        for (int i = 0; i < legs; ++i) d *= 3;
        return d;
    }
    int digit(uint64_t index, int leg) const { // leg in 1..legs
        for (int k = legs; k > leg; --k) index /= 3;
        return static_cast<int>(index % 3);
    }
    uint64_t with_digit(uint64_t index, int leg, int digit) const {
        uint64_t place = 1;
        for (int k = legs; k > leg; --k) place *= 3;
        int old = this->digit(index, leg);
        return index + (static_cast<uint64_t>(digit) - old) * place;
    }
    friend bool operator==(const TensorShape& a, const TensorShape& b) {
        return a.legs == b.legs;
    }
};

// Sparse linear map on a tensor product of 3-dimensional legs.
class SparseOperator {
public:
    using Key = std::pair<uint64_t, uint64_t>; // (row, col)

    SparseOperator() = default;
    explicit SparseOperator(TensorShape shape) : shape_(shape) {}

    static SparseOperator identity(TensorShape shape, Backend b = Backend::Rational) {
        SparseOperator op(shape);
        for (uint64_t i = 0; i < shape.dim(); ++i) op.add(i, i, Scalar::one(b));
        return op;
    }
    // Matrix unit E_{ij} on a single leg (1-based matrix indices).
    static SparseOperator matrix_unit(int i, int j, Backend b = Backend::Rational) {
        SparseOperator op(TensorShape{1});
        op.add(i - 1, j - 1, Scalar::one(b));
        return op;
    }

    const TensorShape& shape() const { return shape_; }
    const std::map<Key, Scalar>& entries() const { return m_; }
    bool empty() const { return m_.empty(); }

    void add(uint64_t row, uint64_t col, const Scalar& v) {
        auto it = m_.find({row, col});
        if (it == m_.end()) {
            if (!v.is_negligible()) m_.emplace(Key{row, col}, v);
        } else {
            it->second += v;
            if (it->second.is_negligible()) m_.erase(it);
        }
    }
    Scalar entry(uint64_t row, uint64_t col, Backend b = Backend::Rational) const {
        auto it = m_.find({row, col});
        return it == m_.end() ? Scalar::zero(b) : it->second;
    }

    SparseOperator transpose() const {
        SparseOperator t(shape_);
        for (const auto& [k, v] : m_) t.add(k.second, k.first, v);
        return t;
    }
    SparseOperator scaled(const Scalar& s) const {
        SparseOperator t(shape_);
        for (const auto& [k, v] : m_) t.add(k.first, k.second, v * s);
        return t;
    }
    friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
        SparseOperator r = a;
        for (const auto& [k, v] : b.m_) r.add(k.first, k.second, v);
        return r;
    }
    friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
        SparseOperator r = a;
        for (const auto& [k, v] : b.m_) r.add(k.first, k.second, -v);
        return r;
    }
    // Composition a∘b (b applied first).
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);

    SparseOperator tensor(const SparseOperator& other) const;

    double max_abs() const {
        double m = 0;
        for (const auto& [k, v] : m_) m = std::max(m, v.abs_double());
        return m;
    }
    Scalar max_abs_scalar(Backend b) const {
        Scalar m = Scalar::zero(b);
        for (const auto& [k, v] : m_) {
            Scalar a = v.abs_scalar();
            if (a.abs_double() > m.abs_double()) m = a;
        }
        return m;
    }

private:
    TensorShape shape_;
    std::map<Key, Scalar> m_;
};

// Sparse vector (or covector, by context) on a tensor product of 3-dim legs.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(TensorShape shape) : shape_(shape) {}

    static StateVector basis(TensorShape shape, uint64_t index, Backend b = Backend::Rational) {
        StateVector v(shape);
        v.add(index, Scalar::one(b));
        return v;
    }

    const TensorShape& shape() const { return shape_; }
    const std::map<uint64_t, Scalar>& entries() const { return m_; }
    bool is_zero() const { return m_.empty(); }

    void add(uint64_t index, const Scalar& v) {
        auto it = m_.find(index);
        if (it == m_.end()) {
            if (!v.is_negligible()) m_.emplace(index, v);
        } else {
            it->second += v;
            if (it->second.is_negligible()) m_.erase(it);
        }
    }
    Scalar entry(uint64_t index, Backend b = Backend::Rational) const {
        auto it = m_.find(index);
        return it == m_.end() ? Scalar::zero(b) : it->second;
    }

    StateVector scaled(const Scalar& s) const {
        StateVector r(shape_);
        for (const auto& [k, v] : m_) r.add(k, v * s);
        return r;
    }
    friend StateVector operator+(const StateVector& a, const StateVector& b);
    friend bool operator==(const StateVector& a, const StateVector& b);

    // Plain bilinear contraction sum_i a_i b_i (no conjugation).
    static Scalar dot(const StateVector& a, const StateVector& b, Backend bk);

private:
    TensorShape shape_;
    std::map<uint64_t, Scalar> m_;
};

// Embed operator A on the named legs (1-based, distinct) of psi; identity elsewhere.
StateVector apply_on_legs(const SparseOperator& A, const std::vector<int>& legs,
                          const StateVector& psi);

// Operator version of the same embedding, for relation checks on small spaces.
SparseOperator embed_on_legs(const SparseOperator& A, const std::vector<int>& legs,
                             TensorShape target);

// Contract the first M legs of psi against single-leg weight matrices:
// result = sum over aux digits of prod_k (column sum of weight_k at digit alpha_k)
// times the quantum component, realizing tr(X E_ij) = X_{j,i} per aux leg when
// psi was prepared on the matching aux column.
StateVector weighted_aux_trace(const StateVector& psi, const std::vector<SparseOperator>& weights);

} // namespace qbethe

#endif
