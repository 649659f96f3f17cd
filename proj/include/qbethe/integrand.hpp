#ifndef QBETHE_INTEGRAND_HPP
#define QBETHE_INTEGRAND_HPP

#include <map>
#include <optional>
#include <vector>

#include "qbethe/rational_function.hpp"
#include "qbethe/scalar.hpp"

namespace qbethe {

// Linear form c0 + sum_v c_v * var_v over integration variables.
struct LinearForm {
    Scalar c0;
    std::map<int, Scalar> coef; // variable id -> coefficient

    explicit LinearForm(Scalar constant = Scalar(0)) : c0(std::move(constant)) {}
    static LinearForm variable(int v, Backend bk) {
        LinearForm f(Scalar::zero(bk));
        f.coef[v] = Scalar::one(bk);
        return f;
    }

    bool is_constant() const { return coef.empty(); }
    bool is_identically_zero() const { return coef.empty() && c0.is_zero(); }
    bool depends_on(int v) const { return coef.count(v) > 0; }
    Scalar coeff_of(int v, Backend bk) const {
        auto it = coef.find(v);
        return it == coef.end() ? Scalar::zero(bk) : it->second;
    }

    void prune() {
        for (auto it = coef.begin(); it != coef.end();)
            it = it->second.is_zero() ? coef.erase(it) : std::next(it);
    }

    LinearForm scaled(const Scalar& s) const {
        LinearForm r(c0 * s);
        for (const auto& [v, c] : coef) r.coef[v] = c * s;
        r.prune();
        return r;
    }
    friend LinearForm operator+(const LinearForm& a, const LinearForm& b) {
        LinearForm r = a;
        r.c0 += b.c0;
        for (const auto& [v, c] : b.coef) {
            auto [it, fresh] = r.coef.emplace(v, c);
            if (!fresh) it->second += c;
        }
        r.prune();
        return r;
    }
    // Substitute var v by the (v-free) linear form `value`.
    LinearForm substituted(int v, const LinearForm& value) const {
        LinearForm r = *this;
        auto it = r.coef.find(v);
        if (it == r.coef.end()) return r;
        Scalar cv = it->second;
        r.coef.erase(it);
        return r + value.scaled(cv);
    }
    friend bool operator==(const LinearForm& a, const LinearForm& b) {
        return a.c0 == b.c0 && a.coef == b.coef;
    }
};

enum class AtomOrigin { Kernel, Pairing, Antisym, Psi, Measure };

// (num/den)^pow with linear-form numerator and denominator, pow >= 1.
struct Atom {
    LinearForm num, den;
    int pow = 1;
    AtomOrigin origin = AtomOrigin::Kernel;
};

// One product term: coeff * prod atoms.
struct Term {
    Scalar coeff;
    std::vector<Atom> atoms;

    void push(const LinearForm& num, const LinearForm& den, int pow = 1,
              AtomOrigin origin = AtomOrigin::Kernel);
    // Fold a constant-valued atom directly into the coefficient when possible.
    void push_value(const Scalar& num, const Scalar& den);
};

// Sum of terms in a fixed set of integration variables, one of which is
// eliminated at a time by residue extraction.
struct FormalIntegrand {
    Backend backend = Backend::Rational;
    std::vector<Term> terms;

    bool depends_on(int v) const;
    // Exact value once no variables remain.
    Scalar value() const;
};

// Location classes a pole can fall into during elimination; whitelists are
// expressed against these classes.
enum class PoleClass {
    SFamily,   // s_1..s_b
    SigmaFamily,
    TFamily,   // t_1..t_a
    TauFamily,
    Cross,     // coincides with another integration variable (bound or free)
    PairShift, // q^-2 shifted pole of an inverted pairing factor
    Psi,       // q^-2 xi_k, poles of the weight-function factors
    TwistShift,// q^{+-2} shifted points from Sym twist denominators
    Zero,
    Other,
};

struct PoleTable {
    std::vector<Scalar> s, sigma, t, tau, psi_poles;
    std::vector<Scalar> bound; // values already substituted for variables
    Scalar q{1};

    PoleClass classify_constant(const Scalar& p) const;
};

// Residue engine over one variable. For every term, poles of the term in `v`
// are grouped by location, filtered through `keep`, and the corresponding
// Laurent residues of term/v are accumulated symbolically over the remaining
// variables. `sign` multiplies every contribution.
std::vector<Term> eliminate_variable(const std::vector<Term>& terms, int v, Backend bk,
                                     const PoleTable& table,
                                     const std::vector<PoleClass>& keep, int sign,
                                     std::vector<Scalar>* visited_poles = nullptr);

// ---- Public single-variable operations (spec shapes) ----

// Candidate pole locations of a fully bound integrand (den roots of its atoms).
std::vector<Scalar> candidate_poles(const FormalIntegrand& f, int v);

struct PoleWhitelist {
    std::vector<Scalar> poles;
};

// Zero-mode extraction: sum over whitelisted poles of the coefficient A_p in
// the 1/(1-z/p) partial-fraction basis, i.e. -Res_{z=p} f(z)/z. Matches the
// geometric-series zero mode: 1/(1-z/s) with whitelist {s} gives 1.
// Poles must be simple; HigherOrderPole / PoleNotCandidate otherwise.
Scalar formal_contour_integral(const FormalIntegrand& f, int v, const PoleWhitelist& wl);

// Collapse a one-variable integrand to a univariate rational function.
UnivariateRationalFunction collapse_to_rational(const FormalIntegrand& f, int v);

} // namespace qbethe

#endif
