#include "qbethe/integrand.hpp"

#include <algorithm>

namespace qbethe {

void Term::push(const LinearForm& num, const LinearForm& den, int pow, AtomOrigin origin) {
    if (pow == 0) return;
    if (pow < 0) {
        push(den, num, -pow, origin);
        return;
    }
    if (num.is_constant() && den.is_constant()) {
        for (int i = 0; i < pow; ++i) push_value(num.c0, den.c0);
        return;
    }
    // Merge with an existing atom when the ratio matches exactly.
    for (auto& a : atoms) {
        if (a.num == num && a.den == den && a.origin == origin) {
            a.pow += pow;
            return;
        }
    }
    atoms.push_back({num, den, pow, origin});
}

void Term::push_value(const Scalar& num, const Scalar& den) {
    if (den.is_zero()) throw Error(ErrorCode::ParameterCollision, "constant atom with zero denominator");
    coeff *= num / den;
}

bool FormalIntegrand::depends_on(int v) const {
    for (const auto& t : terms)
        for (const auto& a : t.atoms)
            if (a.num.depends_on(v) || a.den.depends_on(v)) return true;
    return false;
}

Scalar FormalIntegrand::value() const {
    Scalar acc = Scalar::zero(backend);
    for (const auto& t : terms) {
        Scalar v = t.coeff;
        for (const auto& a : t.atoms) {
            if (!a.num.is_constant() || !a.den.is_constant())
                throw Error(ErrorCode::ConfigError, "value() on an unbound integrand");
            if (a.den.c0.is_zero())
                throw Error(ErrorCode::ParameterCollision, "zero denominator at evaluation");
            v *= (a.num.c0 / a.den.c0).pow(a.pow);
        }
        acc += v;
    }
    return acc;
}

PoleClass PoleTable::classify_constant(const Scalar& p) const {
    if (p.is_zero()) return PoleClass::Zero;
    auto in = [&](const std::vector<Scalar>& fam) {
        for (const auto& f : fam)
            if (f == p) return true;
        return false;
    };
    if (in(s)) return PoleClass::SFamily;
    if (in(sigma)) return PoleClass::SigmaFamily;
    if (in(t)) return PoleClass::TFamily;
    if (in(tau)) return PoleClass::TauFamily;
    if (in(bound)) return PoleClass::Cross;
    if (in(psi_poles)) return PoleClass::Psi;
    Scalar q2 = q * q;
    auto shifted = [&](const std::vector<Scalar>& fam) {
        for (const auto& f : fam)
            if (p == q2 * f || f == q2 * p) return true;
        return false;
    };
    if (shifted(s) || shifted(sigma) || shifted(t) || shifted(tau) || shifted(bound))
        return PoleClass::TwistShift;
    return PoleClass::Other;
}

namespace {

// Truncated power series in u whose coefficients are sums of symbolic terms.
struct TermSeries {
    std::vector<std::vector<Term>> coef; // coef[k] = terms of u^k

    explicit TermSeries(int order) : coef(order + 1) {}

    static TermSeries unit(int order, Backend bk) {
        TermSeries s(order);
        Term one;
        one.coeff = Scalar::one(bk);
        s.coef[0].push_back(one);
        return s;
    }

    void multiply_in(const TermSeries& o) {
        int K = static_cast<int>(coef.size()) - 1;
        std::vector<std::vector<Term>> out(K + 1);
        for (int i = 0; i <= K; ++i) {
            if (coef[i].empty()) continue;
            for (int j = 0; i + j <= K; ++j) {
                for (const auto& t1 : coef[i])
                    for (const auto& t2 : o.coef[j]) {
                        Term prod;
                        prod.coeff = t1.coeff * t2.coeff;
                        prod.atoms = t1.atoms;
                        for (const auto& a : t2.atoms) prod.push(a.num, a.den, a.pow, a.origin);
                        out[i + j].push_back(std::move(prod));
                    }
            }
        }
        coef = std::move(out);
    }
};

// Series of one atom (N/D)^pow around v = p + u, to the given order.
// N, D are linear in v; p is a v-free linear form. Requires D(p) != 0
// structurally (den not vanishing identically at p).
TermSeries atom_series(const Atom& a, int v, const LinearForm& p, int order, Backend bk) {
    LinearForm n0 = a.num.substituted(v, p);
    Scalar n1 = a.num.coeff_of(v, bk);
    LinearForm d0 = a.den.substituted(v, p);
    Scalar d1 = a.den.coeff_of(v, bk);
    if (d0.is_identically_zero())
        throw Error(ErrorCode::ConfigError, "atom_series called on a singular atom");

    // base = (n0 + n1 u) * (1/d0) * sum_k (-d1/d0)^k u^k
    TermSeries base(order);
    Scalar minus_d1 = -d1;
    for (int k = 0; k <= order; ++k) {
        // u^k coefficient of 1/(d0 + d1 u): (-d1)^k / d0^{k+1}
        Term t0;
        t0.coeff = minus_d1.pow(k);
        t0.push(LinearForm(Scalar::one(bk)), d0, k + 1, a.origin);
        if (!n0.is_identically_zero()) {
            Term tn = t0;
            tn.push(n0, LinearForm(Scalar::one(bk)), 1, a.origin);
            base.coef[k].push_back(std::move(tn));
        }
        if (!n1.is_zero() && k + 1 <= order) {
            Term tn = t0;
            tn.coeff *= n1;
            base.coef[k + 1].push_back(std::move(tn));
        }
    }
    TermSeries acc = TermSeries::unit(order, bk);
    for (int i = 0; i < a.pow; ++i) acc.multiply_in(base);
    return acc;
}

// Series of the stripped singular part (n0 + n1 u)^pow where the atom's
// denominator was c*(v - p) (handled by the caller).
TermSeries stripped_numerator_series(const LinearForm& n0, const Scalar& n1, int pow, int order,
                                     Backend bk) {
    TermSeries base(order);
    if (!n0.is_identically_zero()) {
        Term t;
        t.coeff = Scalar::one(bk);
        t.push(n0, LinearForm(Scalar::one(bk)), 1);
        base.coef[0].push_back(std::move(t));
    }
    if (!n1.is_zero() && order >= 1) {
        Term t;
        t.coeff = n1;
        base.coef[1].push_back(std::move(t));
    }
    TermSeries acc = TermSeries::unit(order, bk);
    for (int i = 0; i < pow; ++i) acc.multiply_in(base);
    return acc;
}

} // namespace

std::vector<Term> eliminate_variable(const std::vector<Term>& terms, int v, Backend bk,
                                     const PoleTable& table, const std::vector<PoleClass>& keep,
                                     int sign, std::vector<Scalar>* visited_poles) {
    auto kept = [&](PoleClass c) {
        return std::find(keep.begin(), keep.end(), c) != keep.end();
    };
    std::vector<Term> out;

    for (const auto& term : terms) {
        // Attach the dz/z measure.
        Term work = term;
        work.push(LinearForm(Scalar::one(bk)), LinearForm::variable(v, bk), 1,
                  AtomOrigin::Measure);

        // Partition the atoms of this term.
        std::vector<Atom> free_atoms;   // no v dependence
        std::vector<Atom> dep_regular;  // v in numerator only
        struct SingularGroup {
            LinearForm pole;            // v = pole (v-free linear form)
            std::vector<Atom> atoms;    // den vanishes at v = pole
        };
        std::vector<SingularGroup> groups;

        for (const auto& a : work.atoms) {
            bool dep = a.num.depends_on(v) || a.den.depends_on(v);
            if (!dep) {
                free_atoms.push_back(a);
                continue;
            }
            if (!a.den.depends_on(v)) {
                dep_regular.push_back(a);
                continue;
            }
            Scalar dv = a.den.coeff_of(v, bk);
            LinearForm rest = a.den;
            rest.coef.erase(v);
            LinearForm pole = rest.scaled(-(dv.inverse())); // v = -rest/dv
            bool merged = false;
            for (auto& g : groups)
                if (g.pole == pole) {
                    g.atoms.push_back(a);
                    merged = true;
                    break;
                }
            if (!merged) groups.push_back({pole, {a}});
        }

        for (const auto& g : groups) {
            // Classify the pole location. Atom origins take precedence where
            // the location alone is ambiguous (all q^{+-2}-shifted points).
            PoleClass cls;
            bool has_pairing = false, has_psi = false, has_measure = false, has_antisym = false;
            for (const auto& a : g.atoms) {
                has_pairing |= a.origin == AtomOrigin::Pairing;
                has_psi |= a.origin == AtomOrigin::Psi;
                has_measure |= a.origin == AtomOrigin::Measure;
                has_antisym |= a.origin == AtomOrigin::Antisym;
            }
            if (has_measure) {
                cls = PoleClass::Zero;
            } else if (has_psi) {
                cls = PoleClass::Psi;
            } else if (has_pairing) {
                cls = PoleClass::PairShift;
            } else if (has_antisym) {
                cls = PoleClass::TwistShift;
            } else if (g.pole.is_constant()) {
                cls = table.classify_constant(g.pole.c0);
            } else if (g.pole.coef.size() == 1 && g.pole.c0.is_zero()) {
                Scalar c = g.pole.coef.begin()->second;
                Scalar q2 = table.q * table.q;
                if (c == Scalar::one(bk)) cls = PoleClass::Cross;
                else if (c == q2 || c == q2.inverse()) cls = PoleClass::TwistShift;
                else cls = PoleClass::Other;
            } else {
                cls = PoleClass::Other;
            }
            if (!kept(cls)) continue;
            if (visited_poles && g.pole.is_constant()) visited_poles->push_back(g.pole.c0);

            // Residue of this term at v = pole: expand every v-dependent atom
            // around v = pole + u and pick the u^{m-1} coefficient of the
            // regular product (singular denominators contribute u^{-m}).
            int m = 0;
            Scalar strip_const = Scalar::one(bk);
            TermSeries numer = TermSeries::unit(0, bk); // rebuilt below with the right order

            // First pass: effective multiplicity (numerators vanishing at the
            // pole cancel whole powers since everything is linear).
            struct Stripped {
                LinearForm n0;
                Scalar n1;
                int pow;
            };
            std::vector<Stripped> stripped;
            bool dead = false;
            for (const auto& a : g.atoms) {
                LinearForm n0 = a.num.substituted(v, g.pole);
                Scalar n1 = a.num.coeff_of(v, bk);
                Scalar dv = a.den.coeff_of(v, bk);
                strip_const *= dv.pow(-a.pow);
                if (n0.is_identically_zero()) {
                    // (n1 u)^pow / (dv u)^pow = (n1/dv)^pow: fully cancels.
                    if (n1.is_zero()) { dead = true; break; } // zero numerator
                    strip_const *= n1.pow(a.pow);
                } else {
                    stripped.push_back({n0, n1, a.pow});
                    m += a.pow;
                }
            }
            if (dead || m == 0) continue; // not actually a pole after cancellation

            int order = m - 1;
            numer = TermSeries::unit(order, bk);
            for (const auto& st : stripped)
                numer.multiply_in(stripped_numerator_series(st.n0, st.n1, st.pow, order, bk));
            for (const auto& a : dep_regular) numer.multiply_in(atom_series(a, v, g.pole, order, bk));
            // Atoms singular at other poles of this term are regular here:
            for (const auto& og : groups) {
                if (&og == &g) continue;
                for (const auto& a : og.atoms) numer.multiply_in(atom_series(a, v, g.pole, order, bk));
            }

            for (const auto& piece : numer.coef[order]) {
                Term res;
                res.coeff = term.coeff * piece.coeff * strip_const *
                            (sign >= 0 ? Scalar::one(bk) : -Scalar::one(bk));
                res.atoms = free_atoms;
                for (const auto& a : piece.atoms) res.push(a.num, a.den, a.pow, a.origin);
                // Fold constant atoms.
                std::vector<Atom> keep_atoms;
                for (const auto& a : res.atoms) {
                    if (a.num.is_constant() && a.den.is_constant()) {
                        if (a.den.c0.is_zero())
                            throw Error(ErrorCode::ParameterCollision, "constant zero denominator");
                        res.coeff *= (a.num.c0 / a.den.c0).pow(a.pow);
                    } else {
                        keep_atoms.push_back(a);
                    }
                }
                res.atoms = std::move(keep_atoms);
                if (!res.coeff.is_zero()) out.push_back(std::move(res));
            }
        }
    }
    return out;
}

std::vector<Scalar> candidate_poles(const FormalIntegrand& f, int v) {
    std::vector<Scalar> poles;
    for (const auto& t : f.terms)
        for (const auto& a : t.atoms) {
            if (!a.den.depends_on(v)) continue;
            LinearForm rest = a.den;
            Scalar dv = rest.coef.at(v);
            rest.coef.erase(v);
            if (!rest.is_constant())
                throw Error(ErrorCode::ConfigError, "candidate_poles needs a fully bound integrand");
            Scalar p = -(rest.c0 / dv);
            bool seen = false;
            for (const auto& e : poles)
                if (e == p) { seen = true; break; }
            if (!seen) poles.push_back(p);
        }
    return poles;
}

UnivariateRationalFunction collapse_to_rational(const FormalIntegrand& f, int v) {
    Backend bk = f.backend;
    Polynomial num = Polynomial();
    Polynomial den = Polynomial::constant(Scalar::one(bk));
    for (const auto& t : f.terms) {
        Polynomial tn = Polynomial::constant(t.coeff);
        Polynomial td = Polynomial::constant(Scalar::one(bk));
        for (const auto& a : t.atoms) {
            if ((a.num.depends_on(v) && a.num.coef.size() > 1) ||
                (a.den.depends_on(v) && a.den.coef.size() > 1) ||
                (!a.num.depends_on(v) && !a.num.is_constant()) ||
                (!a.den.depends_on(v) && !a.den.is_constant()))
                throw Error(ErrorCode::ConfigError, "collapse needs a fully bound integrand");
            Polynomial pn = a.num.depends_on(v)
                                ? Polynomial::linear(a.num.c0, a.num.coef.at(v))
                                : Polynomial::constant(a.num.c0);
            Polynomial pd = a.den.depends_on(v)
                                ? Polynomial::linear(a.den.c0, a.den.coef.at(v))
                                : Polynomial::constant(a.den.c0);
            for (int k = 0; k < a.pow; ++k) {
                tn = tn * pn;
                td = td * pd;
            }
        }
        // num/den += tn/td
        num = num * td + tn * den;
        den = den * td;
    }
    return UnivariateRationalFunction(num, den, "v" + std::to_string(v));
}

Scalar formal_contour_integral(const FormalIntegrand& f, int v, const PoleWhitelist& wl) {
    Backend bk = f.backend;
    std::vector<Scalar> cands = candidate_poles(f, v);
    UnivariateRationalFunction rf = collapse_to_rational(f, v);
    // f(z)/z
    UnivariateRationalFunction over_z(rf.num(),
                                      rf.den() * Polynomial::linear(Scalar::zero(bk),
                                                                    Scalar::one(bk)),
                                      rf.variable());
    Scalar acc = Scalar::zero(bk);
    for (const auto& p : wl.poles) {
        bool ok = false;
        for (const auto& c : cands)
            if (c == p) { ok = true; break; }
        if (!ok) throw Error(ErrorCode::PoleNotCandidate, "whitelisted point " + p.str() +
                                                              " is not a candidate pole");
        int ord = over_z.pole_order(p);
        if (ord > 1) throw Error(ErrorCode::HigherOrderPole, "pole of order > 1 at " + p.str());
        if (ord == 0) continue; // cancelled between terms
        acc += -over_z.residue(p); // zero-mode coefficient A_p
    }
    return acc;
}

} // namespace qbethe
