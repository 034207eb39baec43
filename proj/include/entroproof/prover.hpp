#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atoms.hpp"
#include "certificate.hpp"
#include "jordan.hpp"
#include "linpoly.hpp"
#include "simplex.hpp"
#include "simplify.hpp"

namespace entroproof {

struct ProblemSize {
    int variables = 0;
    int equalities = 0;
    int inequalities = 0;

    int constraints() const { return equalities + inequalities; }
};

// Sizes of the three problems along the reduction: the original LP over the
// full atom universe, the problem over the free variables of the basis, and
// the final multiplier LP.
struct ProblemStats {
    ProblemSize p1, p2, p3;
};

struct Verdict {
    bool proved = false;
    std::optional<ProofCertificate> certificate;  // present iff proved
    std::string diagnostic;                       // reason when not provable

    // Intermediates of the run, in order of computation.
    JordanForm equality_basis;       // B: Jordan form of the constraint equalities
    std::vector<LinPoly> remainder;  // the reduced inequality pool (zeroes dropped)
    JordanForm basis;                // the merged Jordan form used for reduction
    std::vector<ProofCertificate::Survivor> survivors;  // S_r'
    LinPoly reduced_goal;                               // F_1
    ProblemStats stats;
};

namespace detail {

// Presentation order for S_r': fewer terms first, then lexicographically by
// the subscript sequences of the support. Matches how worked reductions list
// their surviving inequalities and makes runs reproducible byte-for-byte.
inline void sort_survivors(std::vector<ProofCertificate::Survivor>& survivors,
                           const SVarSequence& seq) {
    auto key = [&seq](const LinPoly& p) {
        std::vector<std::vector<int>> subs;
        for (const auto& [v, c] : p.terms()) subs.push_back(seq.var(v).subscripts());
        std::sort(subs.begin(), subs.end());
        return subs;
    };
    std::stable_sort(survivors.begin(), survivors.end(),
                     [&key](const auto& a, const auto& b) {
                         size_t na = a.poly.terms().size(), nb = b.poly.terms().size();
                         if (na != nb) return na < nb;
                         return key(a.poly) < key(b.poly);
                     });
}

// Shared front half of both procedures: pool the user inequalities with the
// elemental ones, reduce by the constraint equalities, split off the implied
// equalities, merge the bases, minimize the survivors, reduce the goal.
struct Pipeline {
    const SVarSequence& seq;
    Verdict v;
    std::vector<int> remainder_source;  // remainder index -> pool index
    ImpliedEqualities implied;

    Pipeline(const LinPoly& goal, const std::vector<LinPoly>& eqs,
             const std::vector<LinPoly>& user_ineqs, const SVarSequence& sequence)
        : seq(sequence) {
        std::vector<LinPoly> pool = user_ineqs;
        for (auto& e : elemental_inequalities(seq)) pool.push_back(std::move(e));

        DimensionReduction dr = dimension_reduce(pool, eqs);
        v.equality_basis = std::move(dr.jordan);
        v.remainder = std::move(dr.remainder);
        remainder_source = std::move(dr.source);

        implied = implied_equalities_indexed(v.remainder);
        std::vector<LinPoly> merged = v.equality_basis.row_polys();
        for (int k : implied.indices) merged.push_back(v.remainder[k]);
        v.basis = gauss_jordan(merged);

        std::vector<LinPoly> reduced;
        std::vector<int> reduced_source;
        std::set<int> implied_set(implied.indices.begin(), implied.indices.end());
        for (int i = 0; i < static_cast<int>(v.remainder.size()); ++i) {
            if (implied_set.count(i)) continue;
            LinPoly r = reduce_poly(v.remainder[i], v.basis);
            if (!r.is_zero()) {
                reduced.push_back(std::move(r));
                reduced_source.push_back(remainder_source[i]);
            }
        }
        CollapsedSet minimal = minimal_characterization_indexed(reduced);
        for (int i = 0; i < static_cast<int>(minimal.polys.size()); ++i)
            v.survivors.push_back({minimal.polys[i], reduced_source[minimal.source[i]]});
        sort_survivors(v.survivors, seq);

        v.reduced_goal = reduce_poly(goal, v.basis);

        int universe = seq.size();
        v.stats.p1 = {universe, static_cast<int>(eqs.size()), static_cast<int>(pool.size())};
        v.stats.p2 = {universe - v.basis.rank(), 0, static_cast<int>(v.survivors.size())};
    }

    void attach_certificate(ProofCertificate::Kind kind, const std::vector<std::string>& names,
                            std::vector<Rational> conic) {
        ProofCertificate c;
        c.kind = kind;
        c.n = seq.n();
        c.variables = names;
        c.basis_rows = v.basis.row_polys();
        for (size_t i = 0; i < implied.indices.size(); ++i)
            c.implied.push_back({implied.indices[i], implied.witnesses[i]});
        c.survivors = v.survivors;
        c.conic = std::move(conic);
        c.reduced_goal = v.reduced_goal;
        v.certificate = std::move(c);
    }
};

}  // namespace detail

// Procedure for objective inequalities: reduce the goal and the constraint
// system, then search for nonnegative multipliers p with F_1 = sum p_i C_i
// by solving the multiplier system and, if free multipliers remain, one
// small LP. "Not provable" never claims falsity: it means not implied by
// the given constraints together with the elemental inequalities.
inline Verdict prove_inequality(const LinPoly& goal, const std::vector<LinPoly>& eqs,
                                const std::vector<LinPoly>& user_ineqs, const SVarSequence& seq,
                                const std::vector<std::string>& names = {}) {
    detail::Pipeline pipe(goal, eqs, user_ineqs, seq);
    Verdict& v = pipe.v;

    const auto& survivors = v.survivors;
    const int t2 = static_cast<int>(survivors.size());

    // F_2 = F_1 - sum p_i C_i == 0 as an affine system over the multipliers.
    std::set<VarId> support;
    for (const auto& [x, c] : v.reduced_goal.terms()) support.insert(x);
    for (const auto& s : survivors)
        for (const auto& [x, c] : s.poly.terms()) support.insert(x);
    std::vector<LinPoly> rows;
    for (VarId x : support) {
        LinPoly row(v.reduced_goal.coeff(x));
        for (int i = 0; i < t2; ++i) row.add_term(i, -survivors[i].poly.coeff(x));
        if (!row.is_zero()) rows.push_back(std::move(row));
    }
    auto psys = gauss_jordan_affine(rows);
    if (!psys) {
        v.diagnostic = "the reduced goal is not in the span of the surviving inequalities";
        v.stats.p3 = {0, 0, 0};
        return std::move(pipe.v);
    }

    std::vector<LinPoly> P(t2);
    std::vector<LinPoly> nonconstant;
    for (int i = 0; i < t2; ++i) {
        P[i] = reduce_poly(LinPoly::variable(i), *psys);
        if (P[i].is_constant()) {
            if (P[i].constant().sign() < 0) {
                v.diagnostic = "a multiplier is forced to the negative constant " +
                               P[i].constant().str();
                v.stats.p3 = {t2 - psys->rank(), 0, 0};
                return std::move(pipe.v);
            }
        } else {
            nonconstant.push_back(P[i]);
        }
    }
    v.stats.p3 = {t2 - psys->rank(), 0, static_cast<int>(nonconstant.size())};

    std::map<VarId, Rational> assignment;  // free multipliers; empty means all zero
    if (!nonconstant.empty()) {
        LPResult r = feasible(nonconstant);
        if (!r.feasible) {
            v.diagnostic = "no nonnegative multiplier assignment exists";
            return std::move(pipe.v);
        }
        assignment = std::move(r.witness);
    }
    std::vector<Rational> conic(t2);
    for (int i = 0; i < t2; ++i) conic[i] = P[i].evaluate(assignment);

    v.proved = true;
    pipe.attach_certificate(ProofCertificate::Kind::Inequality, names, std::move(conic));
    return std::move(pipe.v);
}

// Procedure for objective identities: same reduction, then F = 0 is proved
// iff the goal reduces to the zero polynomial under the merged basis.
inline Verdict prove_identity(const LinPoly& goal, const std::vector<LinPoly>& eqs,
                              const std::vector<LinPoly>& user_ineqs, const SVarSequence& seq,
                              const std::vector<std::string>& names = {}) {
    detail::Pipeline pipe(goal, eqs, user_ineqs, seq);
    Verdict& v = pipe.v;
    v.stats.p3 = {0, 0, 0};

    if (!v.reduced_goal.is_zero()) {
        // Any free variable in the reduced goal yields a counterassignment.
        VarId x = v.reduced_goal.leading_var();
        v.diagnostic = "the goal does not reduce to zero; setting " + seq.name(x) +
                       " = 1 and all other free variables to 0 evaluates it to " +
                       v.reduced_goal.coeff(x).str();
        return std::move(pipe.v);
    }
    v.proved = true;
    pipe.attach_certificate(ProofCertificate::Kind::Identity, names, {});
    return std::move(pipe.v);
}

}  // namespace entroproof
