#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "jordan.hpp"
#include "linpoly.hpp"
#include "simplex.hpp"

namespace entroproof {

// --- Implied equalities (the members of S that vanish on all of {S >= 0}) --
//
// Build sum v_i f_i == 0 as a linear system over the multipliers v, reduce
// it to Jordan normal form to parametrize the solutions v_i = V_i, and ask
// per member whether V_k can be made positive on the cone {V_i >= 0}. A
// positive witness certifies every member whose multiplier it makes
// positive, so one LP typically settles several members at once.

struct ImpliedEqualities {
    std::vector<int> indices;  // members of S that are implied equalities, ascending
    // For each implied index, exact multipliers v >= 0 over all of S with
    // v_k > 0 and sum v_i f_i identically zero.
    std::vector<std::vector<Rational>> witnesses;
};

inline ImpliedEqualities implied_equalities_indexed(const std::vector<LinPoly>& s) {
    const int m = static_cast<int>(s.size());
    ImpliedEqualities out;
    if (m == 0) return out;

    // w_j = sum_i coeff(f_i, x_j) v_i = 0, one row per variable x_j.
    std::set<VarId> support;
    for (const auto& f : s)
        for (const auto& [v, c] : f.terms()) support.insert(v);
    std::vector<LinPoly> w_rows;
    for (VarId x : support) {
        LinPoly row;
        for (int i = 0; i < m; ++i) row.add_term(i, s[i].coeff(x));
        if (!row.is_zero()) w_rows.push_back(std::move(row));
    }
    JordanForm J = gauss_jordan(w_rows);

    std::vector<LinPoly> V(m);
    for (int i = 0; i < m; ++i) V[i] = reduce_poly(LinPoly::variable(i), J);

    std::vector<int> status(m, 0);  // 0 unknown, 1 implied, -1 not
    std::vector<std::vector<Rational>> witness_of(m);
    for (int k = 0; k < m; ++k) {
        if (status[k] != 0) continue;
        if (V[k].is_zero()) {
            status[k] = -1;
            continue;
        }
        ConeResult r = cone_positive(V[k], V);
        if (!r.positive) {
            // max V_k over the cone is 0; the same holds for every j with
            // an identical multiplier expression.
            for (int j = k; j < m; ++j)
                if (status[j] == 0 && V[j] == V[k]) status[j] = -1;
            continue;
        }
        std::vector<Rational> v(m);
        for (int i = 0; i < m; ++i) v[i] = V[i].evaluate(r.witness);
        for (int j = 0; j < m; ++j) {
            if (status[j] == 0 && v[j].sign() > 0) {
                status[j] = 1;
                witness_of[j] = v;
            }
        }
    }
    for (int k = 0; k < m; ++k) {
        if (status[k] == 1) {
            out.indices.push_back(k);
            out.witnesses.push_back(std::move(witness_of[k]));
        }
    }
    return out;
}

// Members of S returned verbatim.
inline std::vector<LinPoly> implied_equalities(const std::vector<LinPoly>& s) {
    std::vector<LinPoly> out;
    for (int k : implied_equalities_indexed(s).indices) out.push_back(s[k]);
    return out;
}

// --- Minimal characterization set ------------------------------------------

// True iff target is a conic combination of the given generators: solve the
// affine system target == sum q_i gen_i for q, then test {q_i = Q_i >= 0}.
inline bool conic_combination_exists(const LinPoly& target, const std::vector<LinPoly>& gens) {
    std::set<VarId> support;
    for (const auto& [v, c] : target.terms()) support.insert(v);
    for (const auto& g : gens)
        for (const auto& [v, c] : g.terms()) support.insert(v);
    const int m = static_cast<int>(gens.size());
    std::vector<LinPoly> rows;
    for (VarId x : support) {
        LinPoly row(target.coeff(x));
        for (int i = 0; i < m; ++i) row.add_term(i, -gens[i].coeff(x));
        if (!row.is_zero()) rows.push_back(std::move(row));
    }
    auto J = gauss_jordan_affine(rows);
    if (!J) return false;
    std::vector<LinPoly> q(m);
    for (int i = 0; i < m; ++i) q[i] = reduce_poly(LinPoly::variable(i), *J);
    return feasible(q).feasible;
}

// Collapse trivially equivalent members (positive multiples), keeping the
// earliest and normalizing the leading coefficient to +-1. source[i] maps
// each survivor back to its index in the input.
struct CollapsedSet {
    std::vector<LinPoly> polys;
    std::vector<int> source;
};

inline CollapsedSet collapse_positive_multiples(const std::vector<LinPoly>& s) {
    CollapsedSet out;
    for (int i = 0; i < static_cast<int>(s.size()); ++i) {
        if (s[i].is_zero()) continue;
        LinPoly n = s[i].normalized();
        bool seen = false;
        for (const auto& p : out.polys)
            if (p == n) {
                seen = true;
                break;
            }
        if (!seen) {
            out.polys.push_back(std::move(n));
            out.source.push_back(i);
        }
    }
    return out;
}

// Minimal characterization set: process candidates in input order; delete
// h_k as soon as it is a conic combination of the other surviving members.
// For pure inputs the result is unique up to trivial equivalence.
inline CollapsedSet minimal_characterization_indexed(const std::vector<LinPoly>& s) {
    CollapsedSet cur = collapse_positive_multiples(s);
    const int m = static_cast<int>(cur.polys.size());
    std::vector<bool> alive(m, true);
    for (int k = 0; k < m; ++k) {
        std::vector<LinPoly> others;
        for (int i = 0; i < m; ++i)
            if (alive[i] && i != k) others.push_back(cur.polys[i]);
        if (conic_combination_exists(cur.polys[k], others)) alive[k] = false;
    }
    CollapsedSet out;
    for (int i = 0; i < m; ++i) {
        if (alive[i]) {
            out.polys.push_back(cur.polys[i]);
            out.source.push_back(cur.source[i]);
        }
    }
    return out;
}

inline std::vector<LinPoly> minimal_characterization(const std::vector<LinPoly>& s) {
    return minimal_characterization_indexed(s).polys;
}

// --- Reduced minimal characterization set -----------------------------------

struct ReducedCharacterization {
    JordanForm jordan;             // Jordan normal form of the implied equalities
    std::vector<LinPoly> minimal;  // S_r': pure, no redundant member, no pivot vars
};

inline ReducedCharacterization reduced_minimal_characterization(const std::vector<LinPoly>& s) {
    ImpliedEqualities impl = implied_equalities_indexed(s);
    std::vector<LinPoly> eq_polys;
    for (int k : impl.indices) eq_polys.push_back(s[k]);
    ReducedCharacterization out;
    out.jordan = gauss_jordan(eq_polys);
    std::vector<LinPoly> remainder;
    size_t next_impl = 0;
    for (int i = 0; i < static_cast<int>(s.size()); ++i) {
        if (next_impl < impl.indices.size() && impl.indices[next_impl] == i) {
            ++next_impl;  // implied members are subtracted by identity
            continue;
        }
        LinPoly r = reduce_poly(s[i], out.jordan);
        if (!r.is_zero()) remainder.push_back(std::move(r));
    }
    out.minimal = minimal_characterization(remainder);
    return out;
}

}  // namespace entroproof
