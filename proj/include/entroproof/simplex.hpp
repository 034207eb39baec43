#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "atoms.hpp"
#include "jordan.hpp"
#include "linpoly.hpp"

namespace entroproof {

// Result of an affine feasibility query over constraints poly >= 0.
// Feasible results carry an exact witness; infeasible results carry an
// exact Farkas certificate: multipliers y >= 0 with sum y_i * poly_i equal
// to a negative constant.
struct LPResult {
    bool feasible = false;
    std::map<VarId, Rational> witness;  // variable -> value
    std::vector<Rational> farkas;       // one multiplier per input constraint
    long pivots = 0;
};

// Phase-I simplex with Bland's rule on exact rationals.
//
// Free variables are split x = u - w, each constraint a.x + b >= 0 becomes
// a row of the standard-form system with a slack, and artificials are added
// only for rows violated at the origin. Bland's rule (lowest eligible index
// entering; lowest basic index on ratio ties) guarantees termination.
class Simplex {
public:
    static LPResult feasible(const std::vector<LinPoly>& constraints) {
        Simplex s(constraints);
        return s.solve();
    }

private:
    explicit Simplex(const std::vector<LinPoly>& constraints) : cs_(constraints) {
        for (const auto& c : cs_)
            for (const auto& [v, coef] : c.terms())
                if (col_of_var_.emplace(v, 0).second) vars_.push_back(v);
        int idx = 0;
        for (VarId v : vars_) col_of_var_[v] = idx++;
        nv_ = static_cast<int>(vars_.size());
        m_ = static_cast<int>(cs_.size());
    }

    LPResult solve() {
        // Columns: [u_0..u_{nv-1}, w_0..w_{nv-1}, s_0..s_{m-1}, artificials...]
        int slack0 = 2 * nv_;
        int art0 = slack0 + m_;
        int n_art = 0;
        std::vector<int> art_col(m_, -1), row_sign(m_, 1);
        for (int i = 0; i < m_; ++i) {
            if (cs_[i].constant().sign() < 0) {
                art_col[i] = art0 + n_art++;
            } else {
                row_sign[i] = -1;  // negate so the slack is basic at the constant
            }
        }
        int ncols = art0 + n_art;

        // Tableau rows: coefficients over all columns plus RHS (last entry).
        std::vector<std::vector<Rational>> T(m_, std::vector<Rational>(ncols + 1));
        std::vector<int> basis(m_);
        for (int i = 0; i < m_; ++i) {
            Rational sgn(row_sign[i]);
            for (const auto& [v, c] : cs_[i].terms()) {
                int j = col_of_var_[v];
                T[i][j] = sgn * c;
                T[i][nv_ + j] = -T[i][j];
            }
            T[i][slack0 + i] = -sgn;  // a.x - s = -b, then optionally negated
            T[i][ncols] = Rational(-row_sign[i]) * cs_[i].constant();
            if (art_col[i] >= 0) {
                T[i][art_col[i]] = Rational(1);
                basis[i] = art_col[i];
            } else {
                basis[i] = slack0 + i;
            }
        }

        // Phase-I objective: minimize the sum of artificials. Reduced-cost
        // row z[j] = c_j - y.A_j with y = c_B B^-1; initially c_B is 1 on
        // artificial rows.
        std::vector<Rational> z(ncols + 1);
        for (int j = 0; j <= ncols; ++j) {
            Rational acc(0);
            for (int i = 0; i < m_; ++i)
                if (art_col[i] >= 0) acc += T[i][j];
            z[j] = -acc;
        }
        for (int i = 0; i < m_; ++i)
            if (art_col[i] >= 0) z[art_col[i]] += Rational(1);

        LPResult res;
        while (true) {
            // Bland: entering = lowest column with negative reduced cost.
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                if (z[j].sign() < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) break;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m_; ++i) {
                if (T[i][enter].sign() <= 0) continue;
                Rational ratio = T[i][ncols] / T[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0)
                throw std::logic_error("simplex: phase-I objective unbounded");  // impossible
            pivot(T, z, basis, leave, enter, ncols);
            ++res.pivots;
        }

        // Optimal value of the phase-I objective is -z[rhs].
        Rational value = -z[ncols];
        if (value.sign() > 0) {
            res.feasible = false;
            res.farkas = extract_farkas(z, art_col, row_sign, slack0);
            return res;
        }
        res.feasible = true;
        std::vector<Rational> colval(ncols);
        for (int i = 0; i < m_; ++i) colval[basis[i]] = T[i][ncols];
        for (int j = 0; j < nv_; ++j) {
            Rational x = colval[j] - colval[nv_ + j];
            if (!x.is_zero()) res.witness[vars_[j]] = x;
        }
        return res;
    }

    void pivot(std::vector<std::vector<Rational>>& T, std::vector<Rational>& z,
               std::vector<int>& basis, int r, int c, int ncols) {
        Rational inv = T[r][c].inverse();
        for (int j = 0; j <= ncols; ++j) T[r][j] *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == r || T[i][c].is_zero()) continue;
            Rational f = T[i][c];
            for (int j = 0; j <= ncols; ++j) T[i][j] -= f * T[r][j];
        }
        if (!z[c].is_zero()) {
            Rational f = z[c];
            for (int j = 0; j <= ncols; ++j) z[j] -= f * T[r][j];
        }
        basis[r] = c;
    }

    // Dual multipliers read off the reduced costs of the per-row unit
    // columns, mapped back to multipliers on the original constraints.
    std::vector<Rational> extract_farkas(const std::vector<Rational>& z,
                                         const std::vector<int>& art_col,
                                         const std::vector<int>& row_sign, int slack0) const {
        std::vector<Rational> lambda(m_);
        for (int i = 0; i < m_; ++i) {
            if (art_col[i] >= 0) {
                lambda[i] = Rational(1) - z[art_col[i]];  // y_i; row not negated
            } else {
                lambda[i] = z[slack0 + i];  // y_i = -z_s; negated row flips sign
            }
        }
        return lambda;
    }

    std::vector<LinPoly> cs_;
    std::map<VarId, int> col_of_var_;
    std::vector<VarId> vars_;
    int nv_ = 0;
    int m_ = 0;
};

inline LPResult feasible(const std::vector<LinPoly>& constraints) {
    LPResult r = Simplex::feasible(constraints);
    // Exactness checks: a witness satisfies every constraint; a Farkas
    // certificate combines to a negative constant.
    if (r.feasible) {
        for (const auto& c : constraints)
            if (c.evaluate(r.witness).sign() < 0)
                throw std::logic_error("simplex: witness fails a constraint");
    } else {
        LinPoly combo;
        for (size_t i = 0; i < constraints.size(); ++i) {
            if (r.farkas[i].sign() < 0)
                throw std::logic_error("simplex: negative Farkas multiplier");
            LinPoly t = constraints[i];
            t *= r.farkas[i];
            combo += t;
        }
        if (!combo.is_constant() || combo.constant().sign() >= 0)
            throw std::logic_error("simplex: invalid Farkas certificate");
    }
    return r;
}

// Cone positivity: sup of a homogeneous objective over the homogeneous cone
// {cs >= 0} exceeds 0 (equivalently is +inf) iff a ray with objective 1
// exists, so the query reduces to feasibility of {cs >= 0, objective >= 1}.
struct ConeResult {
    bool positive = false;
    std::map<VarId, Rational> witness;  // ray with objective value >= 1
    long pivots = 0;
};

inline ConeResult cone_positive(const LinPoly& objective, const std::vector<LinPoly>& cs) {
    if (!objective.is_homogeneous())
        throw std::invalid_argument("cone_positive: objective must be homogeneous");
    for (const auto& c : cs)
        if (!c.is_homogeneous())
            throw std::invalid_argument("cone_positive: constraints must be homogeneous");
    std::vector<LinPoly> sys = cs;
    LinPoly bound = objective;
    bound.add_constant(Rational(-1));
    sys.push_back(bound);
    LPResult r = feasible(sys);
    ConeResult out;
    out.positive = r.feasible;
    out.pivots = r.pivots;
    if (r.feasible) out.witness = std::move(r.witness);
    return out;
}

// Direct-LP baseline: b.h >= 0 holds under Q h = 0 and the elemental
// inequalities iff min b.h over that cone is 0, i.e. iff -b cannot be made
// positive on the cone. Optional inequality constraints join the cone.
inline bool direct_lp_prove(const LinPoly& b, const std::vector<LinPoly>& q_eqs, int n,
                            const std::vector<LinPoly>& ineqs = {}) {
    std::vector<LinPoly> cone;
    for (const auto& m : elemental_measures(n)) {
        std::vector<std::pair<Rational, MeasureTerm>> one{{Rational(1), m}};
        cone.push_back(joint_entropy_vector(one));
    }
    for (const auto& g : ineqs) cone.push_back(g);
    for (const auto& e : q_eqs) {
        cone.push_back(e);
        cone.push_back(-e);
    }
    return !cone_positive(-b, cone).positive;
}

}  // namespace entroproof
