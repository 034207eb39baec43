#pragma once

#include <string>
#include <vector>

#include "atoms.hpp"
#include "certificate.hpp"
#include "jordan.hpp"
#include "linpoly.hpp"

namespace entroproof {

// Certificate checking is pure exact arithmetic: no LP is solved here, and
// nothing from the prover's search is trusted beyond what is re-verified.
enum class VerifyCode {
    Ok,
    MalformedCertificate,
    UniverseMismatch,
    BadImpliedWitness,
    BasisMismatch,
    BadSurvivor,
    NegativeCoefficient,
    IdentityFails,
};

struct VerifyResult {
    VerifyCode code = VerifyCode::Ok;
    std::string detail;

    bool ok() const { return code == VerifyCode::Ok; }
};

inline VerifyResult verify_certificate(const LinPoly& goal, const std::vector<LinPoly>& eqs,
                                       const std::vector<LinPoly>& user_ineqs,
                                       const ProofCertificate& cert, const SVarSequence& seq) {
    auto fail = [](VerifyCode c, std::string d) { return VerifyResult{c, std::move(d)}; };

    if (cert.n != seq.n())
        return fail(VerifyCode::UniverseMismatch,
                    "certificate is over " + std::to_string(cert.n) + " random variables, query over " +
                        std::to_string(seq.n()));
    int universe = seq.size();
    auto in_universe = [universe](const LinPoly& p) {
        if (!p.is_homogeneous()) return false;
        for (const auto& [v, c] : p.terms())
            if (v < 0 || v >= universe) return false;
        return true;
    };

    // Rebuild the pooled inequality list and the reduced remainder set the
    // same way every run derives them from the query.
    std::vector<LinPoly> pool = user_ineqs;
    for (auto& e : elemental_inequalities(seq)) pool.push_back(std::move(e));
    DimensionReduction dr = dimension_reduce(pool, eqs);
    const JordanForm& b = dr.jordan;
    std::vector<LinPoly>& remainder = dr.remainder;

    // Each implied equality must carry conic multipliers v over the
    // remainder with v_k > 0 and sum v_i g_i identically zero; together with
    // g_k >= 0 that forces g_k = 0 on the whole solution set.
    std::vector<LinPoly> implied_polys;
    for (const auto& ie : cert.implied) {
        if (ie.index < 0 || ie.index >= static_cast<int>(remainder.size()) ||
            ie.witness.size() != remainder.size())
            return fail(VerifyCode::MalformedCertificate, "implied-equality entry out of range");
        if (ie.witness[ie.index].sign() <= 0)
            return fail(VerifyCode::BadImpliedWitness,
                        "witness multiplier for the implied member is not positive");
        LinPoly combo;
        for (size_t i = 0; i < remainder.size(); ++i) {
            if (ie.witness[i].sign() < 0)
                return fail(VerifyCode::BadImpliedWitness, "negative witness multiplier");
            LinPoly t = remainder[i];
            t *= ie.witness[i];
            combo += t;
        }
        if (!combo.is_zero())
            return fail(VerifyCode::BadImpliedWitness,
                        "witness combination does not vanish identically");
        implied_polys.push_back(remainder[ie.index]);
    }

    // The recorded basis must be exactly the Jordan form of the constraint
    // equalities together with the verified implied equalities.
    std::vector<LinPoly> merged = b.row_polys();
    for (auto& p : implied_polys) merged.push_back(std::move(p));
    JordanForm expected = gauss_jordan(merged);
    std::vector<LinPoly> expected_rows = expected.row_polys();
    if (expected_rows.size() != cert.basis_rows.size())
        return fail(VerifyCode::BasisMismatch, "basis rank differs from the derivable basis");
    for (size_t i = 0; i < expected_rows.size(); ++i)
        if (expected_rows[i] != cert.basis_rows[i])
            return fail(VerifyCode::BasisMismatch, "basis row " + std::to_string(i) +
                                                       " is not derivable from the inputs");

    // Every survivor must be a positive multiple of the basis-reduction of
    // its recorded source inequality.
    for (size_t i = 0; i < cert.survivors.size(); ++i) {
        const auto& s = cert.survivors[i];
        if (s.source < 0 || s.source >= static_cast<int>(pool.size()))
            return fail(VerifyCode::MalformedCertificate, "survivor source out of range");
        if (s.poly.is_zero() || !in_universe(s.poly))
            return fail(VerifyCode::BadSurvivor, "survivor " + std::to_string(i) +
                                                     " is zero or outside the universe");
        LinPoly r = reduce_poly(pool[s.source], expected);
        if (!r.positive_multiple_of(s.poly))
            return fail(VerifyCode::BadSurvivor,
                        "survivor " + std::to_string(i) +
                            " is not a positive multiple of its reduced source");
    }

    // Finally the verification identity itself.
    LinPoly f1 = reduce_poly(goal, expected);
    if (f1 != cert.reduced_goal)
        return fail(VerifyCode::IdentityFails, "recorded reduced goal differs from reduce(F, B)");
    if (cert.kind == ProofCertificate::Kind::Identity) {
        if (!cert.conic.empty())
            return fail(VerifyCode::MalformedCertificate,
                        "identity certificate carries conic coefficients");
        if (!f1.is_zero())
            return fail(VerifyCode::IdentityFails, "goal does not reduce to zero");
        return {};
    }
    if (cert.conic.size() != cert.survivors.size())
        return fail(VerifyCode::MalformedCertificate,
                    "conic coefficient count differs from survivor count");
    LinPoly combo;
    for (size_t i = 0; i < cert.conic.size(); ++i) {
        if (cert.conic[i].sign() < 0)
            return fail(VerifyCode::NegativeCoefficient,
                        "conic coefficient " + std::to_string(i) + " is negative");
        LinPoly t = cert.survivors[i].poly;
        t *= cert.conic[i];
        combo += t;
    }
    if (combo != f1)
        return fail(VerifyCode::IdentityFails,
                    "conic combination of survivors does not equal the reduced goal");
    return {};
}

}  // namespace entroproof
