#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "jordan.hpp"
#include "linpoly.hpp"
#include "rational.hpp"

namespace entroproof {

// Machine-checkable proof witness. Soundness rests on three facts a checker
// can re-verify with exact arithmetic and no LP:
//   - every basis row is a consequence of the constraint equalities plus the
//     recorded implied equalities, each of which carries a conic witness
//     over the reduced inequality set (sum v_i g_i == 0, v >= 0, v_k > 0);
//   - every surviving inequality is a positive multiple of the reduction of
//     a recorded source inequality by the basis;
//   - the goal reduces under the basis to the recorded conic combination of
//     the survivors (or to zero, for identities).
struct ProofCertificate {
    enum class Kind { Inequality, Identity };

    struct ImpliedEquality {
        int index = -1;                 // position in the reduced remainder set
        std::vector<Rational> witness;  // conic multipliers over that set
    };

    struct Survivor {
        LinPoly poly;    // a member of S_r', normalized
        int source = -1; // index into the pooled inequality list (user + elemental)
    };

    Kind kind = Kind::Inequality;
    int n = 0;
    std::vector<std::string> variables;
    std::vector<LinPoly> basis_rows;  // row polynomials of the Jordan form B
    std::vector<ImpliedEquality> implied;
    std::vector<Survivor> survivors;
    std::vector<Rational> conic;  // one coefficient per survivor; empty for identities
    LinPoly reduced_goal;         // F_1
};

// --- Structured serialization ------------------------------------------------
//
// Polynomials are encoded as {"terms": [[varid, "coeff"], ...], "const": "c"}
// with terms in ascending VarId order, so serialization is deterministic.

using ojson = nlohmann::ordered_json;

inline ojson poly_to_json(const LinPoly& p) {
    ojson terms = ojson::array();
    for (const auto& [v, c] : p.terms()) terms.push_back({v, c.str()});
    ojson out;
    out["terms"] = std::move(terms);
    out["const"] = p.constant().str();
    return out;
}

inline LinPoly poly_from_json(const ojson& j) {
    LinPoly p(Rational(j.at("const").get<std::string>()));
    for (const auto& t : j.at("terms"))
        p.add_term(t.at(0).get<int>(), Rational(t.at(1).get<std::string>()));
    return p;
}

inline ojson certificate_to_json(const ProofCertificate& c) {
    ojson j;
    j["format"] = "entroproof-certificate/1";
    j["kind"] = c.kind == ProofCertificate::Kind::Identity ? "identity" : "inequality";
    j["n"] = c.n;
    j["variables"] = c.variables;
    j["basis"] = ojson::array();
    for (const auto& r : c.basis_rows) j["basis"].push_back(poly_to_json(r));
    j["implied"] = ojson::array();
    for (const auto& ie : c.implied) {
        ojson w = ojson::array();
        for (const auto& v : ie.witness) w.push_back(v.str());
        j["implied"].push_back({{"index", ie.index}, {"witness", std::move(w)}});
    }
    j["survivors"] = ojson::array();
    for (const auto& s : c.survivors)
        j["survivors"].push_back({{"poly", poly_to_json(s.poly)}, {"source", s.source}});
    j["conic"] = ojson::array();
    for (const auto& p : c.conic) j["conic"].push_back(p.str());
    j["reduced_goal"] = poly_to_json(c.reduced_goal);
    return j;
}

inline ProofCertificate certificate_from_json(const ojson& j) {
    if (j.at("format").get<std::string>() != "entroproof-certificate/1")
        throw std::invalid_argument("unsupported certificate format");
    ProofCertificate c;
    c.kind = j.at("kind").get<std::string>() == "identity" ? ProofCertificate::Kind::Identity
                                                           : ProofCertificate::Kind::Inequality;
    c.n = j.at("n").get<int>();
    c.variables = j.at("variables").get<std::vector<std::string>>();
    for (const auto& r : j.at("basis")) c.basis_rows.push_back(poly_from_json(r));
    for (const auto& ie : j.at("implied")) {
        ProofCertificate::ImpliedEquality e;
        e.index = ie.at("index").get<int>();
        for (const auto& w : ie.at("witness"))
            e.witness.emplace_back(Rational(w.get<std::string>()));
        c.implied.push_back(std::move(e));
    }
    for (const auto& s : j.at("survivors"))
        c.survivors.push_back({poly_from_json(s.at("poly")), s.at("source").get<int>()});
    for (const auto& p : j.at("conic")) c.conic.emplace_back(Rational(p.get<std::string>()));
    c.reduced_goal = poly_from_json(j.at("reduced_goal"));
    return c;
}

}  // namespace entroproof
