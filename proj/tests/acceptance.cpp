// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <entroproof/entroproof.hpp>

#include "oracles.hpp"

using namespace entroproof;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto start = Clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > budget_seconds) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += "time budget exceeded";
    }
    std::printf("criterion %d [%s] %-38s (%.2fs)%s%s\n", number, ok ? "PASS" : "FAIL",
                title.c_str(), secs, detail.empty() ? "" : " - ", detail.c_str());
    if (!ok) ++failures;
}

struct Instance {
    Query q;
    SVarSequence seq;
    LoweredQuery low;

    explicit Instance(const std::string& doc) : q(parse_query(doc)), seq(q.n()), low(lower(q, seq)) {}

    Verdict run() const {
        if (q.objective->kind == StatementKind::ObjectiveIdentity)
            return prove_identity(low.objective, low.equalities, low.inequalities, seq,
                                  q.variables);
        return prove_inequality(low.objective, low.equalities, low.inequalities, seq, q.variables);
    }

    bool verify(const ProofCertificate& cert) const {
        return verify_certificate(low.objective, low.equalities, low.inequalities, cert, seq).ok();
    }

    bool oracle() const {
        std::vector<LinPoly> eqs, ineqs;
        for (const auto& c : q.constraints) {
            LinPoly p = joint_entropy_vector(c.expr.terms);
            if (c.kind == StatementKind::ConstraintEquality) eqs.push_back(std::move(p));
            else ineqs.push_back(std::move(p));
        }
        LinPoly b = joint_entropy_vector(q.objective->expr.terms);
        bool fwd = direct_lp_prove(b, eqs, q.n(), ineqs);
        if (q.objective->kind != StatementKind::ObjectiveIdentity) return fwd;
        return fwd && direct_lp_prove(-b, eqs, q.n(), ineqs);
    }
};

const std::string kFourVarDoc =
    "vars X1, X2, X3, X4\n"
    "prove H(X1) >= H(X4)\n"
    "given I(X1;X4) = 0\n"
    "given I(X2;X4) = 0\n"
    "given I(X3;X4) = 0\n"
    "given H(X4|X1,X2) = 0\n"
    "given H(X4|X1,X3) = 0\n"
    "given H(X4|X2,X3) = 0\n";

LinPoly atoms(const SVarSequence& seq, std::initializer_list<std::pair<const char*, int>> terms) {
    LinPoly p;
    for (auto [name, coef] : terms) {
        for (int i = 0; i < seq.size(); ++i)
            if (seq.name(i) == name) p.add_term(i, Rational(coef));
    }
    return p;
}

std::string random_query(std::mt19937& rng, int n, bool want_identity) {
    std::ostringstream doc;
    doc << "vars";
    for (int i = 1; i <= n; ++i) doc << (i == 1 ? " " : ", ") << "X" << i;
    doc << "\n";
    auto varlist = [&](VarSet s) {
        std::string out;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) out += (out.empty() ? "" : ",") + ("X" + std::to_string(i + 1));
        return out;
    };
    std::uniform_int_distribution<VarSet> pick(1, full_set(n));

    std::ostringstream givens;
    int n_eqs = static_cast<int>(rng() % 3);
    for (int e = 0; e < n_eqs; ++e) {
        VarSet a = pick(rng), b = pick(rng), c = pick(rng) & pick(rng) & ~(a | b);
        if ((a & ~b) == 0 || (b & ~a) == 0) continue;
        givens << "given I(" << varlist(a) << ";" << varlist(b);
        if (c) givens << "|" << varlist(c);
        givens << ") = 0\n";
    }
    auto measure = [&]() {
        VarSet a = pick(rng), b = pick(rng), c = pick(rng) & pick(rng);
        if (rng() % 2 || (a & ~c) == 0 || (b & ~c) == 0) {
            std::string m = "H(" + varlist(a);
            if ((c & ~a) != 0 && rng() % 2) m += "|" + varlist(c & ~a);
            return m + ")";
        }
        std::string m = "I(" + varlist(a & ~c) + ";" + varlist(b & ~c);
        if (c) m += "|" + varlist(c);
        return m + ")";
    };
    doc << "prove " << measure();
    int extra = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < extra; ++t) doc << (rng() % 2 ? " + " : " - ") << measure();
    doc << (want_identity ? " = " : " >= ") << measure() << "\n";
    doc << givens.str();
    return doc.str();
}

}  // namespace

int main() {
    criterion(1, "elemental inequality counts", 1.0, [](std::string& detail) {
        // n + C(n,2) * 2^(n-2) for n = 2..5.
        const int expect[] = {3, 9, 28, 85};
        for (int n = 2; n <= 5; ++n) {
            SVarSequence seq(n);
            auto e = elemental_inequalities(seq);
            if (static_cast<int>(e.size()) != expect[n - 2]) {
                detail = "n=" + std::to_string(n) + " gave " + std::to_string(e.size());
                return false;
            }
        }
        return true;
    });

    criterion(2, "four-variable reduction end-to-end", 1.0, [](std::string& detail) {
        Instance in(kFourVarDoc);
        const SVarSequence& seq = in.seq;
        Verdict v = in.run();
        if (!v.proved) {
            detail = "not proved";
            return false;
        }
        if (v.remainder.size() != 18) {
            detail = "remainder has " + std::to_string(v.remainder.size()) + " members";
            return false;
        }
        std::vector<LinPoly> expect_srp = {
            atoms(seq, {{"s_{1,1,1,1}", 1}}),
            atoms(seq, {{"s_{1,1,3,1}", 1}}),
            atoms(seq, {{"s_{1,2,1,1}", 1}}),
            atoms(seq, {{"s_{2,2,2,2}", 1}}),
            atoms(seq, {{"s_{2,2,3,2}", 1}}),
            atoms(seq, {{"s_{2,2,3,4}", 1}}),
            atoms(seq, {{"s_{3,3,3,3}", 1}}),
            atoms(seq, {{"s_{1,2,3,1}", 1}, {"s_{2,2,3,4}", -1}, {"s_{1,1,3,1}", 1}}),
            atoms(seq, {{"s_{1,2,3,1}", 1}, {"s_{2,2,3,4}", -1}, {"s_{1,2,1,1}", 1}}),
            atoms(seq, {{"s_{1,2,3,1}", 1}, {"s_{2,2,3,4}", -1}, {"s_{2,2,3,2}", 1}}),
        };
        if (v.survivors.size() != expect_srp.size()) {
            detail = "S_r' has " + std::to_string(v.survivors.size()) + " members";
            return false;
        }
        for (size_t i = 0; i < expect_srp.size(); ++i) {
            if (!v.survivors[i].poly.positive_multiple_of(expect_srp[i])) {
                detail = "S_r' member " + std::to_string(i + 1) + " is " +
                         v.survivors[i].poly.str(seq.namer());
                return false;
            }
        }
        LinPoly expect_f1 = atoms(seq, {{"s_{1,1,1,1}", 1},
                                        {"s_{1,2,1,1}", 1},
                                        {"s_{2,2,3,4}", -1},
                                        {"s_{1,1,3,1}", 1},
                                        {"s_{1,2,3,1}", 1}});
        if (v.reduced_goal != expect_f1) {
            detail = "F1 is " + v.reduced_goal.str(seq.namer());
            return false;
        }
        if (!v.certificate || !in.verify(*v.certificate)) {
            detail = "certificate missing or rejected";
            return false;
        }
        for (size_t i = 0; i < v.certificate->conic.size(); ++i) {
            bool in_support = i == 0 || i == 2 || i == 7;
            Rational expect_coef(in_support ? 1 : 0);
            if (v.certificate->conic[i] != expect_coef) {
                detail = "conic[" + std::to_string(i + 1) + "] = " +
                         v.certificate->conic[i].str();
                return false;
            }
        }
        return true;
    });

    criterion(3, "problem-size statistics", 1.0, [](std::string& detail) {
        Verdict v = Instance(kFourVarDoc).run();
        auto eq = [](const ProblemSize& p, int a, int b, int c) {
            return p.variables == a && p.equalities == b && p.inequalities == c;
        };
        if (!eq(v.stats.p1, 15, 6, 28)) {
            detail = "P1 = (" + std::to_string(v.stats.p1.variables) + "," +
                     std::to_string(v.stats.p1.equalities) + "," +
                     std::to_string(v.stats.p1.inequalities) + ")";
            return false;
        }
        if (!eq(v.stats.p3, 2, 0, 6)) {
            detail = "P3 = (" + std::to_string(v.stats.p3.variables) + "," +
                     std::to_string(v.stats.p3.equalities) + "," +
                     std::to_string(v.stats.p3.inequalities) + ")";
            return false;
        }
        return true;
    });

    criterion(4, "three-variable identity end-to-end", 1.0, [](std::string& detail) {
        Instance in(
            "vars X1, X2, X3\n"
            "prove H(X1) = H(X1|X2,X3)\n"
            "given I(X1;X2|X3) = 0\n"
            "given H(X3) = I(X2;X3|X1)\n");
        Verdict v = in.run();
        if (!v.proved || !v.reduced_goal.is_zero()) {
            detail = "not proved or nonzero reduced goal";
            return false;
        }
        std::vector<LinPoly> expect_basis = {
            atoms(in.seq, {{"s_{1,2,3}", 1}}),
            atoms(in.seq, {{"s_{1,1,3}", 1}}),
            atoms(in.seq, {{"s_{1,2,1}", 1}}),
            atoms(in.seq, {{"s_{3,3,3}", 1}}),
        };
        auto rows = v.basis.row_polys();
        if (rows != expect_basis) {
            detail = "basis has " + std::to_string(rows.size()) + " rows";
            return false;
        }
        return v.certificate && in.verify(*v.certificate);
    });

    criterion(5, "implied equalities of the signed pair set", 1.0, [](std::string& detail) {
        auto x = [](VarId v) { return LinPoly::variable(v); };
        std::vector<LinPoly> s{x(0), x(1) - x(0), -x(0), -x(1), x(1) + x(2)};
        auto impl = implied_equalities_indexed(s);
        if (impl.indices != std::vector<int>{0, 1, 2, 3}) {
            detail = "implied index set has " + std::to_string(impl.indices.size()) + " members";
            return false;
        }
        auto rc = reduced_minimal_characterization(s);
        if (rc.minimal != std::vector<LinPoly>{x(2)}) {
            detail = "reduction left " + std::to_string(rc.minimal.size()) + " members";
            return false;
        }
        return true;
    });

    criterion(6, "oracle equivalence on 500 random queries", 60.0, [](std::string& detail) {
        std::mt19937 rng(424242);
        int proved = 0;
        for (int it = 0; it < 500; ++it) {
            int n = 3 + (it % 2);
            Instance in(random_query(rng, n, it % 5 == 0));
            Verdict v = in.run();
            if (v.proved != in.oracle()) {
                detail = "disagreement on iteration " + std::to_string(it);
                return false;
            }
            if (v.proved) {
                ++proved;
                if (!v.certificate || !in.verify(*v.certificate)) {
                    detail = "bad certificate on iteration " + std::to_string(it);
                    return false;
                }
            }
        }
        if (proved < 25 || proved > 475) {
            detail = "degenerate corpus: " + std::to_string(proved) + " proved";
            return false;
        }
        return true;
    });

    criterion(7, "minimal characterization uniqueness, 100 pure sets", 30.0,
              [](std::string& detail) {
                  std::mt19937 rng(434343);
                  int tested = 0;
                  while (tested < 100) {
                      std::vector<LinPoly> s;
                      int rows = 2 + static_cast<int>(rng() % 9);
                      for (int i = 0; i < rows; ++i) {
                          LinPoly p = oracles::random_poly(rng, 6, 3, false);
                          if (!p.is_zero()) s.push_back(std::move(p));
                      }
                      if (!implied_equalities(s).empty()) continue;  // keep it pure
                      ++tested;
                      auto norm = [](std::vector<LinPoly> v) {
                          for (auto& p : v) p = p.normalized();
                          std::sort(v.begin(), v.end(), [](const LinPoly& a, const LinPoly& b) {
                              return a.str() < b.str();
                          });
                          return v;
                      };
                      auto base = minimal_characterization(s);
                      auto perm = s;
                      std::shuffle(perm.begin(), perm.end(), rng);
                      if (norm(minimal_characterization(perm)) != norm(base)) {
                          detail = "order dependence at set " + std::to_string(tested);
                          return false;
                      }
                      for (size_t k = 0; k < base.size(); ++k) {
                          std::vector<LinPoly> others;
                          for (size_t i = 0; i < base.size(); ++i)
                              if (i != k) others.push_back(base[i]);
                          if (conic_combination_exists(base[k], others)) {
                              detail = "redundant survivor in set " + std::to_string(tested);
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(8, "solution-set preservation on 1000 points", 30.0, [](std::string& detail) {
        std::mt19937 rng(454545);
        int points = 0;
        while (points < 1000) {
            std::vector<LinPoly> eqs, ineqs;
            int ne = static_cast<int>(rng() % 3), ni = 2 + static_cast<int>(rng() % 4);
            for (int i = 0; i < ne; ++i) eqs.push_back(oracles::random_poly(rng, 4, 3, false));
            for (int i = 0; i < ni; ++i) ineqs.push_back(oracles::random_poly(rng, 4, 3, false));

            auto dr = dimension_reduce(ineqs, eqs);
            auto rc = reduced_minimal_characterization(ineqs);

            for (int pt = 0; pt < 25 && points < 1000; ++pt, ++points) {
                auto holds_all = [](const std::vector<LinPoly>& ps,
                                    const std::map<VarId, Rational>& v) {
                    for (const auto& p : ps)
                        if (p.evaluate(v).sign() < 0) return false;
                    return true;
                };
                auto zero_all = [](const std::vector<LinPoly>& ps,
                                   const std::map<VarId, Rational>& v) {
                    for (const auto& p : ps)
                        if (!p.evaluate(v).is_zero()) return false;
                    return true;
                };

                // A random point of the equality variety: free variables at
                // random, pivots solved from the rows. There the reduced
                // remainder must classify like the original inequalities.
                std::map<VarId, Rational> on_variety;
                for (VarId i = 0; i < 4; ++i)
                    if (!dr.jordan.is_pivot(i)) on_variety[i] = oracles::random_rational(rng, 3);
                for (const auto& row : dr.jordan.rows())
                    on_variety[row.pivot] = row.tail.evaluate(on_variety);
                if (!zero_all(eqs, on_variety)) {
                    detail = "variety sampling is broken";
                    return false;
                }
                if (holds_all(ineqs, on_variety) != holds_all(dr.remainder, on_variety)) {
                    detail = "dimension reduction changed a classification";
                    return false;
                }

                // The reduced characterization is equivalent everywhere.
                std::map<VarId, Rational> v;
                for (VarId i = 0; i < 4; ++i) v[i] = oracles::random_rational(rng, 3);
                bool orig = holds_all(ineqs, v);
                bool reduced = holds_all(rc.minimal, v) && zero_all(rc.jordan.row_polys(), v);
                if (orig != reduced) {
                    detail = "reduced characterization changed a classification";
                    return false;
                }
            }
        }
        return true;
    });

    criterion(9, "data processing under a Markov chain", 1.0, [](std::string& detail) {
        Instance in(
            "vars X, Y, Z, T\n"
            "prove I(Y;Z) >= I(X;T)\n"
            "given I(X;Z|Y) = 0\n"
            "given I(X,Y;T|Z) = 0\n");
        Verdict v = in.run();
        if (!v.proved) {
            detail = "not proved";
            return false;
        }
        if (!v.certificate || !in.verify(*v.certificate)) {
            detail = "certificate missing or rejected";
            return false;
        }
        return true;
    });

    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
