// entroproof: prove linear information inequalities and identities over
// discrete random variables, with machine-checkable certificates.
//
// Exit codes: 0 proved / verified, 1 not provable / verification failed,
// 2 parse or usage error, 3 internal inconsistency detected by --check.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <entroproof/entroproof.hpp>

namespace ep = entroproof;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int default_max_n() {
    if (const char* env = std::getenv("ENTROPROOF_MAX_N")) {
        int v = std::atoi(env);
        if (v >= 1 && v <= ep::kMaxRandomVariables) return v;
    }
    return ep::kMaxRandomVariables;
}

// Label for a pooled inequality: the user's own rendering for supplied
// constraints, the elemental measure for the appended ones.
std::string pool_label(int source, const ep::LoweredQuery& lowered, const ep::Query& q) {
    int user = static_cast<int>(lowered.inequalities.size());
    if (source < user) return lowered.inequality_labels[source];
    auto elems = ep::elemental_measures(q.n());
    return ep::render_measure(elems[source - user], q.variables);
}

void print_stats(const ep::ProblemStats& st) {
    auto line = [](const char* name, const ep::ProblemSize& p) {
        std::cout << name << ": " << p.variables << " variables, " << p.equalities
                  << " equality constraints, " << p.inequalities << " inequality constraints\n";
    };
    line("P1", st.p1);
    line("P2", st.p2);
    line("P3", st.p3);
}

void print_reduction(const ep::Verdict& v, const ep::SVarSequence& seq,
                     const ep::LoweredQuery& lowered, const ep::Query& q) {
    std::cout << "equality basis B (" << v.basis.rank() << " rows):\n";
    for (const auto& row : v.basis.row_polys()) std::cout << "  " << row.str(seq.namer()) << " = 0\n";
    std::cout << "surviving inequalities S_r' (" << v.survivors.size() << " members):\n";
    for (size_t i = 0; i < v.survivors.size(); ++i) {
        std::cout << "  C" << i + 1 << " = " << v.survivors[i].poly.str(seq.namer()) << "   [from "
                  << pool_label(v.survivors[i].source, lowered, q) << "]\n";
    }
}

// Final proof line, e.g. "F1 = C1 + C3 + C8".
std::string conic_line(const ep::ProofCertificate& cert) {
    std::ostringstream os;
    os << "F1 = ";
    bool first = true;
    for (size_t i = 0; i < cert.conic.size(); ++i) {
        if (cert.conic[i].is_zero()) continue;
        if (!first) os << " + ";
        if (cert.conic[i] != ep::Rational(1)) os << cert.conic[i].str() << "*";
        os << "C" << i + 1;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

struct ProveOptions {
    std::string input;
    std::string format = "text";
    std::string cert_out;
    bool check = false;
    bool stats = false;
    int max_n = default_max_n();
};

int cmd_prove(const ProveOptions& opt) {
    ep::Query q = ep::parse_query(read_input(opt.input), opt.max_n);
    ep::SVarSequence seq(q.n());
    ep::LoweredQuery lowered = ep::lower(q, seq);
    bool identity = q.objective->kind == ep::StatementKind::ObjectiveIdentity;

    ep::Verdict v = identity ? ep::prove_identity(lowered.objective, lowered.equalities,
                                                  lowered.inequalities, seq, q.variables)
                             : ep::prove_inequality(lowered.objective, lowered.equalities,
                                                    lowered.inequalities, seq, q.variables);

    if (opt.check) {
        bool consistent = true;
        if (v.proved) {
            auto vr = ep::verify_certificate(lowered.objective, lowered.equalities,
                                             lowered.inequalities, *v.certificate, seq);
            if (!vr.ok()) {
                std::cerr << "internal inconsistency: emitted certificate fails verification: "
                          << vr.detail << "\n";
                consistent = false;
            }
        }
        if (q.n() <= 4) {
            // Cross-check against the direct LP over joint-entropy coordinates.
            auto to_entropy = [&](const ep::ExprAST& e) {
                ep::LinPoly p = ep::joint_entropy_vector(e.terms);
                p.add_constant(e.constant);
                return p;
            };
            std::vector<ep::LinPoly> q_eqs, q_ineqs;
            for (const auto& c : q.constraints) {
                if (c.kind == ep::StatementKind::ConstraintEquality)
                    q_eqs.push_back(to_entropy(c.expr));
                else
                    q_ineqs.push_back(to_entropy(c.expr));
            }
            ep::LinPoly b = to_entropy(q.objective->expr);
            bool oracle = ep::direct_lp_prove(b, q_eqs, q.n(), q_ineqs);
            if (identity) oracle = oracle && ep::direct_lp_prove(-b, q_eqs, q.n(), q_ineqs);
            if (oracle != v.proved) {
                std::cerr << "internal inconsistency: direct-LP oracle says "
                          << (oracle ? "provable" : "not provable") << ", procedure says "
                          << (v.proved ? "provable" : "not provable") << "\n";
                consistent = false;
            }
        }
        if (!consistent) return 3;
    }

    if (!opt.cert_out.empty() && v.proved) {
        std::ofstream out(opt.cert_out);
        out << ep::certificate_to_json(*v.certificate).dump(2) << "\n";
    }

    if (opt.format == "json") {
        ep::ojson j;
        j["query"] = opt.input;
        j["objective"] = ep::render_expr(q.objective->expr, q.variables);
        j["kind"] = identity ? "identity" : "inequality";
        j["proved"] = v.proved;
        if (v.proved) j["certificate"] = ep::certificate_to_json(*v.certificate);
        else j["diagnostic"] = v.diagnostic;
        if (opt.stats) {
            auto sz = [](const ep::ProblemSize& p) {
                return ep::ojson{{"variables", p.variables},
                                 {"equalities", p.equalities},
                                 {"inequalities", p.inequalities}};
            };
            j["stats"] = {{"P1", sz(v.stats.p1)}, {"P2", sz(v.stats.p2)}, {"P3", sz(v.stats.p3)}};
        }
        std::cout << j.dump(2) << "\n";
        return v.proved ? 0 : 1;
    }

    std::cout << "proving: " << ep::render_expr(q.objective->expr, q.variables)
              << (identity ? " = 0" : " >= 0") << "   (n = " << q.n() << ")\n";
    print_reduction(v, seq, lowered, q);
    std::cout << "reduced goal F1 = " << v.reduced_goal.str(seq.namer()) << "\n";
    if (opt.stats) print_stats(v.stats);
    if (!v.proved) {
        std::cout << "Not Provable: the objective is not implied by the given constraints "
                     "and the elemental inequalities\n";
        std::cout << "  (" << v.diagnostic << ")\n";
        return 1;
    }
    std::cout << "PROVED\n";
    if (identity) {
        std::cout << "remainder of F under B is 0\n";
    } else {
        std::cout << conic_line(*v.certificate) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& input, const std::string& cert_path, int max_n) {
    ep::Query q = ep::parse_query(read_input(input), max_n);
    ep::SVarSequence seq(q.n());
    ep::LoweredQuery lowered = ep::lower(q, seq);

    ep::ojson j = ep::ojson::parse(read_input(cert_path));
    ep::ProofCertificate cert = ep::certificate_from_json(j);
    bool identity = q.objective->kind == ep::StatementKind::ObjectiveIdentity;
    if (identity != (cert.kind == ep::ProofCertificate::Kind::Identity)) {
        std::cout << "verification FAILED: certificate kind does not match the objective\n";
        return 1;
    }
    auto r = ep::verify_certificate(lowered.objective, lowered.equalities, lowered.inequalities,
                                    cert, seq);
    if (r.ok()) {
        std::cout << "certificate OK\n";
        return 0;
    }
    std::cout << "verification FAILED: " << r.detail << "\n";
    return 1;
}

int cmd_simplify(const std::string& input, int max_n) {
    ep::Query q = ep::parse_query(read_input(input), max_n, /*objective_required=*/false);
    ep::SVarSequence seq(q.n());
    ep::LoweredQuery lowered = ep::lower(q, seq);

    // Reduced minimal characterization of the pooled inequalities under the
    // equality constraints; an empty goal runs the shared pipeline.
    ep::Verdict v = ep::prove_inequality(ep::LinPoly{}, lowered.equalities, lowered.inequalities,
                                         seq, q.variables);
    std::cout << "n = " << q.n() << ", universe of " << seq.size() << " atoms\n";
    print_reduction(v, seq, lowered, q);
    return 0;
}

int cmd_elemental(int n) {
    ep::SVarSequence seq(n);
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
    auto measures = ep::elemental_measures(n);
    for (const auto& m : measures) {
        std::cout << ep::render_measure(m, names) << " = "
                  << ep::expand_measure(m, seq).str(seq.namer()) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entroproof: exact prover for linear information inequalities and identities"};
    app.require_subcommand(1);

    ProveOptions popt;
    auto* prove = app.add_subcommand("prove", "prove the objective of a query document");
    prove->add_option("file", popt.input, "query document ('-' for stdin)")->required();
    prove->add_option("--format", popt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    prove->add_option("--cert-out", popt.cert_out, "write the certificate to this file");
    prove->add_flag("--check", popt.check, "re-verify the certificate and cross-check the LP oracle");
    prove->add_flag("--stats", popt.stats, "print problem-size statistics");
    prove->add_option("--max-n", popt.max_n, "largest allowed number of random variables")
        ->check(CLI::Range(1, ep::kMaxRandomVariables));

    std::string vinput, vcert;
    int vmax_n = default_max_n();
    auto* verify = app.add_subcommand("verify", "verify a certificate against a query document");
    verify->add_option("file", vinput, "query document ('-' for stdin)")->required();
    verify->add_option("--cert", vcert, "certificate file")->required();
    verify->add_option("--max-n", vmax_n, "largest allowed number of random variables")
        ->check(CLI::Range(1, ep::kMaxRandomVariables));

    std::string sinput;
    int smax_n = default_max_n();
    auto* simplify = app.add_subcommand(
        "simplify", "reduced minimal characterization of the constraints of a document");
    simplify->add_option("file", sinput, "query document ('-' for stdin)")->required();
    simplify->add_option("--max-n", smax_n, "largest allowed number of random variables")
        ->check(CLI::Range(1, ep::kMaxRandomVariables));

    int en = 0;
    auto* elemental = app.add_subcommand("elemental", "list the elemental inequalities for n");
    elemental->add_option("n", en, "number of random variables")
        ->required()
        ->check(CLI::Range(2, ep::kMaxRandomVariables));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (prove->parsed()) return cmd_prove(popt);
        if (verify->parsed()) return cmd_verify(vinput, vcert, vmax_n);
        if (simplify->parsed()) return cmd_simplify(sinput, smax_n);
        if (elemental->parsed()) return cmd_elemental(en);
    } catch (const ep::ParseError& e) {
        std::cerr << e.str() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
