#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "atoms.hpp"
#include "linpoly.hpp"
#include "rational.hpp"

namespace entroproof {

struct ParseError {
    int line = 0;
    int col = 0;
    std::string message;

    std::string str() const {
        std::ostringstream os;
        os << "parse error at " << line << ":" << col << ": " << message;
        return os.str();
    }
};

// Linear combination of canonical measure terms. Like terms are merged and
// zero coefficients dropped; term order is first appearance.
struct ExprAST {
    std::vector<std::pair<Rational, MeasureTerm>> terms;
    Rational constant;

    void add(const Rational& c, const std::optional<MeasureTerm>& m) {
        if (!m || c.is_zero()) return;  // degenerate measures are identically 0
        for (auto it = terms.begin(); it != terms.end(); ++it) {
            if (it->second == *m) {
                it->first += c;
                if (it->first.is_zero()) terms.erase(it);
                return;
            }
        }
        terms.emplace_back(c, *m);
    }

    friend bool operator==(const ExprAST&, const ExprAST&) = default;
};

enum class StatementKind {
    ObjectiveInequality,  // expr >= 0
    ObjectiveIdentity,    // expr = 0
    ConstraintEquality,
    ConstraintInequality,
};

struct Statement {
    StatementKind kind;
    ExprAST expr;  // normalized to "expr >= 0" or "expr = 0"
};

struct Query {
    std::vector<std::string> variables;  // declared or inferred, in order
    std::optional<Statement> objective;
    std::vector<Statement> constraints;

    int n() const { return static_cast<int>(variables.size()); }
};

// Registry mapping random-variable names to indices 1..n. In open mode new
// names register on first use; otherwise unknown names are errors.
class VariableScope {
public:
    explicit VariableScope(int max_n, bool open = true) : max_n_(max_n), open_(open) {}

    int index_of(const std::string& name, int line, int col) {
        auto it = by_name_.find(name);
        if (it != by_name_.end()) return it->second;
        if (!open_) throw ParseError{line, col, "unknown variable '" + name + "'"};
        if (static_cast<int>(names_.size()) >= max_n_)
            throw ParseError{line, col,
                             "too many random variables (limit " + std::to_string(max_n_) + ")"};
        int idx = static_cast<int>(names_.size()) + 1;
        names_.push_back(name);
        by_name_[name] = idx;
        return idx;
    }

    bool declare(const std::string& name) {
        if (by_name_.count(name)) return false;
        names_.push_back(name);
        by_name_[name] = static_cast<int>(names_.size());
        return true;
    }

    void close() { open_ = false; }
    const std::vector<std::string>& names() const { return names_; }
    int max_n() const { return max_n_; }

private:
    int max_n_;
    bool open_;
    std::vector<std::string> names_;
    std::map<std::string, int> by_name_;
};

namespace detail {

class Lexer {
public:
    Lexer(const std::string& text, int line) : s_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool consume(const std::string& tok) {
        skip_ws();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!consume(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }

    std::string identifier() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                    s_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected an identifier");
        return s_.substr(start, pos_ - start);
    }

    std::string integer_digits() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        return s_.substr(start, pos_ - start);
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError{line_, static_cast<int>(pos_) + 1, msg};
    }

    int line() const { return line_; }
    int col() { skip_ws(); return static_cast<int>(pos_) + 1; }

private:
    std::string s_;
    size_t pos_ = 0;
    int line_;
};

inline VarSet parse_var_list(Lexer& lx, VariableScope& scope) {
    VarSet set = 0;
    while (true) {
        int line = lx.line(), col = lx.col();
        std::string name = lx.identifier();
        set |= VarSet{1} << (scope.index_of(name, line, col) - 1);
        if (!lx.consume(',')) break;
    }
    return set;
}

inline std::optional<MeasureTerm> parse_measure(Lexer& lx, VariableScope& scope) {
    int col = lx.col();
    std::string head = lx.identifier();
    if (head != "H" && head != "I") lx.fail("expected a measure H(...) or I(...)");
    lx.expect('(', "after '" + head + "'");
    if (head == "H") {
        VarSet a = parse_var_list(lx, scope);
        VarSet c = 0;
        if (lx.consume('|')) c = parse_var_list(lx, scope);
        lx.expect(')', "to close the measure");
        return MeasureTerm::entropy(a, c);
    }
    VarSet a = parse_var_list(lx, scope);
    lx.expect(';', "between the arguments of I(...)");
    VarSet b = parse_var_list(lx, scope);
    VarSet c = 0;
    if (lx.consume('|')) {
        c = parse_var_list(lx, scope);
    } else if (lx.peek() == ';') {
        throw ParseError{lx.line(), col,
                         "multi-way mutual information I(A;B;C) is not supported; "
                         "only two-argument (conditional) mutual information is accepted"};
    }
    if (lx.peek() == ';')
        throw ParseError{lx.line(), col,
                         "multi-way mutual information I(A;B;C) is not supported; "
                         "only two-argument (conditional) mutual information is accepted"};
    lx.expect(')', "to close the measure");
    return MeasureTerm::mutual(a, b, c);
}

inline Rational parse_coefficient(Lexer& lx) {
    std::string num = lx.integer_digits();
    if (lx.consume('/')) {
        std::string den = lx.integer_digits();
        return Rational(num + "/" + den);
    }
    return Rational(num);
}

// expr := ['+'|'-'] term (('+'|'-') term)*
// term := [coef ['*']] measure ;  coef := int ['/' int]
inline ExprAST parse_expr(Lexer& lx, VariableScope& scope) {
    ExprAST ast;
    bool first = true;
    while (true) {
        Rational sign(1);
        if (lx.consume('-')) {
            sign = Rational(-1);
        } else if (!lx.consume('+') && !first) {
            break;
        }
        Rational coef(1);
        bool had_coef = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coef = parse_coefficient(lx);
            had_coef = !lx.consume('*');
        }
        if (had_coef && !std::isalpha(static_cast<unsigned char>(lx.peek()))) {
            ast.constant += sign * coef;  // bare numeric term
        } else {
            ast.add(sign * coef, parse_measure(lx, scope));
        }
        first = false;
        char c = lx.peek();
        if (c != '+' && c != '-') break;
    }
    return ast;
}

inline ExprAST negated(ExprAST e) {
    for (auto& [c, m] : e.terms) c = -c;
    e.constant = -e.constant;
    return e;
}

// stmt := expr ('>=' | '<=' | '==' | '=') expr, normalized left-minus-right
// with '<=' negated so the result reads "expr >= 0" or "expr = 0".
inline std::pair<ExprAST, bool> parse_relation(Lexer& lx, VariableScope& scope) {
    ExprAST lhs = parse_expr(lx, scope);
    bool is_equality;
    Rational flip(1);
    if (lx.consume(">=")) {
        is_equality = false;
    } else if (lx.consume("<=")) {
        is_equality = false;
        flip = Rational(-1);
    } else if (lx.consume("==") || lx.consume("=")) {
        is_equality = true;
    } else {
        lx.fail("expected '>=', '<=' or '='");
    }
    ExprAST rhs = parse_expr(lx, scope);
    ExprAST result = lhs;
    for (const auto& [c, m] : rhs.terms) result.add(-c, m);
    result.constant -= rhs.constant;
    if (flip.sign() < 0) result = negated(result);
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    if (!result.constant.is_zero())
        lx.fail("constant terms must cancel: information expressions are homogeneous");
    return {result, is_equality};
}

}  // namespace detail

// Parse a single expression (no relation) against an open scope.
inline ExprAST parse_expression(const std::string& text, VariableScope& scope, int line = 1) {
    detail::Lexer lx(text, line);
    ExprAST e = detail::parse_expr(lx, scope);
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    return e;
}

// Parse a full query document:
//   vars X1, X2, ...        (optional; otherwise inferred from first use)
//   prove <expr> <rel> <expr>   (at most one)
//   given <expr> <rel> <expr>   (any number)
// '#' starts a comment; blank lines are ignored.
inline Query parse_query(const std::string& text, int max_n = kMaxRandomVariables,
                         bool objective_required = true) {
    Query q;
    VariableScope scope(max_n);
    bool declared = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        detail::Lexer lx(raw, lineno);
        if (lx.at_end()) continue;
        if (lx.consume("vars")) {
            if (declared) throw ParseError{lineno, 1, "duplicate 'vars' declaration"};
            declared = true;
            while (true) {
                int col = lx.col();
                std::string name = lx.identifier();
                if (static_cast<int>(scope.names().size()) >= max_n)
                    throw ParseError{lineno, col, "too many random variables (limit " +
                                                      std::to_string(max_n) + ")"};
                if (!scope.declare(name))
                    throw ParseError{lineno, col, "duplicate variable '" + name + "'"};
                lx.consume(',');  // separator is a comma or plain whitespace
                if (lx.at_end()) break;
            }
            if (!lx.at_end()) lx.fail("unexpected trailing input after 'vars'");
            scope.close();
        } else if (lx.consume("prove")) {
            if (q.objective) throw ParseError{lineno, 1, "duplicate 'prove' statement"};
            auto [expr, eq] = detail::parse_relation(lx, scope);
            q.objective = Statement{
                eq ? StatementKind::ObjectiveIdentity : StatementKind::ObjectiveInequality,
                std::move(expr)};
        } else if (lx.consume("given")) {
            auto [expr, eq] = detail::parse_relation(lx, scope);
            q.constraints.push_back(Statement{
                eq ? StatementKind::ConstraintEquality : StatementKind::ConstraintInequality,
                std::move(expr)});
        } else {
            lx.fail("expected 'vars', 'prove' or 'given'");
        }
    }
    if (objective_required && !q.objective)
        throw ParseError{lineno, 1, "missing 'prove' statement"};
    q.variables = scope.names();
    if (q.variables.empty()) throw ParseError{lineno, 1, "no random variables mentioned"};
    return q;
}

// --- Lowering to the s-variable universe ------------------------------------

struct LoweredQuery {
    LinPoly objective;                 // F
    std::vector<LinPoly> equalities;   // constraint C_i = 0
    std::vector<LinPoly> inequalities; // constraint C_j >= 0
    std::vector<std::string> inequality_labels;  // rendered source expressions
};

inline LinPoly lower_expr(const ExprAST& e, const SVarSequence& seq) {
    LinPoly p;
    for (const auto& [c, m] : e.terms) {
        LinPoly t = expand_measure(m, seq);
        t *= c;
        p += t;
    }
    p.add_constant(e.constant);
    return p;
}

inline std::string render_measure(const MeasureTerm& m, const std::vector<std::string>& names) {
    auto list = [&names](VarSet s) {
        std::string out;
        for (int i = 0; s >> i; ++i) {
            if (!((s >> i) & 1)) continue;
            if (!out.empty()) out += ",";
            out += names[i];
        }
        return out;
    };
    std::string r;
    if (m.is_entropy()) {
        r = "H(" + list(m.g);
    } else {
        r = "I(" + list(m.g) + ";" + list(m.gp);
    }
    if (m.gpp) r += "|" + list(m.gpp);
    return r + ")";
}

inline std::string render_expr(const ExprAST& e, const std::vector<std::string>& names) {
    if (e.terms.empty() && e.constant.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, m] : e.terms) {
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        Rational a = c.abs();
        if (a != Rational(1)) os << a.str() << "*";
        os << render_measure(m, names);
        first = false;
    }
    if (!e.constant.is_zero()) {
        if (first) os << e.constant.str();
        else os << (e.constant.sign() < 0 ? " - " : " + ") << e.constant.abs().str();
    }
    return os.str();
}

inline LoweredQuery lower(const Query& q, const SVarSequence& seq) {
    LoweredQuery out;
    if (q.objective) out.objective = lower_expr(q.objective->expr, seq);
    for (const auto& c : q.constraints) {
        if (c.kind == StatementKind::ConstraintEquality) {
            out.equalities.push_back(lower_expr(c.expr, seq));
        } else {
            out.inequalities.push_back(lower_expr(c.expr, seq));
            out.inequality_labels.push_back(render_expr(c.expr, q.variables));
        }
    }
    return out;
}

}  // namespace entroproof
