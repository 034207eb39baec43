#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace entroproof {

// Position of a variable in the active variable order (0-based; smaller
// index means earlier in the order, i.e. preferred as a pivot).
using VarId = int;

// Sparse linear polynomial with Rational coefficients. Zero coefficients
// are never stored. The constant term is 0 for homogeneous polynomials
// (information expressions) and may be nonzero in LP subproblems.
class LinPoly {
public:
    LinPoly() = default;
    explicit LinPoly(Rational constant) : constant_(std::move(constant)) {}

    static LinPoly variable(VarId v, Rational coeff = Rational(1)) {
        LinPoly p;
        p.add_term(v, coeff);
        return p;
    }

    const std::map<VarId, Rational>& terms() const { return terms_; }
    const Rational& constant() const { return constant_; }

    Rational coeff(VarId v) const {
        auto it = terms_.find(v);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(VarId v, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(v, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void erase_term(VarId v) { terms_.erase(v); }
    void add_constant(const Rational& c) { constant_ += c; }

    bool is_zero() const { return terms_.empty() && constant_.is_zero(); }
    bool is_homogeneous() const { return constant_.is_zero(); }
    bool is_constant() const { return terms_.empty(); }

    // Smallest VarId with nonzero coefficient; -1 if none.
    VarId leading_var() const { return terms_.empty() ? -1 : terms_.begin()->first; }

    LinPoly& operator+=(const LinPoly& o) {
        for (const auto& [v, c] : o.terms_) add_term(v, c);
        constant_ += o.constant_;
        return *this;
    }
    LinPoly& operator-=(const LinPoly& o) {
        for (const auto& [v, c] : o.terms_) add_term(v, -c);
        constant_ -= o.constant_;
        return *this;
    }
    LinPoly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            constant_ = Rational(0);
            return *this;
        }
        for (auto& [v, t] : terms_) t *= c;
        constant_ *= c;
        return *this;
    }

    friend LinPoly operator+(LinPoly a, const LinPoly& b) { return a += b; }
    friend LinPoly operator-(LinPoly a, const LinPoly& b) { return a -= b; }
    friend LinPoly operator*(const Rational& c, LinPoly p) { return p *= c; }
    LinPoly operator-() const {
        LinPoly r(*this);
        return r *= Rational(-1);
    }

    friend bool operator==(const LinPoly& a, const LinPoly& b) {
        return a.constant_ == b.constant_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LinPoly& a, const LinPoly& b) { return !(a == b); }

    // Scale by a positive factor so the leading coefficient becomes +1 or -1.
    // Trivially equivalent polynomials (positive multiples) normalize to the
    // same value.
    LinPoly normalized() const {
        if (terms_.empty()) return *this;
        LinPoly r(*this);
        r *= terms_.begin()->second.abs().inverse();
        return r;
    }

    // True iff *this == c*other for some c > 0.
    bool positive_multiple_of(const LinPoly& other) const {
        return normalized() == other.normalized();
    }

    Rational evaluate(const std::map<VarId, Rational>& assignment) const {
        Rational acc = constant_;
        for (const auto& [v, c] : terms_) {
            auto it = assignment.find(v);
            if (it != assignment.end()) acc += c * it->second;
        }
        return acc;
    }

    std::string str(const std::function<std::string(VarId)>& name) const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [v, c] : terms_) {
            if (first) {
                if (c.sign() < 0) os << "-";
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
            }
            Rational a = c.abs();
            if (a != Rational(1)) os << a.str() << "*";
            os << name(v);
            first = false;
        }
        if (!constant_.is_zero()) {
            if (first) {
                os << constant_.str();
            } else {
                os << (constant_.sign() < 0 ? " - " : " + ") << constant_.abs().str();
            }
        }
        return os.str();
    }

    std::string str() const {
        return str([](VarId v) { return "x" + std::to_string(v + 1); });
    }

private:
    std::map<VarId, Rational> terms_;
    Rational constant_;
};

}  // namespace entroproof
