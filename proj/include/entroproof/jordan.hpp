#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "linpoly.hpp"

namespace entroproof {

// Reduced row-echelon presentation of a linear equality system under the
// active variable order: rows x_{k_i} - U_i = 0 with strictly increasing
// pivots k_1 < k_2 < ... and no pivot variable occurring in any tail U_i.
// Unique for a given span and variable order.
class JordanForm {
public:
    struct Row {
        VarId pivot;
        LinPoly tail;  // U_i; contains no pivot of the form
    };

    const std::vector<Row>& rows() const { return rows_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    bool empty() const { return rows_.empty(); }

    const LinPoly* tail_for(VarId v) const {
        for (const auto& r : rows_)
            if (r.pivot == v) return &r.tail;
        return nullptr;
    }

    bool is_pivot(VarId v) const { return tail_for(v) != nullptr; }

    // The polynomial x_{k_i} - U_i of row i.
    LinPoly row_poly(int i) const {
        LinPoly p = LinPoly::variable(rows_[i].pivot);
        p -= rows_[i].tail;
        return p;
    }

    std::vector<LinPoly> row_polys() const {
        std::vector<LinPoly> out;
        out.reserve(rows_.size());
        for (int i = 0; i < rank(); ++i) out.push_back(row_poly(i));
        return out;
    }

    friend bool operator==(const JordanForm& a, const JordanForm& b) {
        if (a.rows_.size() != b.rows_.size()) return false;
        for (size_t i = 0; i < a.rows_.size(); ++i)
            if (a.rows_[i].pivot != b.rows_[i].pivot || a.rows_[i].tail != b.rows_[i].tail)
                return false;
        return true;
    }

private:
    std::vector<Row> rows_;  // sorted by pivot ascending

    friend class JordanBuilder;
};

// Substitute every pivot x_{k_i} of J occurring in p by its tail U_i.
// Tails are pivot-free, so a single pass eliminates all pivots.
inline LinPoly reduce_poly(const LinPoly& p, const JordanForm& J) {
    LinPoly r = p;
    for (const auto& row : J.rows()) {
        Rational c = r.coeff(row.pivot);
        if (c.is_zero()) continue;
        r.erase_term(row.pivot);
        LinPoly scaled = row.tail;
        scaled *= c;
        r += scaled;
    }
    return r;
}

// Incremental Gauss-Jordan elimination to reduced row-echelon form.
// In the affine mode a row that reduces to a nonzero constant marks the
// system inconsistent.
class JordanBuilder {
public:
    // Returns false iff the system became inconsistent (affine input only).
    bool add(const LinPoly& eq) {
        if (inconsistent_) return false;
        LinPoly r = eq;
        for (auto& [pivot, row] : rows_) {
            Rational c = r.coeff(pivot);
            if (c.is_zero()) continue;
            LinPoly scaled = row;
            scaled *= c;
            r -= scaled;  // row has coefficient 1 on pivot
        }
        if (r.is_zero()) return true;
        if (r.is_constant()) {
            inconsistent_ = true;
            return false;
        }
        VarId pivot = r.leading_var();
        r *= r.coeff(pivot).inverse();
        for (auto& [p, row] : rows_) {
            Rational c = row.coeff(pivot);
            if (c.is_zero()) continue;
            LinPoly scaled = r;
            scaled *= c;
            row -= scaled;
        }
        rows_.emplace(pivot, std::move(r));
        return true;
    }

    bool inconsistent() const { return inconsistent_; }

    JordanForm form() const {
        JordanForm J;
        for (const auto& [pivot, row] : rows_) {
            LinPoly tail = LinPoly::variable(pivot) - row;  // U = x_pivot - row
            J.rows_.push_back({pivot, std::move(tail)});
        }
        return J;
    }

private:
    std::map<VarId, LinPoly> rows_;  // pivot -> row poly (pivot coeff 1)
    bool inconsistent_ = false;
};

// RREF of a homogeneous system. Empty input yields the empty form, rank 0.
inline JordanForm gauss_jordan(const std::vector<LinPoly>& eqs) {
    JordanBuilder b;
    for (const auto& e : eqs) b.add(e);
    return b.form();
}

// RREF of an affine system; nullopt when the system has no solution.
inline std::optional<JordanForm> gauss_jordan_affine(const std::vector<LinPoly>& eqs) {
    JordanBuilder b;
    for (const auto& e : eqs)
        if (!b.add(e)) return std::nullopt;
    return b.form();
}

// Dimension reduction: reduce every member of the inequality-side polynomial
// set by the Jordan normal form of the equality set. The remainder is a set:
// zero results and exact duplicates are dropped (first occurrence kept).
struct DimensionReduction {
    JordanForm jordan;
    std::vector<LinPoly> remainder;
    std::vector<int> source;  // remainder index -> index into s_f
};

inline DimensionReduction dimension_reduce(const std::vector<LinPoly>& s_f,
                                           const std::vector<LinPoly>& e) {
    DimensionReduction out;
    out.jordan = gauss_jordan(e);
    for (int i = 0; i < static_cast<int>(s_f.size()); ++i) {
        LinPoly r = reduce_poly(s_f[i], out.jordan);
        if (r.is_zero()) continue;
        if (std::find(out.remainder.begin(), out.remainder.end(), r) != out.remainder.end())
            continue;
        out.remainder.push_back(std::move(r));
        out.source.push_back(i);
    }
    return out;
}

}  // namespace entroproof
