#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linpoly.hpp"

namespace entroproof {

// Atom count is 2^n - 1, so the universe size is capped hard.
inline constexpr int kMaxRandomVariables = 16;

// Bitmask over random variables: bit (i-1) set means X_i is in the set.
using VarSet = std::uint32_t;

inline int set_cardinality(VarSet s) { return std::popcount(s); }

inline VarSet full_set(int n) { return (VarSet{1} << n) - 1; }

// An I-measure atom named by its canonical subscript sequence: positions
// j in the atom's index set S carry j, positions outside S carry min(S).
class SVar {
public:
    static SVar from_atom(VarSet s, int n) {
        if (s == 0) throw std::invalid_argument("SVar: the empty atom is excluded");
        if (n < 1 || n > kMaxRandomVariables || s > full_set(n))
            throw std::invalid_argument("SVar: atom outside the universe");
        SVar t;
        t.subs_.resize(n);
        int min_s = std::countr_zero(s) + 1;
        for (int j = 1; j <= n; ++j) t.subs_[j - 1] = (s >> (j - 1)) & 1 ? j : min_s;
        return t;
    }

    // Rejects sequences that are not the canonical encoding of any atom.
    static SVar from_subscripts(const std::vector<int>& subs) {
        int n = static_cast<int>(subs.size());
        VarSet s = 0;
        for (int j = 1; j <= n; ++j) {
            if (subs[j - 1] < 1 || subs[j - 1] > n)
                throw std::invalid_argument("SVar: subscript out of range");
            if (subs[j - 1] == j) s |= VarSet{1} << (j - 1);
        }
        // min(S) positions encode themselves, so S is recoverable; re-encode
        // and compare to catch non-canonical sequences.
        if (s == 0) throw std::invalid_argument("SVar: non-canonical subscript sequence");
        SVar t = from_atom(s, n);
        if (t.subs_ != subs) throw std::invalid_argument("SVar: non-canonical subscript sequence");
        return t;
    }

    int n() const { return static_cast<int>(subs_.size()); }
    const std::vector<int>& subscripts() const { return subs_; }

    // The atom's index set S (subscript set of the sequence).
    VarSet atom() const {
        VarSet s = 0;
        for (int j = 1; j <= n(); ++j)
            if (subs_[j - 1] == j) s |= VarSet{1} << (j - 1);
        return s;
    }

    int cardinality() const { return set_cardinality(atom()); }

    // s-variable order: t1 > t2 when t1's subscript set is larger, or equal
    // cardinality and t1's sequence is lexicographically smaller.
    friend bool precedes(const SVar& a, const SVar& b) {
        int ca = a.cardinality(), cb = b.cardinality();
        if (ca != cb) return ca > cb;
        return a.subs_ < b.subs_;
    }

    friend bool operator==(const SVar& a, const SVar& b) { return a.subs_ == b.subs_; }

    std::string str() const {
        std::ostringstream os;
        os << "s_{";
        for (int j = 0; j < n(); ++j) {
            if (j) os << ",";
            os << subs_[j];
        }
        os << "}";
        return os.str();
    }

private:
    std::vector<int> subs_;
};

// The ordered variable universe: all 2^n - 1 s-variables sorted by the
// s-variable order. Position in the sequence is the VarId used everywhere.
class SVarSequence {
public:
    explicit SVarSequence(int n) : n_(n) {
        if (n < 1 || n > kMaxRandomVariables)
            throw std::invalid_argument("SVarSequence: n out of range");
        for (VarSet s = 1; s <= full_set(n); ++s) vars_.push_back(SVar::from_atom(s, n));
        std::sort(vars_.begin(), vars_.end(),
                  [](const SVar& a, const SVar& b) { return precedes(a, b); });
        index_by_atom_.assign(full_set(n) + 1, -1);
        for (int i = 0; i < static_cast<int>(vars_.size()); ++i)
            index_by_atom_[vars_[i].atom()] = i;
    }

    int n() const { return n_; }
    int size() const { return static_cast<int>(vars_.size()); }
    const std::vector<SVar>& vars() const { return vars_; }
    const SVar& var(VarId id) const { return vars_.at(id); }
    VarId id_of_atom(VarSet s) const { return index_by_atom_.at(s); }

    std::string name(VarId id) const { return vars_.at(id).str(); }
    std::function<std::string(VarId)> namer() const {
        return [this](VarId v) { return name(v); };
    }

private:
    int n_;
    std::vector<SVar> vars_;
    std::vector<VarId> index_by_atom_;
};

// A Shannon measure I(X_G; X_G' | X_G''), with entropy as the case G' = G.
// Canonical: the conditioning set is disjoint from both argument sets.
struct MeasureTerm {
    VarSet g = 0;
    VarSet gp = 0;
    VarSet gpp = 0;

    bool is_entropy() const { return g == gp; }

    // H(A|C) and I(A;B|C) after removing conditioned indices from the
    // argument sets; nullopt when the measure is identically zero.
    static std::optional<MeasureTerm> entropy(VarSet a, VarSet c = 0) {
        a &= ~c;
        if (a == 0) return std::nullopt;
        return MeasureTerm{a, a, c};
    }
    static std::optional<MeasureTerm> mutual(VarSet a, VarSet b, VarSet c = 0) {
        a &= ~c;
        b &= ~c;
        if (a == 0 || b == 0) return std::nullopt;
        return MeasureTerm{a, b, c};
    }

    friend bool operator==(const MeasureTerm&, const MeasureTerm&) = default;
    friend auto operator<=>(const MeasureTerm&, const MeasureTerm&) = default;
};

// Sum of the atoms S with S meeting G, S meeting G', and S avoiding G''.
inline LinPoly expand_measure(const MeasureTerm& m, const SVarSequence& seq) {
    LinPoly p;
    for (VarSet s = 1; s <= full_set(seq.n()); ++s) {
        if ((s & m.g) && (s & m.gp) && !(s & m.gpp))
            p.add_term(seq.id_of_atom(s), Rational(1));
    }
    return p;
}

// The elemental inequalities: H(X_i | X_{N-i}) >= 0 for each i, and
// I(X_i; X_j | X_K) >= 0 for i < j, K a subset of the remaining indices.
// Total count: n + C(n,2) * 2^(n-2).
inline std::vector<MeasureTerm> elemental_measures(int n) {
    if (n < 2) throw std::invalid_argument("elemental_measures: need n >= 2");
    if (n > kMaxRandomVariables) throw std::invalid_argument("elemental_measures: n out of range");
    std::vector<MeasureTerm> out;
    VarSet all = full_set(n);
    for (int i = 1; i <= n; ++i) {
        VarSet xi = VarSet{1} << (i - 1);
        out.push_back(*MeasureTerm::entropy(xi, all & ~xi));
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            VarSet xi = VarSet{1} << (i - 1), xj = VarSet{1} << (j - 1);
            VarSet rest = all & ~(xi | xj);
            // enumerate K over subsets of rest
            VarSet k = 0;
            while (true) {
                out.push_back(*MeasureTerm::mutual(xi, xj, k));
                if (k == rest) break;
                k = (k - rest) & rest;  // next subset of rest
            }
        }
    }
    return out;
}

inline std::vector<LinPoly> elemental_inequalities(const SVarSequence& seq) {
    std::vector<LinPoly> out;
    for (const auto& m : elemental_measures(seq.n())) out.push_back(expand_measure(m, seq));
    return out;
}

// --- Joint-entropy coordinates (direct-LP baseline only) -------------------
//
// Coordinate VarId for the joint entropy H(X_G) is mask(G) - 1.

inline VarId entropy_coord(VarSet g) { return static_cast<VarId>(g) - 1; }

// I(X_G;X_G'|X_G'') = H(G u G'') + H(G' u G'') - H(G u G' u G'') - H(G''),
// with H of the empty set dropped.
inline LinPoly joint_entropy_vector(const std::vector<std::pair<Rational, MeasureTerm>>& expr) {
    LinPoly p;
    auto add = [&p](VarSet g, const Rational& c) {
        if (g != 0) p.add_term(entropy_coord(g), c);
    };
    for (const auto& [c, m] : expr) {
        add(m.g | m.gpp, c);
        add(m.gp | m.gpp, c);
        add(m.g | m.gp | m.gpp, -c);
        add(m.gpp, -c);
    }
    return p;
}

}  // namespace entroproof
