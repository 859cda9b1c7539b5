// moment_system.hpp -- word-indexed linear systems over integral moments:
// each combined word W and split length k yields one homogeneous system whose
// unknowns are the moments (left; right) with left a k-sub-multiset of W.

#pragma once

#include <moments/linalg.hpp>
#include <moments/words.hpp>

#include <map>
#include <string>
#include <vector>

namespace moments {

/// An integral moment (left; right): left and right are multiset words whose
/// union is the combined word of the system.  The pair is ordered, so
/// (aa; bb) and (bb; aa) are distinct unknowns.
struct Moment {
    MultisetWord left;
    MultisetWord right;

    std::string label() const { return "(" + left.letter_runs() + ";" + right.letter_runs() + ")"; }

    friend bool operator==(const Moment&, const Moment&) = default;
    friend auto operator<=>(const Moment&, const Moment&) = default;
};

struct SparseEntry {
    int row;
    int col;
    int coeff;  // a letter multiplicity, 1 <= coeff <= k+1
};

struct EquationSystem {
    MultisetWord combined;
    Pattern pattern;
    int k = 0;
    std::vector<MultisetWord> row_words;  // (k+1)-sub-multisets of combined
    std::vector<Moment> unknowns;         // k-sub-multisets paired with complements
    std::vector<SparseEntry> entries;

    int rows() const { return static_cast<int>(row_words.size()); }
    int cols() const { return static_cast<int>(unknowns.size()); }

    IntMatrix dense() const {
        IntMatrix m = IntMatrix::Zero(rows(), cols());
        for (const auto& e : entries) m(e.row, e.col) += e.coeff;
        return m;
    }

    RationalMatrix dense_rational() const {
        RationalMatrix m(rows(), cols());
        m.setConstant(Rational(0));
        for (const auto& e : entries) m(e.row, e.col) += e.coeff;
        return m;
    }
};

struct Verdict {
    int rank = 0;
    int nullity = 0;
    std::vector<std::vector<Rational>> nullspace;  // over the unknown ordering
    bool conjecture_applicable = false;            // right words longer than left
    bool all_moments_zero = false;                 // nullity == 0
};

/// Builds the system for combined word W at split length k: one row per
/// (k+1)-sub-multiset w1, with complement w2 = W/w1; removing a letter a of
/// multiplicity m from w1 contributes coefficient m in the column of the
/// moment (w1/a; a.w2).
inline EquationSystem build_system(const MultisetWord& W, int k) {
    if (k < 0 || k > W.length()) throw std::invalid_argument("split too large");
    if (k == W.length()) throw std::invalid_argument("right word empty");

    EquationSystem sys;
    sys.combined = W;
    sys.pattern = canonical_pattern(W);
    sys.k = k;
    sys.row_words = sub_multisets(W, k + 1);

    const auto lefts = sub_multisets(W, k);
    std::map<MultisetWord, int> col_of;
    sys.unknowns.reserve(lefts.size());
    for (const auto& u : lefts) {
        col_of.emplace(u, static_cast<int>(sys.unknowns.size()));
        sys.unknowns.push_back(Moment{u, W.quotient(u)});
    }

    for (int r = 0; r < sys.rows(); ++r) {
        const MultisetWord& w1 = sys.row_words[r];
        for (Letter a : w1.letters()) {
            auto [left, mult] = w1.remove_one(a);
            sys.entries.push_back(SparseEntry{r, col_of.at(left), mult});
        }
    }
    return sys;
}

/// Exact rank/nullity over the rationals with a reduced nullspace basis;
/// every basis vector is re-checked against the system before returning.
inline Verdict solve_system(const EquationSystem& sys) {
    const RationalMatrix m = sys.dense_rational();
    Verdict v;
    v.rank = rational_rank(m);
    v.nullity = sys.cols() - v.rank;
    v.nullspace = rational_nullspace(m);
    if (static_cast<int>(v.nullspace.size()) != v.nullity)
        throw std::logic_error("nullspace dimension mismatch");
    for (const auto& vec : v.nullspace) {
        for (int i = 0; i < sys.rows(); ++i) {
            Rational dot = 0;
            for (int j = 0; j < sys.cols(); ++j) dot += m(i, j) * vec[j];
            if (dot != 0) throw std::logic_error("nullspace vector fails the system");
        }
    }
    v.conjecture_applicable = sys.combined.length() - sys.k > sys.k;
    v.all_moments_zero = v.nullity == 0;
    return v;
}

struct PatternVerdict {
    Pattern pattern;
    MultisetWord word;  // representative, largest exponent on the earliest letter
    Verdict verdict;
};

/// Solves one representative system per exponent pattern of the given total
/// length.  The conjecture holds for the sweep iff every pattern with
/// total_length >= 2k+1 comes back with nullity 0.
inline std::vector<PatternVerdict> sweep_patterns(int total_length, int k) {
    if (total_length < k + 1) throw std::invalid_argument("split too large");
    std::vector<PatternVerdict> out;
    for (const Pattern& p : partitions(total_length)) {
        MultisetWord w = representative_word(p);
        out.push_back(PatternVerdict{p, w, solve_system(build_system(w, k))});
    }
    return out;
}

}  // namespace moments
