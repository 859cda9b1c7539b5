// boundary.hpp -- edges of the vanishing claim: rank-limited systems where
// moments are related but free, and the antisymmetric rank-2 variant.

#pragma once

#include <moments/moment_system.hpp>

#include <string>
#include <vector>

namespace moments {

/// Same construction and solver as the generic path; the point is the
/// interpretation: with tensor rank pinned to length(W) - k, the verdict
/// exhibits the free directions whenever the right words are not longer
/// than the left ones.
inline Verdict rank_limited_system(const MultisetWord& W, int k) {
    return solve_system(build_system(W, k));
}

/// A rank-2 moment in antisymmetric canonical form: the right word is kept
/// sorted and `sign` carries the swap parity; a repeated right letter makes
/// the moment identically zero (sign 0).
struct SignedMoment {
    Moment base;
    int sign = 0;
};

inline SignedMoment canonical_signed(const MultisetWord& left, Letter i, Letter j) {
    if (i == j) return SignedMoment{Moment{left, MultisetWord::repeated(i, 2)}, 0};
    const MultisetWord right =
        MultisetWord::repeated(std::min(i, j), 1).concat(MultisetWord::repeated(std::max(i, j), 1));
    return SignedMoment{Moment{left, right}, i < j ? 1 : -1};
}

struct AntisymReport {
    MultisetWord word;
    std::vector<MultisetWord> row_words;
    std::vector<Moment> unknowns;       // moments surviving canonicalization
    std::vector<std::string> dropped;   // labels of identically-zero moments
    std::vector<SparseEntry> entries;   // signed coefficients
    Verdict verdict;
    bool degenerate = false;            // some moment vanished identically

    RationalMatrix dense_rational() const {
        RationalMatrix m(static_cast<int>(row_words.size()), static_cast<int>(unknowns.size()));
        m.setConstant(Rational(0));
        for (const auto& e : entries) m(e.row, e.col) += e.coeff;
        return m;
    }
};

/// The [w_L] = 1 system of a length-3 word for an antisymmetric rank-2
/// tensor.  Moments with a repeated right letter vanish identically and are
/// removed; the rest carry swap-parity signs.  For all-distinct W the verdict
/// has nullity 1 with the cyclic equality (a;bc) = (b;ca) = (c;ab).
inline AntisymReport antisymmetric_system(const MultisetWord& W) {
    if (W.length() != 3) throw std::invalid_argument("antisymmetric case needs a length-3 word");
    constexpr int k = 1;

    AntisymReport rep;
    rep.word = W;
    rep.row_words = sub_multisets(W, k + 1);

    std::map<Moment, int> col_of;
    for (const auto& u : sub_multisets(W, k)) {
        const MultisetWord right = W.quotient(u);
        const auto letters = right.letters();
        const Letter i = letters.front();
        const Letter j = letters.back();
        const SignedMoment sm = canonical_signed(u, i, j);
        if (sm.sign == 0) {
            rep.dropped.push_back(Moment{u, right}.label());
            continue;
        }
        col_of.emplace(sm.base, static_cast<int>(rep.unknowns.size()));
        rep.unknowns.push_back(sm.base);
    }
    rep.degenerate = !rep.dropped.empty();

    for (int r = 0; r < static_cast<int>(rep.row_words.size()); ++r) {
        const MultisetWord& w1 = rep.row_words[r];
        const MultisetWord w2 = W.quotient(w1);  // single letter
        const Letter t = w2.letters().front();
        for (Letter a : w1.letters()) {
            auto [left, mult] = w1.remove_one(a);
            const SignedMoment sm = canonical_signed(left, a, t);
            if (sm.sign == 0) continue;  // repeated antisymmetric indices
            rep.entries.push_back(SparseEntry{r, col_of.at(sm.base), mult * sm.sign});
        }
    }

    const RationalMatrix m = rep.dense_rational();
    Verdict v;
    v.rank = rational_rank(m);
    v.nullity = static_cast<int>(rep.unknowns.size()) - v.rank;
    v.nullspace = rational_nullspace(m);
    v.conjecture_applicable = W.length() - k > k;
    v.all_moments_zero = v.nullity == 0;
    rep.verdict = std::move(v);
    return rep;
}

}  // namespace moments
