// analytic.hpp -- closed-form families solved by recurrence: the two-letter
// chain, the repeated-letter induction case, and the a^k b^k c system with
// its factorial closed forms; each is cross-checked against the generic
// solver on the identical system.

#pragma once

#include <moments/moment_system.hpp>

#include <string>
#include <vector>

namespace moments {

struct TwoLetterChainReport {
    int k = 0;
    int m = 0;
    bool coefficients_match = false;  // every row carries (k+1-r) and r
    std::string detail;
    Verdict verdict;

    bool pass() const { return coefficients_match && verdict.nullity == 0; }
};

/// W = a^{2k+1-m} b^m at split k.  Row r couples Q(r) and Q(r-1) with
/// coefficients (k+1-r) and r; the chain forces every value to zero.
inline TwoLetterChainReport two_letter_chain(int k, int m) {
    if (k < 1 || m < 0 || m > k) throw std::invalid_argument("parameter out of range");
    const MultisetWord W = MultisetWord::repeated(0, 2 * k + 1 - m).concat(MultisetWord::repeated(1, m));
    const EquationSystem sys = build_system(W, k);
    const IntMatrix dense = sys.dense();

    TwoLetterChainReport rep;
    rep.k = k;
    rep.m = m;
    rep.coefficients_match = sys.rows() == m + 1;
    if (!rep.coefficients_match) rep.detail = "unexpected row count";

    auto col_of_left = [&](const MultisetWord& left) {
        for (int c = 0; c < sys.cols(); ++c)
            if (sys.unknowns[c].left == left) return c;
        return -1;
    };

    for (int row = 0; rep.coefficients_match && row < sys.rows(); ++row) {
        const int r = sys.row_words[row].count(1);
        // high term: coefficient (k+1-r) on left word a^{k-r} b^r
        const MultisetWord high = MultisetWord::repeated(0, k - r).concat(MultisetWord::repeated(1, r));
        // low term: coefficient r on left word a^{k+1-r} b^{r-1}
        std::int64_t expect_sum = k + 1;
        bool ok = dense(row, col_of_left(high)) == k + 1 - r;
        if (r >= 1) {
            const MultisetWord low =
                MultisetWord::repeated(0, k + 1 - r).concat(MultisetWord::repeated(1, r - 1));
            ok = ok && dense(row, col_of_left(low)) == r;
        }
        ok = ok && dense.row(row).sum() == expect_sum;
        if (!ok) {
            rep.coefficients_match = false;
            rep.detail = "row " + sys.row_words[row].str() + " does not match (k+1-r, r)";
        }
    }
    rep.verdict = solve_system(sys);
    return rep;
}

struct InductionReport {
    int k = 0;
    MultisetWord x;
    bool base_row_matches = false;  // single coefficient k+1
    bool step_rows_match = false;   // coefficients (k, 1)
    Verdict verdict;

    bool pass() const { return base_row_matches && step_rows_match && verdict.nullity == 0; }
};

/// W = a^{k+1} x_k at split k, with x_k a length-k word avoiding the letter a.
/// The base row pins (a^k; a x_k) with coefficient k+1; every one-letter row
/// then chains with coefficients (k, 1), and the whole family collapses to
/// zero.
inline InductionReport induction_case(int k, const MultisetWord& x_k) {
    if (k < 1) throw std::invalid_argument("parameter out of range");
    if (x_k.length() != k) throw std::invalid_argument("x must have length k");
    if (x_k.count(0) > 0) throw std::invalid_argument("letter a must not occur in x");

    const MultisetWord a_block = MultisetWord::repeated(0, k + 1);
    const MultisetWord W = a_block.concat(x_k);
    const EquationSystem sys = build_system(W, k);
    const IntMatrix dense = sys.dense();

    auto col_of_left = [&](const MultisetWord& left) {
        for (int c = 0; c < sys.cols(); ++c)
            if (sys.unknowns[c].left == left) return c;
        return -1;
    };

    InductionReport rep;
    rep.k = k;
    rep.x = x_k;

    const int base_col = col_of_left(MultisetWord::repeated(0, k));
    rep.base_row_matches = base_col >= 0;
    rep.step_rows_match = true;
    for (int row = 0; row < sys.rows(); ++row) {
        const MultisetWord& w1 = sys.row_words[row];
        if (w1.count(0) == k + 1) {
            rep.base_row_matches = rep.base_row_matches && dense(row, base_col) == k + 1 &&
                                   dense.row(row).sum() == k + 1;
        } else if (w1.count(0) == k) {
            const Letter beta = w1.quotient(MultisetWord::repeated(0, k)).letters().front();
            const MultisetWord step_left =
                MultisetWord::repeated(0, k - 1).concat(MultisetWord::repeated(beta, 1));
            rep.step_rows_match = rep.step_rows_match && dense(row, col_of_left(step_left)) == k &&
                                  dense(row, base_col) == 1;
        }
    }
    rep.verdict = solve_system(sys);
    return rep;
}

/// A value carried symbolically as a rational combination of the two free
/// parameters of the a^k b^k c family.
struct SymbolicValue {
    Rational p0;
    Rational q0;

    friend bool operator==(const SymbolicValue&, const SymbolicValue&) = default;
    SymbolicValue operator*(const Rational& s) const { return {p0 * s, q0 * s}; }
    SymbolicValue operator+(const SymbolicValue& o) const { return {p0 + o.p0, q0 + o.q0}; }
};

struct ClosedFormReport {
    int k = 0;
    std::vector<SymbolicValue> p;  // p[r], r = 0..k, from the first recurrence
    std::vector<SymbolicValue> q;  // q[r], r = 0..k-1, from the second
    bool p_matches_formula = false;
    bool q_matches_formula = false;
    bool formula_residuals_zero = false;  // closed forms substituted back into the recurrences
    bool boundary_forces_zero = false;    // the two extreme rows leave only P0 = Q0 = 0
    Verdict generic;                      // generic solver on the same system
    bool analytic_all_zero = false;

    bool pass() const {
        return p_matches_formula && q_matches_formula && formula_residuals_zero &&
               boundary_forces_zero && generic.nullity == 0 &&
               analytic_all_zero == generic.all_moments_zero;
    }
};

/// W = a^k b^k c at split k.  The two value chains
///   (k-r) P_{r+1} + (r+1) P_r = 0
///   (k-r) Q_r + r Q_{r-1} + P_r = 0       (r = 1..k-1)
/// are solved symbolically over the free pair (P0, Q0), compared term-by-term
/// with the factorial closed forms
///   P_r = (-1)^r r!(k-r)!/k! P0
///   Q_r = (-1)^r r!(k-r-1)!/(k-1)! (-r P0/k + Q0)
/// and closed against the boundary rows r=0 and r=k, which force P0 = Q0 = 0.
inline ClosedFormReport akbkc_closed_forms(int k) {
    if (k < 1) throw std::invalid_argument("parameter out of range");

    ClosedFormReport rep;
    rep.k = k;

    rep.p.assign(k + 1, SymbolicValue{});
    rep.p[0] = SymbolicValue{1, 0};
    for (int r = 0; r < k; ++r) rep.p[r + 1] = rep.p[r] * (Rational(-(r + 1)) / (k - r));

    rep.q.assign(k, SymbolicValue{});
    rep.q[0] = SymbolicValue{0, 1};
    for (int r = 1; r < k; ++r)
        rep.q[r] = (rep.q[r - 1] * Rational(-r) + rep.p[r] * Rational(-1)) * (Rational(1) / (k - r));

    auto factorial = [](int n) {
        Rational f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };

    rep.p_matches_formula = true;
    for (int r = 0; r <= k; ++r) {
        const Rational coeff = (r % 2 ? -1 : 1) * factorial(r) * factorial(k - r) / factorial(k);
        if (rep.p[r] != SymbolicValue{coeff, 0}) rep.p_matches_formula = false;
    }
    rep.q_matches_formula = true;
    for (int r = 0; r < k; ++r) {
        const Rational scale = (r % 2 ? -1 : 1) * factorial(r) * factorial(k - r - 1) / factorial(k - 1);
        const SymbolicValue expect{scale * Rational(-r) / k, scale};
        if (rep.q[r] != expect) rep.q_matches_formula = false;
    }

    // Substitute the closed forms back into both recurrences.
    rep.formula_residuals_zero = true;
    for (int r = 0; r < k; ++r) {
        const SymbolicValue res = rep.p[r + 1] * Rational(k - r) + rep.p[r] * Rational(r + 1);
        if (res != SymbolicValue{0, 0}) rep.formula_residuals_zero = false;
    }
    for (int r = 1; r < k; ++r) {
        const SymbolicValue res =
            rep.q[r] * Rational(k - r) + rep.q[r - 1] * Rational(r) + rep.p[r];
        if (res != SymbolicValue{0, 0}) rep.formula_residuals_zero = false;
    }

    // Boundary rows: r=0 gives k Q0 + P0 = 0; r=k gives k Q_{k-1} + P_k = 0,
    // which simplifies to (-1)^k k (P0 - Q0) = 0.
    const SymbolicValue b1 = rep.q[0] * Rational(k) + rep.p[0];
    const SymbolicValue b2 = rep.q[k - 1] * Rational(k) + rep.p[k];
    const int sgn = k % 2 ? -1 : 1;
    const bool b2_simplifies = b2 == SymbolicValue{Rational(sgn * k), Rational(-sgn * k)};
    RationalMatrix boundary(2, 2);
    boundary(0, 0) = b1.p0;
    boundary(0, 1) = b1.q0;
    boundary(1, 0) = b2.p0;
    boundary(1, 1) = b2.q0;
    rep.boundary_forces_zero = b2_simplifies && rational_rank(boundary) == 2;
    rep.analytic_all_zero = rep.boundary_forces_zero;

    const MultisetWord W = MultisetWord::repeated(0, k)
                               .concat(MultisetWord::repeated(1, k))
                               .concat(MultisetWord::repeated(2, 1));
    rep.generic = solve_system(build_system(W, k));
    return rep;
}

}  // namespace moments
