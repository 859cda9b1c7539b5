// words.hpp -- multiset words over a dense letter alphabet, exponent patterns,
// and deterministic sub-multiset enumeration.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moments {

/// Letters are dense non-negative ids; 0, 1, 2, ... print as a, b, c, ...
using Letter = int;

/// A finite multiset of letters.  Order of letters never matters; two words
/// with equal multiplicity maps are equal.  The empty word is the null word
/// and prints as "0".
class MultisetWord {
public:
    MultisetWord() = default;

    explicit MultisetWord(std::vector<int> counts) : counts_(std::move(counts)) {
        for (int c : counts_) {
            if (c < 0) throw std::invalid_argument("negative letter multiplicity");
        }
        trim();
    }

    /// Accepts letter-run form ("aab"), run-length form ("a2b1"), or any mix;
    /// "0" denotes the null word.  Multiplicities of repeated letters add up.
    static MultisetWord parse(std::string_view text) {
        if (text == "0") return MultisetWord{};
        if (text.empty()) throw std::invalid_argument("empty word string");
        std::vector<int> counts;
        std::size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c < 'a' || c > 'z')
                throw std::invalid_argument("invalid word character: " + std::string(1, c));
            Letter id = c - 'a';
            ++i;
            long mult = 1;
            if (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                mult = 0;
                while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                    mult = mult * 10 + (text[i] - '0');
                    if (mult > 1'000'000) throw std::invalid_argument("letter multiplicity too large");
                    ++i;
                }
                if (mult == 0) throw std::invalid_argument("zero letter multiplicity");
            }
            if (id >= static_cast<int>(counts.size())) counts.resize(id + 1, 0);
            counts[id] += static_cast<int>(mult);
        }
        return MultisetWord(std::move(counts));
    }

    /// The word a b c ... with n distinct letters, one copy each.
    static MultisetWord all_distinct(int n) {
        if (n < 0) throw std::invalid_argument("negative word length");
        return MultisetWord(std::vector<int>(n, 1));
    }

    /// The word consisting of `count` copies of one letter.
    static MultisetWord repeated(Letter a, int count) {
        if (a < 0) throw std::invalid_argument("negative letter id");
        if (count < 0) throw std::invalid_argument("negative multiplicity");
        std::vector<int> counts(a + 1, 0);
        counts[a] = count;
        return MultisetWord(std::move(counts));
    }

    int length() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }
    bool empty() const { return counts_.empty(); }

    int count(Letter a) const {
        return (a >= 0 && a < static_cast<int>(counts_.size())) ? counts_[a] : 0;
    }

    /// One past the highest letter id present (0 for the null word).
    int alphabet_size() const { return static_cast<int>(counts_.size()); }

    /// Distinct letters present, ascending.
    std::vector<Letter> letters() const {
        std::vector<Letter> out;
        for (int a = 0; a < alphabet_size(); ++a)
            if (counts_[a] > 0) out.push_back(a);
        return out;
    }

    int distinct_letter_count() const {
        return static_cast<int>(std::count_if(counts_.begin(), counts_.end(),
                                              [](int c) { return c > 0; }));
    }

    bool contains(const MultisetWord& sub) const {
        for (int a = 0; a < sub.alphabet_size(); ++a)
            if (sub.count(a) > count(a)) return false;
        return true;
    }

    /// Removes the sub-multiset s count-wise.
    MultisetWord quotient(const MultisetWord& s) const {
        if (!contains(s)) throw std::invalid_argument("not a sub-multiset");
        std::vector<int> out(counts_);
        for (int a = 0; a < s.alphabet_size(); ++a) out[a] -= s.count(a);
        return MultisetWord(std::move(out));
    }

    /// Removes one copy of `a`; also returns the multiplicity `a` had here
    /// (the coefficient a letter derivative contributes).
    std::pair<MultisetWord, int> remove_one(Letter a) const {
        int m = count(a);
        if (m == 0) throw std::invalid_argument("letter not present");
        std::vector<int> out(counts_);
        out[a] -= 1;
        return {MultisetWord(std::move(out)), m};
    }

    /// Multiset union (adds multiplicities).
    MultisetWord concat(const MultisetWord& other) const {
        std::vector<int> out(std::max(counts_.size(), other.counts_.size()), 0);
        for (std::size_t a = 0; a < out.size(); ++a)
            out[a] = count(static_cast<Letter>(a)) + other.count(static_cast<Letter>(a));
        return MultisetWord(std::move(out));
    }

    /// Canonical run-length form with explicit multiplicities: "a3b2c1".
    std::string str() const {
        if (empty()) return "0";
        std::string out;
        for (int a = 0; a < alphabet_size(); ++a) {
            if (counts_[a] == 0) continue;
            out += letter_char(a);
            out += std::to_string(counts_[a]);
        }
        return out;
    }

    /// Expanded form "aaabbc"; used in moment labels.
    std::string letter_runs() const {
        if (empty()) return "0";
        std::string out;
        for (int a = 0; a < alphabet_size(); ++a)
            out.append(counts_[a], letter_char(a));
        return out;
    }

    const std::vector<int>& counts() const { return counts_; }

    friend bool operator==(const MultisetWord& x, const MultisetWord& y) {
        return x.counts_ == y.counts_;
    }

    /// Total order matching the enumeration order below: words richer in
    /// earlier letters sort first, so same-length words compare like their
    /// expanded alphabetical spelling (aa < ab < ac < bb < bc).
    friend std::strong_ordering operator<=>(const MultisetWord& x, const MultisetWord& y) {
        int n = std::max(x.alphabet_size(), y.alphabet_size());
        for (int a = 0; a < n; ++a) {
            int cx = x.count(a), cy = y.count(a);
            if (cx != cy) return cx > cy ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

private:
    static char letter_char(Letter a) {
        if (a >= 26) throw std::domain_error("letter id beyond z");
        return static_cast<char>('a' + a);
    }

    void trim() {
        while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
    }

    std::vector<int> counts_;  // index = letter id
};

/// Exponent signature of a word: multiplicities sorted non-increasing.
/// a3b2c1d1 and d3c2a1b1 share the pattern 3+2+1+1.
struct Pattern {
    std::vector<int> exponents;

    int total() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (i) out += '+';
            out += std::to_string(exponents[i]);
        }
        return out;
    }

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

inline Pattern canonical_pattern(const MultisetWord& w) {
    if (w.empty()) throw std::invalid_argument("empty word");
    std::vector<int> exps;
    for (int c : w.counts())
        if (c > 0) exps.push_back(c);
    std::sort(exps.begin(), exps.end(), std::greater<int>());
    return Pattern{std::move(exps)};
}

/// All distinct sub-multisets of w with exactly r letters, each once.
/// Order is deterministic: the count of the earliest letter runs from its
/// maximum feasible value down to its minimum, then recursively onward, which
/// lists same-size subsets in alphabetical order of their expanded spelling.
inline std::vector<MultisetWord> sub_multisets(const MultisetWord& w, int r) {
    if (r < 0 || r > w.length()) throw std::invalid_argument("subset size exceeds word");
    int n = w.alphabet_size();
    std::vector<int> suffix_cap(n + 1, 0);
    for (int a = n - 1; a >= 0; --a) suffix_cap[a] = suffix_cap[a + 1] + w.count(a);

    std::vector<MultisetWord> out;
    std::vector<int> pick(n, 0);
    auto rec = [&](auto&& self, int a, int remaining) -> void {
        if (a == n) {
            out.push_back(MultisetWord(pick));
            return;
        }
        int hi = std::min(w.count(a), remaining);
        int lo = std::max(0, remaining - suffix_cap[a + 1]);
        for (int c = hi; c >= lo; --c) {
            pick[a] = c;
            self(self, a + 1, remaining - c);
        }
        pick[a] = 0;
    };
    rec(rec, 0, r);
    return out;
}

/// Integer partitions of `total` as Patterns, in descending lexicographic
/// order: 5, 4+1, 3+2, 3+1+1, 2+2+1, 2+1+1+1, 1+1+1+1+1.
inline std::vector<Pattern> partitions(int total) {
    if (total < 0) throw std::invalid_argument("negative partition total");
    std::vector<Pattern> out;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(Pattern{parts});
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            parts.push_back(p);
            self(self, remaining - p, p);
            parts.pop_back();
        }
    };
    rec(rec, total, total);
    return out;
}

/// One representative word per pattern: letter i receives exponents[i], so
/// the earliest letter carries the largest exponent (3+2 -> a3b2).
inline MultisetWord representative_word(const Pattern& p) {
    for (int e : p.exponents)
        if (e <= 0) throw std::invalid_argument("pattern exponents must be positive");
    return MultisetWord(p.exponents);
}

}  // namespace moments
