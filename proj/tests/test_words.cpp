#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <moments/words.hpp>

#include <algorithm>
#include <map>
#include <random>

using namespace moments;

namespace {

// Independent oracle: the number of r-sub-multisets of a word with letter
// multiplicities m_i is the degree-r coefficient of prod_i (1 + x + ... + x^{m_i}).
long long subset_count_oracle(const MultisetWord& w, int r) {
    std::vector<long long> poly{1};
    for (int a = 0; a < w.alphabet_size(); ++a) {
        int m = w.count(a);
        if (m == 0) continue;
        std::vector<long long> next(poly.size() + m, 0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (int j = 0; j <= m; ++j) next[i + j] += poly[i];
        poly = std::move(next);
    }
    return r < static_cast<int>(poly.size()) ? poly[r] : 0;
}

MultisetWord random_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> nletters(1, 4);
    int n = nletters(rng);
    std::vector<int> counts(n, 0);
    std::uniform_int_distribution<int> len(1, max_len);
    int total = len(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < total; ++i) counts[pick(rng)]++;
    return MultisetWord(counts);
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

}  // namespace

TEST_CASE("parsing accepts letter-run and run-length forms") {
    CHECK(MultisetWord::parse("aab") == MultisetWord::parse("a2b"));
    CHECK(MultisetWord::parse("aab") == MultisetWord::parse("b1a2"));
    CHECK(MultisetWord::parse("a3b2c1") == MultisetWord::parse("cbbaaa"));
    CHECK(MultisetWord::parse("0").empty());
    CHECK(MultisetWord::parse("a12").length() == 12);
    CHECK_THROWS_AS(MultisetWord::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(MultisetWord::parse("a0"), std::invalid_argument);
    CHECK_THROWS_AS(MultisetWord::parse("A2"), std::invalid_argument);
    CHECK_THROWS_AS(MultisetWord::parse("a2?"), std::invalid_argument);
}

TEST_CASE("canonical serialization is run-length with explicit counts") {
    CHECK(MultisetWord::parse("bbaaa").str() == "a3b2");
    CHECK(MultisetWord::parse("abc").str() == "a1b1c1");
    CHECK(MultisetWord{}.str() == "0");
    CHECK(MultisetWord::parse("a3b2c1").letter_runs() == "aaabbc");
    CHECK(MultisetWord::parse(MultisetWord::parse("cbbaaa").str()) == MultisetWord::parse("cbbaaa"));
}

TEST_CASE("word equality ignores input order") {
    CHECK(MultisetWord::parse("ab") == MultisetWord::parse("ba"));
    CHECK(MultisetWord::parse("aab") != MultisetWord::parse("abb"));
    CHECK(MultisetWord::parse("ab").length() == 2);
    CHECK(MultisetWord::parse("a2b3").count(1) == 3);
    CHECK(MultisetWord::parse("a2b3").count(5) == 0);
}

TEST_CASE("canonical_pattern reads off sorted multiplicities") {
    CHECK(canonical_pattern(MultisetWord::parse("a3b2cd")).exponents == std::vector<int>{3, 2, 1, 1});
    CHECK(canonical_pattern(MultisetWord::parse("abc")).exponents == std::vector<int>{1, 1, 1});
    CHECK(canonical_pattern(MultisetWord::parse("b2a3")).exponents == std::vector<int>{3, 2});
    CHECK(canonical_pattern(MultisetWord::parse("b2a3")).str() == "3+2");
    CHECK_THROWS_WITH_AS(canonical_pattern(MultisetWord{}), "empty word", std::invalid_argument);
}

TEST_CASE("canonical_pattern is invariant under letter relabeling") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        MultisetWord w = random_word(rng, 8);
        std::vector<int> perm(8);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> relabeled(8, 0);
        for (int a = 0; a < w.alphabet_size(); ++a) relabeled[perm[a]] = w.count(a);
        CHECK(canonical_pattern(w) == canonical_pattern(MultisetWord(relabeled)));
    }
}

TEST_CASE("sub_multisets enumerates each subset once, in alphabetical order") {
    auto subs = sub_multisets(MultisetWord::parse("a2b"), 1);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0] == MultisetWord::parse("a"));
    CHECK(subs[1] == MultisetWord::parse("b"));

    CHECK(sub_multisets(MultisetWord::parse("abcde"), 3).size() == 10);

    auto s5 = sub_multisets(MultisetWord::parse("a2b2c"), 2);
    REQUIRE(s5.size() == 5);
    CHECK(s5[0] == MultisetWord::parse("aa"));
    CHECK(s5[1] == MultisetWord::parse("ab"));
    CHECK(s5[2] == MultisetWord::parse("ac"));
    CHECK(s5[3] == MultisetWord::parse("bb"));
    CHECK(s5[4] == MultisetWord::parse("bc"));
    CHECK(std::is_sorted(s5.begin(), s5.end()));

    CHECK(sub_multisets(MultisetWord::parse("abc"), 0).size() == 1);
    CHECK(sub_multisets(MultisetWord::parse("abc"), 0)[0].empty());
    CHECK_THROWS_WITH_AS(sub_multisets(MultisetWord::parse("abc"), 4),
                         "subset size exceeds word", std::invalid_argument);
}

TEST_CASE("sub_multiset counts match the generating-function oracle") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        MultisetWord w = random_word(rng, 8);
        for (int r = 0; r <= w.length(); ++r) {
            auto subs = sub_multisets(w, r);
            CHECK(static_cast<long long>(subs.size()) == subset_count_oracle(w, r));
            // each exactly once
            auto sorted = subs;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        }
    }
}

TEST_CASE("quotient removes counts and recomposes with concat") {
    CHECK(MultisetWord::parse("a3b2c").quotient(MultisetWord::parse("ab")) ==
          MultisetWord::parse("a2bc"));
    CHECK(MultisetWord::parse("abc").quotient(MultisetWord::parse("abc")).empty());
    CHECK_THROWS_WITH_AS(MultisetWord::parse("a2b").quotient(MultisetWord::parse("c")),
                         "not a sub-multiset", std::invalid_argument);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        MultisetWord w = random_word(rng, 7);
        for (int r = 0; r <= w.length(); ++r) {
            for (const auto& s : sub_multisets(w, r)) {
                CHECK(w.quotient(s).concat(s) == w);
            }
        }
    }
}

TEST_CASE("remove_one returns the original multiplicity as coefficient") {
    auto [aa, three] = MultisetWord::parse("aaa").remove_one(0);
    CHECK(aa == MultisetWord::parse("aa"));
    CHECK(three == 3);

    auto [aa2, one] = MultisetWord::parse("aab").remove_one(1);
    CHECK(aa2 == MultisetWord::parse("aa"));
    CHECK(one == 1);

    auto [aab, two] = MultisetWord::parse("a2b2").remove_one(1);
    CHECK(aab == MultisetWord::parse("a2b"));
    CHECK(two == 2);

    CHECK_THROWS_WITH_AS(MultisetWord::parse("a2b").remove_one(2),
                         "letter not present", std::invalid_argument);
}

TEST_CASE("all-distinct words of length 2k+1 have (2k+1)!/(k!(k+1)!) subsets of size k+1") {
    for (int k = 1; k <= 5; ++k) {
        auto w = MultisetWord::all_distinct(2 * k + 1);
        auto subs = sub_multisets(w, k + 1);
        CHECK(static_cast<long long>(subs.size()) == binomial(2 * k + 1, k + 1));
    }
}

TEST_CASE("partitions come in descending lexicographic order") {
    auto p5 = partitions(5);
    REQUIRE(p5.size() == 7);
    CHECK(p5[0].exponents == std::vector<int>{5});
    CHECK(p5[1].exponents == std::vector<int>{4, 1});
    CHECK(p5[2].exponents == std::vector<int>{3, 2});
    CHECK(p5[3].exponents == std::vector<int>{3, 1, 1});
    CHECK(p5[4].exponents == std::vector<int>{2, 2, 1});
    CHECK(p5[5].exponents == std::vector<int>{2, 1, 1, 1});
    CHECK(p5[6].exponents == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(partitions(7).size() == 15);
}

TEST_CASE("representative_word assigns the largest exponent to the earliest letter") {
    CHECK(representative_word(Pattern{{3, 2}}) == MultisetWord::parse("a3b2"));
    CHECK(representative_word(Pattern{{1, 1, 1}}) == MultisetWord::parse("abc"));
    CHECK(canonical_pattern(representative_word(Pattern{{4, 2, 1}})) == Pattern{{4, 2, 1}});
}
