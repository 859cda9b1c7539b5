#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <moments/linalg.hpp>

#include <random>

using namespace moments;

namespace {

// Independent oracle: cofactor expansion, exact big integers.
BigInt cofactor_det(const IntMatrix& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    BigInt det = 0;
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        det += sign * BigInt(m(0, j)) * cofactor_det(minor);
        sign = -sign;
    }
    return det;
}

IntMatrix random_matrix(std::mt19937& rng, int n, int span) {
    std::uniform_int_distribution<int> d(-span, span);
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = d(rng);
    return m;
}

}  // namespace

TEST_CASE("primality testing is deterministic and correct on known values") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(1'000'003));
    CHECK(is_prime(2147483647ULL));  // 2^31 - 1
    CHECK(is_prime(2147483629ULL));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(2147483647ULL * 3));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
    const auto& pool = crt_prime_pool();
    CHECK(pool.size() >= 64);
    for (u64 p : pool) {
        CHECK(is_prime(p));
        CHECK(p < (u64(1) << 62));
        CHECK(p > (u64(1) << 61));
    }
}

TEST_CASE("Montgomery products match plain modular products") {
    std::mt19937_64 rng(19);
    for (u64 p : {u64(3), u64(1'000'003), u64(2147483647), crt_prime_pool()[0]}) {
        Montgomery mont(p);
        for (int t = 0; t < 200; ++t) {
            u64 a = rng() % p, b = rng() % p;
            CHECK(mont.redc_mul(mont.to_mont(a), b) == mulmod(a, b, p));
        }
        u64 x = 1 + rng() % (p - 1);
        CHECK(mulmod(x, mont.inverse(x), p) == 1);
    }
}

TEST_CASE("log10_abs of big integers") {
    CHECK(log10_abs(BigInt(0)) == -std::numeric_limits<double>::infinity());
    CHECK(log10_abs(BigInt(1)) == doctest::Approx(0.0));
    CHECK(log10_abs(BigInt(-1000)) == doctest::Approx(3.0));
    BigInt big = 1;
    for (int i = 0; i < 137; ++i) big *= 10;
    CHECK(log10_abs(big) == doctest::Approx(137.0).epsilon(1e-12));
    CHECK(log10_abs(BigInt(47775744)) == doctest::Approx(std::log10(47775744.0)));
}

TEST_CASE("bareiss determinant on fixed matrices") {
    CHECK(*bareiss_det(IntMatrix::Identity(5, 5)).exact == 1);

    IntMatrix j3 = IntMatrix::Ones(3, 3) - IntMatrix::Identity(3, 3);
    auto r = bareiss_det(j3);
    CHECK(*r.exact == 2);
    CHECK(r.sign == 1);
    CHECK(r.log10_abs == doctest::Approx(std::log10(2.0)));

    IntMatrix sing(2, 2);
    sing << 1, 2, 2, 4;
    CHECK(*bareiss_det(sing).exact == 0);
    CHECK(bareiss_det(sing).sign == 0);

    IntMatrix rect(2, 3);
    CHECK_THROWS_AS(bareiss_det(rect), std::invalid_argument);
}

TEST_CASE("bareiss matches cofactor expansion on random matrices") {
    std::mt19937 rng(23);
    for (int t = 0; t < 40; ++t) {
        int n = 1 + static_cast<int>(rng() % 6);
        IntMatrix m = random_matrix(rng, n, 9);
        CHECK(*bareiss_det(m).exact == cofactor_det(m));
    }
}

TEST_CASE("determinant is permutation invariant up to sign") {
    std::mt19937 rng(29);
    IntMatrix m = random_matrix(rng, 7, 20);
    BigInt d = *bareiss_det(m).exact;
    for (int t = 0; t < 10; ++t) {
        std::vector<int> rp(7), cp(7);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        IntMatrix pm(7, 7);
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) pm(i, j) = m(rp[i], cp[j]);
        BigInt dp = *bareiss_det(pm).exact;
        CHECK((dp == d || dp == -d));
    }
}

TEST_CASE("CRT determinant agrees exactly with bareiss") {
    std::mt19937 rng(31);
    for (int t = 0; t < 12; ++t) {
        int n = 2 + static_cast<int>(rng() % 24);
        IntMatrix m = random_matrix(rng, n, 50);
        auto exact = bareiss_det(m);
        auto crt = crt_det(m);
        CHECK(*crt.exact == *exact.exact);
        CHECK(crt.sign == exact.sign);
    }
    CHECK(*crt_det(IntMatrix::Zero(4, 4)).exact == 0);
}

TEST_CASE("float LU determinant tracks sign and magnitude") {
    auto id = float_lu_det(IntMatrix::Identity(6, 6));
    CHECK(id.sign == 1);
    CHECK(id.log10_abs == doctest::Approx(0.0));

    IntMatrix d2 = 2 * IntMatrix::Identity(10, 10);
    CHECK(float_lu_det(d2).log10_abs == doctest::Approx(10 * std::log10(2.0)));

    IntMatrix sing(3, 3);
    sing << 1, 2, 3, 2, 4, 6, 7, 8, 9;
    CHECK(float_lu_det(sing).sign == 0);

    std::mt19937 rng(37);
    for (int t = 0; t < 8; ++t) {
        IntMatrix m = random_matrix(rng, 12, 30);
        auto exact = bareiss_det(m);
        auto flu = float_lu_det(m);
        if (exact.sign == 0) continue;
        CHECK(flu.sign == exact.sign);
        CHECK(std::abs(flu.log10_abs - exact.log10_abs) < 0.05);
    }
}

TEST_CASE("finite-field rank on fixed matrices") {
    CHECK(rank_mod_p(IntMatrix::Zero(4, 4), 1'000'003) == 0);
    CHECK(rank_mod_p(IntMatrix::Identity(7, 7), 1'000'003) == 7);

    IntMatrix m(3, 3);
    m << 1, 2, 3, 4, 5, 6, 5, 7, 9;  // row3 = row1 + row2
    CHECK(rank_mod_p(m, 1'000'003) == 2);

    CHECK_THROWS_WITH_AS(rank_mod_p(m, 1'000'000), "modulus is not prime", std::invalid_argument);
}

TEST_CASE("rank over GF(p) equals rational rank on random small matrices") {
    std::mt19937 rng(41);
    for (int t = 0; t < 30; ++t) {
        int rows = 1 + static_cast<int>(rng() % 8);
        int cols = 1 + static_cast<int>(rng() % 8);
        std::uniform_int_distribution<int> d(-4, 4);
        IntMatrix m(rows, cols);
        RationalMatrix q(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                m(i, j) = d(rng);
                q(i, j) = m(i, j);
            }
        int rq = rational_rank(q);
        int r1 = rank_mod_p(m, 2147483647ULL);
        int r2 = rank_mod_p(m, 2147483629ULL);
        CHECK(r1 == rq);
        CHECK(r2 == rq);
    }
}

TEST_CASE("shifted-rank fast path equals the generic kernel") {
    std::mt19937 rng(43);
    for (int shift : {-3, -1, 0, 1, 2}) {
        BinaryMatrix b(20, 20);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) b(i, j) = rng() % 2;
        IntMatrix wide = b.cast<std::int64_t>();
        wide -= shift * IntMatrix::Identity(20, 20);
        CHECK(rank_mod_p_shifted(b, shift, 2147483647ULL) == rank_mod_p(wide, 2147483647ULL));
    }
}

TEST_CASE("two-prime confirmation aborts on disagreement") {
    auto fake_rank = [](u64 p) { return p == 5 ? 3 : 4; };
    CHECK_THROWS_AS(rank_two_primes(fake_rank, 5, 7), std::runtime_error);
    auto stable = [](u64) { return 6; };
    CHECK(rank_two_primes(stable, 5, 7) == 6);
    CHECK_THROWS_AS(rank_two_primes(stable, 5, 5), std::invalid_argument);
}

TEST_CASE("rational nullspace basis is reduced and exact") {
    RationalMatrix id = RationalMatrix::Identity(4, 4);
    CHECK(rational_nullspace(id).empty());

    RationalMatrix row(1, 2);
    row(0, 0) = 1;
    row(0, 1) = 2;
    auto basis = rational_nullspace(row);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == Rational(1));
    CHECK(basis[0][1] == Rational(-1, 2));

    std::mt19937 rng(47);
    for (int t = 0; t < 25; ++t) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 6);
        std::uniform_int_distribution<int> d(-3, 3);
        RationalMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
        auto ns = rational_nullspace(m);
        CHECK(static_cast<int>(ns.size()) == cols - rational_rank(m));
        for (const auto& v : ns) {
            // leading coordinate 1
            int lead = -1;
            for (int j = 0; j < cols; ++j)
                if (v[j] != 0) {
                    lead = j;
                    break;
                }
            REQUIRE(lead >= 0);
            CHECK(v[lead] == Rational(1));
            // exact kernel membership
            for (int i = 0; i < rows; ++i) {
                Rational dot = 0;
                for (int j = 0; j < cols; ++j) dot += m(i, j) * v[j];
                CHECK(dot == Rational(0));
            }
        }
    }
}
