#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qfd;
using qfd_test::is_prime_naive;

TEST(Arith, FactorizeReconstructsRandomIntegers) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10'000; ++trial) {
        const std::int64_t n = qfd_test::nonzero(rng, -1'000'000, 1'000'000);
        Factorization f = factorize(n);
        ASSERT_EQ(f.value(), n) << n;
        EXPECT_EQ(f.unit, n < 0 ? -1 : 1);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            ASSERT_TRUE(is_prime_naive(static_cast<std::int64_t>(f.factors[i].prime))) << n;
            ASSERT_GT(f.factors[i].exponent, 0u);
            if (i > 0) {
                ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
            }
        }
        const Int m = square_free_part(Int(n));
        ASSERT_EQ(n % m, 0);
        ASSERT_TRUE(is_perfect_square(Int(n / m))) << n;
        ASSERT_TRUE(qfd_test::is_square_free_naive(static_cast<std::int64_t>(m))) << n;
    }
}

TEST(Arith, FactorizeUnitsAndZero) {
    EXPECT_TRUE(factorize(1).factors.empty());
    EXPECT_EQ(factorize(-1).unit, -1);
    EXPECT_THROW(factorize(0), DomainError);
}

TEST(Arith, FactorizeLargeSemiprimes) {
    const Int m61 = (Int(1) << 61) - 1;
    const Int p1 = 1'000'000'007, p2 = 1'000'000'009, p3 = 998'244'353;
    for (const Int& n : {Int(p1 * p2), Int(m61 * p1), Int(p1 * p2 * p3), Int(m61 * m61)}) {
        Factorization f = factorize(n);
        EXPECT_EQ(f.value(), n);
        for (const auto& pe : f.factors) EXPECT_TRUE(is_prime(pe.prime)) << pe.prime;
    }
    // 2^64 + 1 = 274177 * 67280421310721
    Factorization f = factorize((Int(1) << 64) + 1);
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].prime, 274177);
    EXPECT_EQ(f.factors[1].prime, Int("67280421310721"));
}

TEST(Arith, PrimalityEdgeCases) {
    EXPECT_TRUE(is_prime((Int(1) << 127) - 1));
    EXPECT_FALSE(is_prime((Int(1) << 128) + 1));
    for (long long c : {561LL, 41041LL, 825265LL, 3215031751LL, 3825123056546413051LL}) EXPECT_FALSE(is_prime(c)) << c;
    EXPECT_FALSE(is_prime(0));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(-7));
    EXPECT_TRUE(is_prime(2));
    for (std::int64_t n = 0; n < 20'000; ++n) ASSERT_EQ(is_prime(n), is_prime_naive(n)) << n;
}

TEST(Arith, SigmaOfTheEvenDecomposition) {
    // 89280 = 2^6 3^2 5 31
    Factorization f = factorize(89280);
    std::vector<PrimePower> want{{2, 6}, {3, 2}, {5, 1}, {31, 1}};
    EXPECT_EQ(f.factors, want);
    EXPECT_EQ(square_free_part(Int(89280)), 155);
}

TEST(Arith, SquareFreePartOfRationals) {
    EXPECT_EQ(square_free_part(Rat(8, 9)), 2);
    EXPECT_EQ(square_free_part(Rat(-3, 12)), -1);
    EXPECT_EQ(square_free_part(Rat(5, 7)), 35);
    EXPECT_THROW(square_free_part(Rat(0)), DomainError);
    EXPECT_THROW(square_free_part(Int(0)), DomainError);
}

TEST(Arith, TwoSquaresTestMatchesExhaustiveSearch) {
    constexpr int kLimit = 100'000;
    std::vector<bool> representable(kLimit + 1, false);
    for (int a = 0; a * a <= kLimit; ++a)
        for (int b = a; a * a + b * b <= kLimit; ++b) representable[a * a + b * b] = true;
    for (int n = 1; n <= kLimit; ++n) ASSERT_EQ(two_squares_test(n), representable[n]) << n;
    EXPECT_THROW(two_squares_test(0), DomainError);
}

TEST(Arith, PerfectSquareMatchesFloatingRoot) {
    for (std::int64_t n = 0; n <= 1'000'000; ++n) {
        auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
        ASSERT_EQ(is_perfect_square(n), r * r == n) << n;
    }
    EXPECT_FALSE(is_perfect_square(-4));
    const Int big = Int("123456789012345678901234567890");
    EXPECT_TRUE(is_perfect_square(big * big));
    EXPECT_FALSE(is_perfect_square(big * big + 1));
}

TEST(Arith, Valuation) {
    EXPECT_EQ(valuation(89280, 2), 6u);
    EXPECT_EQ(valuation(-27, 3), 3u);
    EXPECT_EQ(valuation(10, 7), 0u);
    EXPECT_THROW(valuation(0, 3), DomainError);
    EXPECT_THROW(valuation(12, 4), DomainError);
}

TEST(Arith, OddPrimeDivisors) {
    EXPECT_EQ(odd_prime_divisors(Int(-360)), (std::vector<Int>{3, 5}));
    EXPECT_EQ(odd_prime_divisors({Int(21), Int(-33)}), (std::vector<Int>{3, 7, 11}));
    EXPECT_TRUE(odd_prime_divisors(Int(64)).empty());
}

TEST(Arith, ParseInt) {
    Int n;
    EXPECT_TRUE(parse_int("-123", n));
    EXPECT_EQ(n, -123);
    EXPECT_TRUE(parse_int("+7", n));
    EXPECT_EQ(n, 7);
    EXPECT_TRUE(parse_int("010", n));
    EXPECT_EQ(n, 10);
    EXPECT_TRUE(parse_int("0", n));
    EXPECT_EQ(n, 0);
    EXPECT_TRUE(parse_int("123456789012345678901234567890", n));
    EXPECT_EQ(n, Int("123456789012345678901234567890"));
    for (const char* bad : {"", "-", "1x", "1.5", " 1", "0x10"}) EXPECT_FALSE(parse_int(bad, n)) << bad;
}
