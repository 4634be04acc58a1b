#include "support.hpp"

#include <gtest/gtest.h>

using namespace qfd;

TEST(Oracle, DiophantineExamples) {
    auto w = oracle::diophantine_bruteforce(10, -1, 10);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->x, 1);
    EXPECT_EQ(w->y, 1);
    EXPECT_EQ(w->z, 3);
    EXPECT_FALSE(w->modulus);

    w = oracle::diophantine_bruteforce(4, -1, 10);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->x, 1);
    EXPECT_EQ(w->y, 0);
    EXPECT_EQ(w->z, 2);

    EXPECT_FALSE(oracle::diophantine_bruteforce(6, -1, 500));
    EXPECT_THROW(oracle::diophantine_bruteforce(2, 3, 0), DomainError);
}

TEST(Oracle, DiophantineWitnessesSatisfyTheEquation) {
    std::mt19937_64 rng(41);
    int found = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Int n = qfd_test::nonzero(rng, -50, 50), c = qfd_test::nonzero(rng, -50, 50);
        auto w = oracle::diophantine_bruteforce(n, c, 40);
        if (!w) continue;
        ++found;
        ASSERT_EQ(w->z * w->z, n * w->x * w->x + c * w->y * w->y);
        ASSERT_EQ(gcd(gcd(w->x, w->y), w->z), 1);
    }
    EXPECT_GT(found, 50);
    // The wide-integer path agrees.
    const Int big = Int(1) << 50;
    auto w = oracle::diophantine_bruteforce(big, 1, 3);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->z * w->z, big * w->x * w->x + w->y * w->y);
}

TEST(Oracle, HilbertBruteForceKnownValues) {
    EXPECT_EQ(oracle::hilbert_bruteforce(-1, -1, 2), SymbolValue::minus());
    EXPECT_EQ(oracle::hilbert_bruteforce(2, 5, 5), SymbolValue::minus());
    EXPECT_EQ(oracle::hilbert_bruteforce(5, 5, 5), SymbolValue::plus());
    EXPECT_EQ(oracle::hilbert_bruteforce(3, 3, 3), SymbolValue::minus());
    EXPECT_EQ(oracle::hilbert_bruteforce(2, 7, 2), SymbolValue::plus());
    EXPECT_EQ(oracle::hilbert_bruteforce(21, 33, 3), SymbolValue::plus());
    EXPECT_EQ(oracle::hilbert_bruteforce(4 * 3, 9 * 3, 3), oracle::hilbert_bruteforce(3, 3, 3));
    EXPECT_THROW(oracle::hilbert_bruteforce(0, 1, 3), DomainError);
    EXPECT_THROW(oracle::hilbert_bruteforce(1, 1, 9), DomainError);
}

TEST(Oracle, RandomCongruenceIsInvertibleAndReproducible) {
    for (std::size_t dim = 1; dim <= 6; ++dim)
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            Matrix n = oracle::random_congruence(dim, seed);
            ASSERT_EQ(n.rows(), dim);
            ASSERT_NE(n.determinant(), 0);
            ASSERT_EQ(n, oracle::random_congruence(dim, seed));
        }
    EXPECT_NE(oracle::random_congruence(4, 1), oracle::random_congruence(4, 2));
    EXPECT_THROW(oracle::random_congruence(0, 1), DomainError);
}
