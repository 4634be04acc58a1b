#pragma once

// Shared generators and slow reference helpers for the test suites.

#include "qfd/qfd.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qfd_test {

using qfd::Int;
using qfd::Matrix;
using qfd::Rat;
using qfd::SymMatrix;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline std::int64_t nonzero(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    for (;;)
        if (auto v = uniform(rng, lo, hi); v != 0) return v;
}

inline bool is_prime_naive(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::int64_t> odd_primes_below(std::int64_t limit) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 3; p < limit; p += 2)
        if (is_prime_naive(p)) out.push_back(p);
    return out;
}

inline bool is_square_free_naive(std::int64_t n) {
    if (n < 0) n = -n;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

inline std::int64_t random_square_free(std::mt19937_64& rng, std::int64_t bound) {
    for (;;)
        if (auto v = nonzero(rng, -bound, bound); is_square_free_naive(v)) return v;
}

inline Matrix random_integer_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::int64_t range) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -range, range);
    return m;
}

/// R^T R + I for a random integer R.
inline SymMatrix random_positive_definite(std::mt19937_64& rng, std::size_t dim, std::int64_t range = 3) {
    Matrix r = random_integer_matrix(rng, dim, dim, range);
    return SymMatrix(r.transpose() * r + Matrix::identity(dim));
}

inline SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t dim, std::int64_t range = 4) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) m(i, j) = m(j, i) = uniform(rng, -range, range);
    return SymMatrix(m);
}

}  // namespace qfd_test
