#pragma once

/**
 * @file oracle.hpp
 * @brief Slow, independent brute-force checks for the fast code paths.
 *
 * Nothing in the library proper calls into this header. The test suites use
 * it, and the command line tool exposes it behind --verify.
 */

#include "qfd/arith.hpp"
#include "qfd/matrix.hpp"
#include "qfd/symbols.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace qfd::oracle {

struct SolutionWitness {
    Int x, y, z;
    std::optional<Int> modulus;  // absent for exact integer solutions
};

namespace detail {

inline std::int64_t ipow(std::int64_t base, unsigned e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

inline std::int64_t residue(const Int& a, std::int64_t mod) {
    Int r = a % mod;
    if (r < 0) r += mod;
    return static_cast<std::int64_t>(r);
}

}  // namespace detail

/// (a, b)_p by exhaustive search for a primitive solution of
/// a x^2 + b y^2 = z^2 modulo p^K, K = 3 + v_p(a) + v_p(b) (5 + ... at p = 2),
/// after reducing a and b modulo squares.
inline SymbolValue hilbert_bruteforce(const Int& a, const Int& b, const Int& p) {
    if (a == 0 || b == 0) throw DomainError("hilbert_bruteforce: arguments must be nonzero");
    if (!is_prime(p)) throw DomainError("hilbert_bruteforce: " + p.str() + " is not prime");
    const Int ra = square_free_part(a);
    const Int rb = square_free_part(b);
    const unsigned depth = (p == 2 ? 5u : 3u) + valuation(ra, p) + valuation(rb, p);
    const auto prime = static_cast<std::int64_t>(p);
    const std::int64_t mod = detail::ipow(prime, depth);
    const auto m = static_cast<unsigned __int128>(mod);

    std::vector<bool> is_square(static_cast<std::size_t>(mod), false);
    for (std::int64_t z = 0; z < mod; ++z)
        is_square[static_cast<std::size_t>(static_cast<unsigned __int128>(z) * z % m)] = true;

    const auto ar = static_cast<unsigned __int128>(detail::residue(ra, mod));
    const auto br = static_cast<unsigned __int128>(detail::residue(rb, mod));
    auto solvable = [&](std::int64_t x, std::int64_t y) {
        auto t = (ar * (static_cast<unsigned __int128>(x) * x % m) + br * (static_cast<unsigned __int128>(y) * y % m)) % m;
        return is_square[static_cast<std::size_t>(t)];
    };

    // A primitive triple has a unit coordinate; scaling by its inverse makes
    // it 1. If x and y are both divisible by p, the left side is divisible by
    // p while z^2 = 1 is not, so only the first two shapes can occur.
    for (std::int64_t y = 0; y < mod; ++y)
        if (solvable(1, y)) return SymbolValue::plus();
    for (std::int64_t x = 0; x < mod; x += prime)
        if (solvable(x, 1)) return SymbolValue::plus();
    return SymbolValue::minus();
}

/// Searches 0 <= x, y <= bound for z^2 = n x^2 + c y^2 with gcd(x, y, z) = 1.
inline std::optional<SolutionWitness> diophantine_bruteforce(const Int& n, const Int& c, std::int64_t bound) {
    if (bound < 1) throw DomainError("diophantine_bruteforce: bound must be positive");
    constexpr std::int64_t kSmall = std::int64_t{1} << 40;
    if (abs(n) < kSmall && abs(c) < kSmall && bound < (std::int64_t{1} << 20)) {
        // |n x^2 + c y^2| < 2^81: exact in __int128.
        const auto nn = static_cast<__int128>(static_cast<std::int64_t>(n));
        const auto cc = static_cast<__int128>(static_cast<std::int64_t>(c));
        for (std::int64_t x = 0; x <= bound; ++x) {
            for (std::int64_t y = 0; y <= bound; ++y) {
                if (x == 0 && y == 0) continue;
                const __int128 rhs = nn * x * x + cc * y * y;
                if (rhs < 0) continue;
                auto z = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(rhs)));
                while (static_cast<__int128>(z) * z > rhs) --z;
                while (static_cast<__int128>(z + 1) * (z + 1) <= rhs) ++z;
                if (static_cast<__int128>(z) * z != rhs) continue;
                if (std::gcd(std::gcd(x, y), z) != 1) continue;
                return SolutionWitness{x, y, z, std::nullopt};
            }
        }
        return std::nullopt;
    }
    for (std::int64_t x = 0; x <= bound; ++x) {
        for (std::int64_t y = 0; y <= bound; ++y) {
            if (x == 0 && y == 0) continue;
            Int rhs = n * x * x + c * y * y;
            if (rhs < 0 || !is_perfect_square(rhs)) continue;
            Int z = isqrt(rhs);
            if (gcd(gcd(Int(x), Int(y)), z) != 1) continue;
            return SolutionWitness{x, y, z, std::nullopt};
        }
    }
    return std::nullopt;
}

/// Product of 3 * dim random elementary matrices (swap, add a small multiple
/// of one column to another, scale by a small nonzero rational). Invertible by
/// construction and reproducible from the seed.
inline Matrix random_congruence(std::size_t dim, std::uint64_t seed) {
    if (dim < 1) throw DomainError("random_congruence: dimension must be positive");
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    auto nonzero = [&](std::int64_t r) {
        std::int64_t v = uniform(1, r);
        return uniform(0, 1) == 0 ? v : -v;
    };
    Matrix n = Matrix::identity(dim);
    for (std::size_t step = 0; step < 3 * dim; ++step) {
        auto kind = uniform(0, 2);
        if (dim == 1) kind = 2;
        auto i = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(dim) - 1));
        auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(dim) - 2));
        if (j >= i) ++j;
        switch (kind) {
            case 0:
                for (std::size_t r = 0; r < dim; ++r) std::swap(n(r, i), n(r, j));
                break;
            case 1: {
                Rat c(nonzero(3));
                for (std::size_t r = 0; r < dim; ++r) n(r, i) += c * n(r, j);
                break;
            }
            default: {
                Rat c(Int(nonzero(4)), Int(uniform(1, 4)));
                for (std::size_t r = 0; r < dim; ++r) n(r, i) *= c;
                break;
            }
        }
    }
    return n;
}

}  // namespace qfd::oracle
