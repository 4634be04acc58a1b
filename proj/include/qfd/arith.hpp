#pragma once

/**
 * @file arith.hpp
 * @brief Exact integers, rationals and the number theory the rest of qfd needs.
 *
 * Int and Rat are arbitrary precision (boost::multiprecision). Rationals are
 * always kept in lowest terms with a positive denominator, so equality is
 * structural.
 *
 * Factorization is trial division by primes below 10^6, then Brent's variant
 * of Pollard rho on whatever cofactor remains. Every prime reported is
 * certified by Miller-Rabin (deterministic below 3.3 * 10^24).
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace qfd {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Raised when an operation is called outside its domain (zero argument,
/// composite modulus, singular matrix, ...). The message is user facing.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline std::string to_string(const Int& n) { return n.str(); }

inline std::string to_string(const Rat& r) {
    const Int& den = boost::multiprecision::denominator(r);
    if (den == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

inline int sign(const Int& n) { return n.sign(); }

inline Int abs(const Int& n) { return n < 0 ? Int(-n) : n; }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw DomainError("isqrt: negative argument " + n.str());
    return boost::multiprecision::sqrt(n);
}

/// True iff n = s^2 for some integer s. 0 and 1 are squares, negatives are not.
inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int s = boost::multiprecision::sqrt(n);
    return s * s == n;
}

/// Parse a decimal integer with optional sign. Returns false on any stray
/// character instead of throwing, so callers can report their own location.
inline bool parse_int(const std::string& text, Int& out) {
    if (text.empty()) return false;
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) return false;
    for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9') return false;
    // Strip leading zeros: the string constructor reads "010" as octal.
    while (i + 1 < text.size() && text[i] == '0') ++i;
    out = Int(text.substr(i));
    if (text[0] == '-') out = -out;
    return true;
}

// =============================================================================
// Primality
// =============================================================================

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline Int mulmod(const Int& a, const Int& b, const Int& m) { return a * b % m; }

template <typename T>
T powmod(T base, T exp, const T& m) {
    T result = 1;
    base %= m;
    while (exp > 0) {
        if ((exp & 1) != 0) result = mulmod(result, base, m);
        exp >>= 1;
        base = mulmod(base, base, m);
    }
    return result;
}

template <typename T>
bool miller_rabin_round(const T& n, const T& d, unsigned r, const T& a) {
    T x = powmod<T>(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// First 13 primes: a deterministic witness set for n < 3.3 * 10^24.
inline constexpr std::uint32_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
// Extra witnesses used beyond the deterministic range.
inline constexpr std::uint32_t kExtraWitnesses[] = {43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

template <typename T>
bool is_prime_impl(const T& n) {
    if (n < 2) return false;
    for (std::uint32_t p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    T d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint32_t a : kWitnesses)
        if (!miller_rabin_round<T>(n, d, r, T(a))) return false;
    if constexpr (!std::is_same_v<T, std::uint64_t>) {
        for (std::uint32_t a : kExtraWitnesses)
            if (!miller_rabin_round<T>(n, d, r, T(a))) return false;
    }
    return true;
}

inline bool fits_u64(const Int& n) { return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max(); }

inline constexpr std::uint32_t kTrialLimit = 1'000'000;

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace detail

/// Miller-Rabin primality check; deterministic for n < 3.3 * 10^24.
inline bool is_prime(const Int& n) {
    if (detail::fits_u64(n)) return detail::is_prime_impl<std::uint64_t>(static_cast<std::uint64_t>(n));
    return detail::is_prime_impl<Int>(n);
}

// =============================================================================
// Factorization
// =============================================================================

struct PrimePower {
    Int prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// unit * prod(prime^exponent) reconstructs the factored integer exactly.
struct Factorization {
    int unit = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing

    Int value() const {
        Int out = unit;
        for (const auto& f : factors) out *= boost::multiprecision::pow(f.prime, f.exponent);
        return out;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

// Brent's cycle finding; returns a nontrivial factor of composite n (n odd).
template <typename T>
T pollard_brent(const T& n) {
    using std::gcd;
    using boost::multiprecision::gcd;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](const T& x) { return (mulmod(x, x, n) + c) % n; };
        T y = 2, x, ys, q = 1, g = 1;
        std::uint64_t r = 1;
        constexpr std::uint64_t batch = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? T(x - y) : T(y - x), n);
                }
                g = gcd(q, n);
                k += batch;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(x > ys ? T(x - ys) : T(ys - x), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

// floor(n^(1/k)) for n >= 0, k >= 1, by bisection on the bit length.
inline Int integer_root(const Int& n, unsigned k) {
    if (n < 2 || k == 1) return n;
    const auto bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    Int lo = 1, hi = Int(1) << (bits / k + 1);
    while (lo < hi) {
        Int mid = (lo + hi + 1) >> 1;
        if (boost::multiprecision::pow(mid, k) <= n)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

inline void split_large(const Int& n, std::vector<Int>& primes_out) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes_out.push_back(n);
        return;
    }
    // rho needs about sqrt(p) steps on p^k, so peel off perfect powers first.
    const auto bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    for (unsigned k = 2; k <= bits / 20 + 1; ++k) {
        Int r = integer_root(n, k);
        if (boost::multiprecision::pow(r, k) == n) {
            for (unsigned i = 0; i < k; ++i) split_large(r, primes_out);
            return;
        }
    }
    // The u64 path adds the rho constant after reduction; keep headroom.
    Int d = n < (Int(1) << 62) ? Int(pollard_brent<std::uint64_t>(static_cast<std::uint64_t>(n)))
                               : pollard_brent<Int>(n);
    split_large(d, primes_out);
    split_large(n / d, primes_out);
}

}  // namespace detail

/// Complete factorization of a nonzero integer; the sign goes into `unit`.
inline Factorization factorize(const Int& n) {
    if (n == 0) throw DomainError("factorize: argument must be nonzero");
    Factorization out;
    out.unit = n < 0 ? -1 : 1;
    Int m = abs(n);

    auto push = [&](const Int& p, unsigned e) {
        if (e > 0) out.factors.push_back({p, e});
    };

    if (detail::fits_u64(m)) {
        auto x = static_cast<std::uint64_t>(m);
        for (std::uint32_t p : detail::small_primes()) {
            if (std::uint64_t(p) * p > x) break;
            unsigned e = 0;
            while (x % p == 0) {
                x /= p;
                ++e;
            }
            push(p, e);
        }
        m = x;
    } else {
        for (std::uint32_t p : detail::small_primes()) {
            if (Int(p) * p > m) break;
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            push(p, e);
        }
    }
    if (m == 1) return out;

    // No prime factor below the trial limit remains; a cofactor below its
    // square is therefore prime.
    Int limit = Int(detail::kTrialLimit) * detail::kTrialLimit;
    std::vector<Int> large;
    if (m < limit) {
        large.push_back(m);
    } else {
        detail::split_large(m, large);
    }
    std::sort(large.begin(), large.end());
    for (std::size_t i = 0; i < large.size();) {
        std::size_t j = i;
        while (j < large.size() && large[j] == large[i]) ++j;
        push(large[i], static_cast<unsigned>(j - i));
        i = j;
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return out;
}

/// m square-free with n = m * s^2 and sign(m) = sign(n).
inline Int square_free_part(const Int& n) {
    if (n == 0) throw DomainError("square_free_part: argument must be nonzero");
    Factorization f = factorize(n);
    Int out = f.unit;
    for (const auto& pe : f.factors)
        if (pe.exponent % 2 == 1) out *= pe.prime;
    return out;
}

/// Square-free representative of a nonzero rational modulo squares:
/// p/q = p*q / q^2, so the class of p/q is the square-free part of p*q.
inline Int square_free_part(const Rat& r) {
    if (r == 0) throw DomainError("square_free_part: argument must be nonzero");
    return square_free_part(Int(boost::multiprecision::numerator(r) * boost::multiprecision::denominator(r)));
}

/// Largest e with p^e | n.
inline unsigned valuation(const Int& n, const Int& p) {
    if (n == 0) throw DomainError("valuation: argument must be nonzero");
    if (!is_prime(p)) throw DomainError("valuation: " + p.str() + " is not prime");
    unsigned e = 0;
    Int m = n;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

/// True iff n = a^2 + b^2 for integers a, b: no prime 3 mod 4 divides the
/// square-free part of n.
inline bool two_squares_test(const Int& n) {
    if (n < 1) throw DomainError("two_squares_test: argument must be positive, got " + n.str());
    for (const auto& pe : factorize(n).factors)
        if (pe.exponent % 2 == 1 && pe.prime % 4 == 3) return false;
    return true;
}

/// Odd primes dividing n (n nonzero), ascending.
inline std::vector<Int> odd_prime_divisors(const Int& n) {
    std::vector<Int> out;
    for (const auto& pe : factorize(n).factors)
        if (pe.prime != 2) out.push_back(pe.prime);
    return out;
}

/// Ascending union of the odd primes dividing any of the nonzero arguments.
inline std::vector<Int> odd_prime_divisors(std::initializer_list<Int> values) {
    std::vector<Int> out;
    for (const Int& v : values) {
        auto ps = odd_prime_divisors(v);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace qfd
