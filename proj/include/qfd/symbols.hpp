#pragma once

/**
 * @file symbols.hpp
 * @brief Legendre and Hilbert symbols over Q, and the r3 classifier.
 *
 * Symbols take the values +1 and -1 only. The Legendre symbol of a multiple of
 * p is rejected instead of being reported as 0.
 *
 * At an odd prime p, writing a = p^alpha u and b = p^beta v with u, v prime
 * to p,
 *
 *     (a, b)_p = (-1)^(alpha beta (p-1)/2) (u/p)^beta (v/p)^alpha.
 *
 * The symbol at 2 is recovered from the product formula over all places
 * rather than from the dyadic case table.
 */

#include "qfd/arith.hpp"

#include <ostream>
#include <string>
#include <type_traits>

namespace qfd {

class SymbolValue {
public:
    constexpr SymbolValue() = default;

    static constexpr SymbolValue plus() { return SymbolValue(1); }
    static constexpr SymbolValue minus() { return SymbolValue(-1); }
    static constexpr SymbolValue from_bool(bool is_plus) { return is_plus ? plus() : minus(); }

    constexpr int value() const { return value_; }
    constexpr bool is_plus() const { return value_ == 1; }
    constexpr bool is_minus() const { return value_ == -1; }

    constexpr SymbolValue& operator*=(SymbolValue other) {
        value_ *= other.value_;
        return *this;
    }
    friend constexpr SymbolValue operator*(SymbolValue a, SymbolValue b) { return a *= b; }
    friend constexpr bool operator==(SymbolValue, SymbolValue) = default;

    /// "+1" or "-1".
    std::string str() const { return value_ == 1 ? "+1" : "-1"; }
    friend std::ostream& operator<<(std::ostream& os, SymbolValue s) { return os << s.str(); }

private:
    constexpr explicit SymbolValue(int v) : value_(v) {}
    int value_ = 1;
};

/// A place of Q: an odd prime, the prime 2, or the infinite place.
class Place {
public:
    enum class Kind { odd_prime, two, infinity };

    static Place odd_prime(const Int& p) {
        if (p == 2 || !is_prime(p)) throw DomainError("place: " + p.str() + " is not an odd prime");
        return Place(Kind::odd_prime, p);
    }
    static Place two() { return Place(Kind::two, 2); }
    static Place infinity() { return Place(Kind::infinity, 0); }

    /// Any prime, or the infinite place.
    static Place prime(const Int& p) { return p == 2 ? two() : odd_prime(p); }

    Kind kind() const { return kind_; }
    const Int& prime() const { return prime_; }

    std::string str() const {
        switch (kind_) {
            case Kind::odd_prime: return prime_.str();
            case Kind::two: return "2";
            case Kind::infinity: return "inf";
        }
        return "?";
    }

private:
    Place(Kind k, Int p) : kind_(k), prime_(std::move(p)) {}
    Kind kind_;
    Int prime_;
};

namespace detail {

// Jacobi symbol (a/n) for odd n > 0; 0 when gcd(a, n) > 1.
inline int jacobi(Int a, Int n) {
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            int r = static_cast<int>(n % 8);
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline void require_odd_prime(const Int& p, const char* who) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw DomainError(std::string(who) + ": " + p.str() + " is not an odd prime");
}

inline void require_nonzero(const Int& a, const Int& b, const char* who) {
    if (a == 0 || b == 0) throw DomainError(std::string(who) + ": arguments must be nonzero");
}

// Odd-prime Hilbert symbol without argument validation; p must be an odd
// prime and a, b nonzero.
inline SymbolValue hilbert_odd_unchecked(Int a, Int b, const Int& p) {
    unsigned alpha = 0, beta = 0;
    while (a % p == 0) {
        a /= p;
        ++alpha;
    }
    while (b % p == 0) {
        b /= p;
        ++beta;
    }
    int s = 1;
    if ((alpha & beta & 1) != 0 && p % 4 == 3) s = -s;
    if (beta & 1) s *= jacobi(a, p);
    if (alpha & 1) s *= jacobi(b, p);
    return SymbolValue::from_bool(s == 1);
}

// Integer representative of a nonzero rational modulo squares.
inline Int square_class(const Rat& r) {
    return boost::multiprecision::numerator(r) * boost::multiprecision::denominator(r);
}

}  // namespace detail

/// Legendre symbol (a/p) for an odd prime p not dividing a.
inline SymbolValue legendre(const Int& a, const Int& p) {
    detail::require_odd_prime(p, "legendre");
    if (a % p == 0) throw DomainError("legendre: " + p.str() + " divides " + a.str());
    return SymbolValue::from_bool(detail::jacobi(a, p) == 1);
}

/// Hilbert symbol (a, b)_p at an odd prime p.
inline SymbolValue hilbert_odd(const Int& a, const Int& b, const Int& p) {
    detail::require_nonzero(a, b, "hilbert_odd");
    detail::require_odd_prime(p, "hilbert_odd");
    return detail::hilbert_odd_unchecked(a, b, p);
}

/// Mixed integer-like arguments (built-in integers, expression templates).
template <typename A, typename B>
    requires(!std::is_same_v<std::decay_t<A>, Rat> && !std::is_same_v<std::decay_t<B>, Rat>)
SymbolValue hilbert_odd(const A& a, const B& b, const Int& p) {
    return hilbert_odd(Int(a), Int(b), p);
}

inline SymbolValue hilbert_odd(const Rat& a, const Rat& b, const Int& p) {
    if (a == 0 || b == 0) throw DomainError("hilbert_odd: arguments must be nonzero");
    return hilbert_odd(detail::square_class(a), detail::square_class(b), p);
}

/// (a, b)_inf is -1 exactly when both arguments are negative.
inline SymbolValue hilbert_infinity(const Int& a, const Int& b) {
    detail::require_nonzero(a, b, "hilbert_infinity");
    return SymbolValue::from_bool(!(a < 0 && b < 0));
}

/// (a, b)_2, the value forced by the product formula
/// prod over all places of (a, b)_v = 1.
inline SymbolValue hilbert_two(const Int& a, const Int& b) {
    detail::require_nonzero(a, b, "hilbert_two");
    SymbolValue s = hilbert_infinity(a, b);
    for (const Int& p : odd_prime_divisors({a, b})) s *= detail::hilbert_odd_unchecked(a, b, p);
    return s;
}

inline SymbolValue hilbert(const Int& a, const Int& b, const Place& place) {
    switch (place.kind()) {
        case Place::Kind::odd_prime: return hilbert_odd(a, b, place.prime());
        case Place::Kind::two: return hilbert_two(a, b);
        case Place::Kind::infinity: return hilbert_infinity(a, b);
    }
    throw DomainError("hilbert: unknown place");
}

/// Product of the primes 3 mod 4 dividing the square-free part of n.
inline Int r3(const Int& n) {
    if (n == 0) throw DomainError("r3: argument must be nonzero");
    Int out = 1;
    for (const auto& pe : factorize(n).factors)
        if (pe.exponent % 2 == 1 && pe.prime % 4 == 3) out *= pe.prime;
    return out;
}

}  // namespace qfd
