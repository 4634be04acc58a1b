#pragma once

/**
 * @file designs.hpp
 * @brief Nonexistence tests for symmetric designs and their relatives.
 *
 * Every test is one-sided: Excluded means the Gram matrix the structure would
 * have is not congruent to the identity, NotExcluded decides nothing.
 *
 * "For all odd primes p" conditions are evaluated over the odd primes that
 * divide one of the symbol arguments; at any other odd prime both arguments
 * are units and the symbol is +1.
 */

#include "qfd/arith.hpp"
#include "qfd/symbols.hpp"
#include "qfd/verdict.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qfd {

/// Counts which kinds of checks a test consulted; lets callers confirm the
/// branch a verdict came from.
struct EvaluationTrace {
    int square_checks = 0;
    int symbol_evaluations = 0;
};

struct DesignParams {
    Int v, k, lambda;

    Int order() const { return k - lambda; }
    std::string str() const { return "(" + v.str() + "," + k.str() + "," + lambda.str() + ")"; }
    friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// 0 < lambda < k < v and k(k-1) = lambda(v-1).
inline bool admissible(const Int& v, const Int& k, const Int& lambda) {
    return 0 < lambda && lambda < k && k < v && k * (k - 1) == lambda * (v - 1);
}

inline bool admissible(const DesignParams& d) { return admissible(d.v, d.k, d.lambda); }

namespace detail {

inline bool traced_square(const Int& n, EvaluationTrace* trace) {
    if (trace) ++trace->square_checks;
    return is_perfect_square(n);
}

// First odd prime p dividing a*b with (a, b)_p = -1, if any.
inline std::optional<Int> first_failing_prime(const Int& a, const Int& b, EvaluationTrace* trace) {
    for (const Int& p : odd_prime_divisors({a, b})) {
        if (trace) ++trace->symbol_evaluations;
        if (hilbert_odd_unchecked(a, b, p).is_minus()) return p;
    }
    return std::nullopt;
}

inline Int minus_one_power(const Int& e) { return e % 2 == 0 ? Int(1) : Int(-1); }

}  // namespace detail

/// Bruck-Ryser-Chowla. v even: k - lambda must be a square. v odd:
/// (k - lambda, (-1)^((v-1)/2) lambda)_p = +1 at every odd prime.
inline Verdict brc_test(const DesignParams& d, EvaluationTrace* trace = nullptr) {
    if (!admissible(d))
        return Verdict::excluded(Reason::inadmissible, std::nullopt, "k(k-1)=lambda(v-1),0<lambda<k<v");
    const Int n = d.order();
    if (d.v % 2 == 0) {
        if (!detail::traced_square(n, trace)) return Verdict::excluded(Reason::non_square, n, "k-lambda");
        return Verdict::not_excluded();
    }
    const Int c = detail::minus_one_power((d.v - 1) / 2) * d.lambda;
    if (auto p = detail::first_failing_prime(n, c, trace)) return Verdict::local(*p, n, c, "brc");
    return Verdict::not_excluded();
}

/// Bruck-Ryser: a projective plane of order n = 1, 2 (mod 4) needs n = a^2 + b^2.
inline Verdict plane_test(const Int& n) {
    if (n < 2) throw DomainError("plane_test: order must be at least 2, got " + n.str());
    const Int r = n % 4;
    if ((r == 1 || r == 2) && !two_squares_test(n))
        return Verdict::excluded(Reason::not_sum_of_two_squares, n, "order");
    return Verdict::not_excluded();
}

// =============================================================================
// Decompositions M = M1 + M2 of a symmetric design into two symmetric designs
// =============================================================================

struct DecompositionParams {
    Int v;
    Int k1, lambda1;
    Int k2, lambda2;
    Int alpha;  // 2 k1 k2 / (v - 1)
    Int sigma;  // (k1 - lambda1)(k2 - lambda2) - alpha + 1
    Int tau;    // v lambda1 lambda2 + lambda2 (k1 - lambda1) + lambda1 (k2 - lambda2) + alpha

    Int k() const { return k1 + k2; }
    Int lambda() const { return lambda1 + lambda2 + alpha; }
    DesignParams first() const { return {v, k1, lambda1}; }
    DesignParams second() const { return {v, k2, lambda2}; }
    DesignParams sum() const { return {v, k(), lambda()}; }

    friend bool operator==(const DecompositionParams&, const DecompositionParams&) = default;
};

struct DecompositionRejection {
    std::string condition;
    friend bool operator==(const DecompositionRejection&, const DecompositionRejection&) = default;
};

using DecompositionDerivation = std::variant<DecompositionParams, DecompositionRejection>;

namespace detail {

// Components may also be the trivial (v, 1, 0) design (a permutation matrix).
inline bool admissible_component(const Int& v, const Int& k, const Int& lambda) {
    return admissible(v, k, lambda) || (k == 1 && lambda == 0 && v > 1);
}

}  // namespace detail

/// Derives lambda_i, alpha, sigma and tau from (v, k1, k2), or names the
/// first integrality/admissibility condition that fails.
inline DecompositionDerivation decomposition_derive(const Int& v, const Int& k1, const Int& k2) {
    if (k1 <= 0 || k2 <= 0) return DecompositionRejection{"k1>0,k2>0"};
    if (k1 + k2 >= v) return DecompositionRejection{"k1+k2<v"};
    const Int vm1 = v - 1;
    if ((k1 * (k1 - 1)) % vm1 != 0) return DecompositionRejection{"lambda1-integral"};
    if ((k2 * (k2 - 1)) % vm1 != 0) return DecompositionRejection{"lambda2-integral"};
    if ((2 * k1 * k2) % vm1 != 0) return DecompositionRejection{"alpha-integral"};
    DecompositionParams dp;
    dp.v = v;
    dp.k1 = k1;
    dp.k2 = k2;
    dp.lambda1 = k1 * (k1 - 1) / vm1;
    dp.lambda2 = k2 * (k2 - 1) / vm1;
    dp.alpha = 2 * k1 * k2 / vm1;
    if (!detail::admissible_component(v, k1, dp.lambda1)) return DecompositionRejection{"(v,k1,lambda1)-admissible"};
    if (!detail::admissible_component(v, k2, dp.lambda2)) return DecompositionRejection{"(v,k2,lambda2)-admissible"};
    if (!admissible(dp.sum())) return DecompositionRejection{"(v,k1+k2,lambda1+lambda2+alpha)-admissible"};
    dp.sigma = (k1 - dp.lambda1) * (k2 - dp.lambda2) - dp.alpha + 1;
    dp.tau = v * dp.lambda1 * dp.lambda2 + dp.lambda2 * (k1 - dp.lambda1) + dp.lambda1 * (k2 - dp.lambda2) + dp.alpha;
    return dp;
}

struct DecompositionVerdict {
    Verdict verdict;            // first failure among the checks below, in order
    Verdict gram;               // the sigma condition on (M1 M2^T + I)(M1 M2^T + I)^T
    Verdict first_component;    // brc_test of (v, k1, lambda1)
    Verdict second_component;   // brc_test of (v, k2, lambda2)
    Verdict sum;                // brc_test of (v, k, lambda)
};

/// The sigma condition: v even needs sigma square; v odd needs
/// (sigma, (-1)^((v-1)/2) v)_p = +1 at every odd prime. The component and
/// sum designs must pass brc_test as well.
inline DecompositionVerdict decomposition_test(const DecompositionParams& dp, EvaluationTrace* trace = nullptr) {
    const Int kk = dp.k1 * dp.k2 + 1;
    if (dp.sigma + dp.v * dp.tau != kk * kk)
        throw DomainError("decomposition_test: sigma + v tau != (k1 k2 + 1)^2");
    if (dp.alpha * (dp.v - 1) != 2 * dp.k1 * dp.k2)
        throw DomainError("decomposition_test: alpha != 2 k1 k2 / (v - 1)");
    if (!admissible(dp.sum())) throw DomainError("decomposition_test: sum design " + dp.sum().str() + " inadmissible");

    DecompositionVerdict out;
    if (dp.sigma < 0) {
        // Q Q^T is positive semidefinite with eigenvalue sigma.
        out.gram = Verdict::excluded(Reason::positivity_fail, dp.sigma, "sigma");
    } else if (dp.v % 2 == 0) {
        if (!detail::traced_square(dp.sigma, trace)) out.gram = Verdict::excluded(Reason::non_square, dp.sigma, "sigma");
    } else if (dp.sigma != 0) {
        const Int c = detail::minus_one_power((dp.v - 1) / 2) * dp.v;
        if (auto p = detail::first_failing_prime(dp.sigma, c, trace)) out.gram = Verdict::local(*p, dp.sigma, c, "sigma");
    }

    auto component = [&](const DesignParams& d) {
        if (d.k == 1 && d.lambda == 0) return Verdict::not_excluded();
        return brc_test(d, trace);
    };
    out.first_component = component(dp.first());
    out.second_component = component(dp.second());
    out.sum = brc_test(dp.sum(), trace);

    for (const Verdict* v : {&out.gram, &out.first_component, &out.second_component, &out.sum}) {
        if (v->is_excluded()) {
            out.verdict = *v;
            break;
        }
    }
    return out;
}

// =============================================================================
// Symmetric group divisible designs
// =============================================================================

struct GDDParams {
    Int m;  // number of groups
    Int n;  // group size
    Int k;
    Int lambda1;  // index within a group
    Int lambda2;  // index across groups

    Int points() const { return m * n; }
    Int p() const { return k * k - m * n * lambda2; }
    Int q() const { return k - lambda1; }
    bool replication_holds() const { return (n - 1) * lambda1 + n * (m - 1) * lambda2 == k * (k - 1); }

    friend bool operator==(const GDDParams&, const GDDParams&) = default;
};

/// Bose-Connor conditions for a symmetric group divisible design, checked
/// in order; the first failure is reported.
inline Verdict bose_connor_test(const GDDParams& g) {
    if (g.m < 1 || g.n < 1) return Verdict::excluded(Reason::inadmissible, std::nullopt, "m>=1,n>=1");
    if (!g.replication_holds())
        return Verdict::excluded(Reason::inadmissible, std::nullopt, "(n-1)lambda1+n(m-1)lambda2=k(k-1)");
    const Int P = g.p();
    const Int Q = g.q();
    if (P <= 0) return Verdict::excluded(Reason::positivity_fail, P, "P");
    if (Q <= 0) return Verdict::excluded(Reason::positivity_fail, Q, "Q");

    // P^(m-1) Q^(m(n-1)) is a square iff the odd-exponent factors multiply to one.
    Int reduced = 1;
    if ((g.m - 1) % 2 != 0) reduced *= P;
    if ((g.m * (g.n - 1)) % 2 != 0) reduced *= Q;
    if (!is_perfect_square(reduced)) return Verdict::excluded(Reason::non_square, reduced, "P^(m-1)Q^(m(n-1))");

    const Int nl2 = g.n * g.lambda2;
    if (g.m % 2 == 0) {
        if (!is_perfect_square(P)) return Verdict::excluded(Reason::non_square, P, "P");
        if (g.m % 4 == 2 && Q % 2 == 0) {
            if (auto p = detail::first_failing_prime(Q, -1, nullptr)) return Verdict::local(*p, Q, -1, "(Q,-1)");
        }
        return Verdict::not_excluded();
    }
    const Int sign_m = detail::minus_one_power(g.m * (g.m - 1) / 2);
    if (g.n % 2 == 0) {
        if (!is_perfect_square(Q)) return Verdict::excluded(Reason::non_square, Q, "Q");
        if (nl2 != 0) {
            const Int a = sign_m * nl2;
            if (auto p = detail::first_failing_prime(a, P, nullptr)) return Verdict::local(*p, a, P, "(+-n*lambda2,P)");
        }
        return Verdict::not_excluded();
    }
    // m and n odd.
    if (nl2 != 0) {
        const Int a = sign_m * nl2;
        const Int b = detail::minus_one_power(g.n * (g.n - 1) / 2) * g.n;
        for (const Int& p : odd_prime_divisors({nl2, P, Q, g.n})) {
            if (detail::hilbert_odd_unchecked(a, P, p) != detail::hilbert_odd_unchecked(b, Q, p))
                return Verdict::excluded(Reason::local_invariant, p, "(+-n*lambda2,P)!=(+-n,Q)");
        }
    }
    return Verdict::not_excluded();
}

// =============================================================================
// Maximal determinant of {+1,-1} matrices
// =============================================================================

enum class MaxDetCase { mod4_1, mod4_2, mod4_3 };

inline std::string to_string(MaxDetCase c) {
    switch (c) {
        case MaxDetCase::mod4_1: return "1";
        case MaxDetCase::mod4_2: return "2";
        case MaxDetCase::mod4_3: return "3";
    }
    return "?";
}

struct MaxDetVerdict {
    Int n;
    MaxDetCase residue = MaxDetCase::mod4_1;
    bool applicable = true;  // false for n = 3 mod 4 outside n = 7m >= 63
    Verdict bound_attainable;
};

/// Whether the order-n maximal determinant bound can be met with equality.
inline MaxDetVerdict maxdet_test(const Int& n) {
    if (n < 2) throw DomainError("maxdet_test: order must be at least 2, got " + n.str());
    const Int r = n % 4;
    if (r == 0) throw DomainError("maxdet_test: n = 0 mod 4 is the Hadamard case, which has no obstruction here");
    MaxDetVerdict out;
    out.n = n;
    if (r == 1) {
        out.residue = MaxDetCase::mod4_1;
        const Int t = 2 * n - 1;
        if (!is_perfect_square(t)) out.bound_attainable = Verdict::excluded(Reason::non_square, t, "2n-1");
        return out;
    }
    if (r == 2) {
        out.residue = MaxDetCase::mod4_2;
        const Int t = 2 * n - 2;
        if (!two_squares_test(t)) out.bound_attainable = Verdict::excluded(Reason::not_sum_of_two_squares, t, "2n-2");
        return out;
    }
    out.residue = MaxDetCase::mod4_3;
    if (n < 63 || n % 7 != 0) {
        out.applicable = false;
        return out;
    }
    const Int m = n / 7;
    const Int s = 4 * m - 3;
    if (!is_perfect_square(s)) {
        out.bound_attainable = Verdict::excluded(Reason::non_square, s, "4m-3");
        return out;
    }
    const Int a = 11 * m - 3;
    const Int b = -(7 * m - 3);
    if (auto p = detail::first_failing_prime(a, b, nullptr))
        out.bound_attainable = Verdict::local(*p, a, b, "(11m-3,-(7m-3))");
    return out;
}

}  // namespace qfd
