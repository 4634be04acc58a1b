#pragma once

/**
 * @file forms.hpp
 * @brief Rational quadratic forms up to congruence.
 *
 * A symmetric matrix S represents the form x -> x^T S x; S and N^T S N
 * (N invertible over Q) represent the same form. The invariants computed
 * here are the dimension, the signature, the discriminant (square-free part
 * of det S) and the Hasse-Minkowski symbols
 *
 *     H(<a_1, ..., a_n>, p) = prod_{i<j} (a_i, a_j)_p
 *
 * at odd primes. Together with the product formula these determine the
 * rational congruence class.
 */

#include "qfd/arith.hpp"
#include "qfd/matrix.hpp"
#include "qfd/symbols.hpp"
#include "qfd/verdict.hpp"

#include <map>
#include <string>
#include <vector>

namespace qfd {

/// A polarised form <a_1, ..., a_n>; every entry nonzero and square-free.
class DiagonalForm {
public:
    DiagonalForm() = default;

    explicit DiagonalForm(std::vector<Int> entries) : entries_(std::move(entries)) {
        for (const Int& a : entries_) {
            if (a == 0) throw DomainError("diagonal form: zero entry");
            if (square_free_part(a) != a) throw DomainError("diagonal form: entry " + a.str() + " is not square-free");
        }
    }

    DiagonalForm(std::initializer_list<long long> entries)
        : DiagonalForm(std::vector<Int>(entries.begin(), entries.end())) {}

    /// Reduces every entry to its square class; the form is unchanged.
    template <typename T>
    static DiagonalForm reduced(const std::vector<T>& entries) {
        std::vector<Int> out;
        out.reserve(entries.size());
        for (const T& a : entries) out.push_back(square_free_part(a));
        return DiagonalForm(std::move(out));
    }

    std::size_t size() const { return entries_.size(); }
    const std::vector<Int>& entries() const { return entries_; }
    const Int& operator[](std::size_t i) const { return entries_[i]; }

    /// Square-free part of the product of the entries.
    Int discriminant() const {
        Int prod = 1;
        for (const Int& a : entries_) prod *= a;
        return square_free_part(prod);
    }

    SymMatrix matrix() const { return SymMatrix::diagonal(std::vector<Rat>(entries_.begin(), entries_.end())); }

    std::string str() const {
        std::string s = "<";
        for (std::size_t i = 0; i < entries_.size(); ++i) s += (i ? ", " : "") + entries_[i].str();
        return s + ">";
    }

    friend bool operator==(const DiagonalForm&, const DiagonalForm&) = default;

private:
    std::vector<Int> entries_;
};

struct Signature {
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::size_t zeros = 0;

    std::size_t dimension() const { return positives + negatives + zeros; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// T^T S T = diag(diagonal), exactly, for the S the witness came from.
struct CongruenceWitness {
    Matrix transform;
    std::vector<Rat> diagonal;  // zeros (singular S) come after the nonzero entries

    /// Nonzero entries reduced to square-free integers.
    DiagonalForm form() const {
        std::vector<Rat> nonzero;
        for (const Rat& d : diagonal)
            if (d != 0) nonzero.push_back(d);
        return DiagonalForm::reduced(nonzero);
    }

    Signature signature() const {
        Signature s;
        for (const Rat& d : diagonal) {
            if (d > 0)
                ++s.positives;
            else if (d < 0)
                ++s.negatives;
            else
                ++s.zeros;
        }
        return s;
    }

    bool verify(const SymMatrix& s) const {
        return transform.transpose() * s.matrix() * transform == Matrix::diagonal(diagonal);
    }
};

/// Which nonzero diagonal entry becomes the next pivot.
enum class PivotOrder { first, last };

/// Congruence diagonalization by simultaneous row and column operations.
/// Nonzero diagonal entries are rescaled to square-free integers; a zero
/// trailing block (singular S) is reported as zeros.
inline CongruenceWitness diagonalize(const SymMatrix& s, PivotOrder order = PivotOrder::first) {
    const std::size_t n = s.size();
    Matrix a = s.matrix();
    Matrix t = Matrix::identity(n);

    auto swap_index = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
        for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
        for (std::size_t k = 0; k < n; ++k) std::swap(t(k, i), t(k, j));
    };
    // Column i += c * column j, then row i += c * row j.
    auto add_multiple = [&](std::size_t i, std::size_t j, const Rat& c) {
        for (std::size_t k = 0; k < n; ++k) a(k, i) += c * a(k, j);
        for (std::size_t k = 0; k < n; ++k) a(i, k) += c * a(j, k);
        for (std::size_t k = 0; k < n; ++k) t(k, i) += c * t(k, j);
    };

    for (std::size_t i = 0; i < n; ++i) {
        bool block_is_zero = false;
        for (;;) {
            std::size_t pivot = n;
            if (order == PivotOrder::first) {
                if (a(i, i) != 0) pivot = i;
                for (std::size_t j = i + 1; j < n && pivot == n; ++j)
                    if (a(j, j) != 0) pivot = j;
            } else {
                for (std::size_t j = n; j-- > i && pivot == n;)
                    if (a(j, j) != 0) pivot = j;
            }
            if (pivot != n) {
                if (pivot != i) swap_index(i, pivot);
                break;
            }
            // Every remaining diagonal entry is zero.
            std::size_t partner = n;
            for (std::size_t j = i + 1; j < n && partner == n; ++j)
                if (a(i, j) != 0) partner = j;
            if (partner != n) {
                add_multiple(i, partner, 1);  // new a(i,i) = 2 a(i,partner)
                break;
            }
            std::size_t nonzero_row = n;
            for (std::size_t j = i + 1; j < n && nonzero_row == n; ++j)
                for (std::size_t k = i; k < n; ++k)
                    if (a(j, k) != 0) {
                        nonzero_row = j;
                        break;
                    }
            if (nonzero_row == n) {
                block_is_zero = true;
                break;
            }
            swap_index(i, nonzero_row);
        }
        if (block_is_zero) break;

        for (std::size_t j = i + 1; j < n; ++j) {
            if (a(j, i) == 0) continue;
            add_multiple(j, i, Rat(-a(j, i) / a(i, i)));
        }
    }

    CongruenceWitness w;
    w.diagonal.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rat& d = a(i, i);
        if (d == 0) continue;
        // d = num/den = num*den / den^2 = sf * r^2 / den^2; scale column i by den/r.
        Int num = boost::multiprecision::numerator(d);
        Int den = boost::multiprecision::denominator(d);
        Int sf = square_free_part(Int(num * den));
        Int r = isqrt(Int(num * den / sf));
        Rat scale(den, r);
        for (std::size_t k = 0; k < n; ++k) t(k, i) *= scale;
        w.diagonal[i] = sf;
    }
    w.transform = std::move(t);
    return w;
}

/// (m_1, ..., m_n), m_k the determinant of the top-left k x k block.
inline std::vector<Rat> leading_minors(const SymMatrix& s) {
    std::vector<Rat> out;
    out.reserve(s.size());
    for (std::size_t k = 1; k <= s.size(); ++k) out.push_back(s.matrix().leading(k).determinant());
    return out;
}

/// Sylvester's criterion: every leading minor strictly positive.
inline bool is_positive_definite(const SymMatrix& s) {
    for (const Rat& m : leading_minors(s))
        if (m <= 0) return false;
    return true;
}

inline Int discriminant(const SymMatrix& s) {
    Rat det = s.determinant();
    if (det == 0) throw DomainError("discriminant: matrix is singular");
    return square_free_part(det);
}

inline Signature signature(const SymMatrix& s) { return diagonalize(s).signature(); }

/// c(S, p) = (-1, -m_n)_p prod_{i<n} (m_i, -m_{i+1})_p over the leading minors.
inline SymbolValue pall_invariant(const SymMatrix& s, const Int& p) {
    detail::require_odd_prime(p, "pall_invariant");
    std::vector<Rat> m = leading_minors(s);
    for (std::size_t k = 0; k < m.size(); ++k)
        if (m[k] == 0) throw DomainError("pall_invariant: leading minor m_" + std::to_string(k + 1) + " vanishes");
    if (m.empty()) return SymbolValue::plus();
    std::vector<Int> cls;
    cls.reserve(m.size());
    for (const Rat& x : m) cls.push_back(detail::square_class(x));
    SymbolValue c = detail::hilbert_odd_unchecked(-1, -cls.back(), p);
    for (std::size_t i = 0; i + 1 < cls.size(); ++i) c *= detail::hilbert_odd_unchecked(cls[i], -cls[i + 1], p);
    return c;
}

/// H(D, p) = prod_{i<j} (a_i, a_j)_p.
inline SymbolValue hasse_minkowski(const DiagonalForm& d, const Int& p) {
    detail::require_odd_prime(p, "hasse_minkowski");
    SymbolValue h;
    const auto& a = d.entries();
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool i_unit = a[i] % p != 0;
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (i_unit && a[j] % p != 0) continue;  // two units give +1
            h *= detail::hilbert_odd_unchecked(a[i], a[j], p);
        }
    }
    return h;
}

/// Odd primes dividing some entry; H(D, p) = +1 at every other odd prime.
inline std::vector<Int> relevant_primes(const DiagonalForm& d) {
    std::vector<Int> out;
    for (const Int& a : d.entries()) {
        auto ps = odd_prime_divisors(a);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct FormInvariants {
    std::size_t dimension = 0;
    Signature signature;
    Int discriminant = 1;
    std::map<Int, SymbolValue> locals;  // only primes where H = -1
    std::vector<Int> relevant_primes;   // the search set of the diagonalization used

    SymbolValue local(const Int& p) const {
        auto it = locals.find(p);
        return it == locals.end() ? SymbolValue::plus() : it->second;
    }

    /// Compares the congruence invariants; the search set is not one.
    friend bool operator==(const FormInvariants& a, const FormInvariants& b) {
        return a.dimension == b.dimension && a.signature == b.signature && a.discriminant == b.discriminant &&
               a.locals == b.locals;
    }
};

inline FormInvariants invariants_of(const DiagonalForm& d, Signature sig) {
    FormInvariants inv;
    inv.dimension = sig.dimension();
    inv.signature = sig;
    inv.discriminant = d.discriminant();
    inv.relevant_primes = relevant_primes(d);
    for (const Int& p : inv.relevant_primes) {
        SymbolValue h = hasse_minkowski(d, p);
        if (h.is_minus()) inv.locals.emplace(p, h);
    }
    return inv;
}

inline FormInvariants form_invariants(const SymMatrix& s, PivotOrder order = PivotOrder::first) {
    if (s.determinant() == 0) throw DomainError("form_invariants: matrix is singular");
    CongruenceWitness w = diagonalize(s, order);
    return invariants_of(w.form(), w.signature());
}

/// Rational congruence of nonsingular forms. A `true` answer relies on the
/// Hasse-Minkowski theorem: matching dimension, signature, discriminant and
/// odd-prime invariants fix the symbol at 2 through the product formula.
inline bool forms_equivalent(const SymMatrix& a, const SymMatrix& b) {
    if (a.determinant() == 0 || b.determinant() == 0) throw DomainError("forms_equivalent: matrix is singular");
    return form_invariants(a) == form_invariants(b);
}

/// Sufficient test that a positive definite S is not M^T M for rational M.
inline Verdict gram_exclusion(const SymMatrix& s) {
    if (!is_positive_definite(s)) throw DomainError("gram_exclusion: matrix is not positive definite");
    FormInvariants inv = form_invariants(s);
    if (inv.discriminant != 1) return Verdict::excluded(Reason::non_square, inv.discriminant, "discriminant");
    if (!inv.locals.empty()) return Verdict::excluded(Reason::local_invariant, inv.locals.begin()->first, "hasse-minkowski");
    return Verdict::not_excluded();
}

/// <n, n> and <m, m> are similar iff r3(n) = r3(m).
inline bool dim2_similar(const Int& n, const Int& m) {
    if (n < 1 || m < 1) throw DomainError("dim2_similar: arguments must be positive");
    return r3(n) == r3(m);
}

/// H(AB, p) from the factors: H(A,p) H(B,p) (disc A, disc B)_p prod (a_i, b_i)_p.
inline SymbolValue product_invariant(const DiagonalForm& a, const DiagonalForm& b, const Int& p) {
    if (a.size() != b.size())
        throw DomainError("product_invariant: lengths differ (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
    SymbolValue h = hasse_minkowski(a, p) * hasse_minkowski(b, p);
    h *= detail::hilbert_odd_unchecked(a.discriminant(), b.discriminant(), p);
    for (std::size_t i = 0; i < a.size(); ++i) h *= detail::hilbert_odd_unchecked(a[i], b[i], p);
    return h;
}

/// Diagonalizes (a - b) I_d + b J_d with the rational orthogonal basis
/// f_1 = (1, ..., 1), f_i = (1, ..., 1, -(i-1), 0, ..., 0). The exact diagonal
/// is ((a - b + b d) d, 2*1*(a - b), ..., d(d-1)(a - b)).
inline CongruenceWitness polarize_comb(const Int& a, const Int& b, std::size_t d) {
    if (d < 2) throw DomainError("polarize_comb: dimension must be at least 2");
    CongruenceWitness w;
    w.transform = Matrix(d, d);
    for (std::size_t r = 0; r < d; ++r) w.transform(r, 0) = 1;
    for (std::size_t c = 1; c < d; ++c) {
        for (std::size_t r = 0; r < c; ++r) w.transform(r, c) = 1;
        w.transform(c, c) = -static_cast<long long>(c);
    }
    const Int diff = a - b;
    const Int dd = d;
    w.diagonal.push_back(Rat((diff + b * dd) * dd));
    for (std::size_t i = 2; i <= d; ++i) w.diagonal.push_back(Rat(Int(i) * Int(i - 1) * diff));
    return w;
}

/// Closed form for the local invariant of (a - b) I_d + b J_d:
/// (a-b+db, a-b)^(d-1) (a-b, a-b)^C(d-1,2) (a-b, d) (a-b+db, d).
inline SymbolValue comb_invariant(const Int& a, const Int& b, const Int& d, const Int& p) {
    detail::require_odd_prime(p, "comb_invariant");
    if (d < 1) throw DomainError("comb_invariant: dimension must be positive");
    const Int diff = a - b;
    const Int top = diff + d * b;
    if (diff == 0) throw DomainError("comb_invariant: a - b must be nonzero");
    if (top == 0) throw DomainError("comb_invariant: a - b + d b must be nonzero");
    SymbolValue h;
    if ((d - 1) % 2 != 0) h *= detail::hilbert_odd_unchecked(top, diff, p);
    if (((d - 1) * (d - 2) / 2) % 2 != 0) h *= detail::hilbert_odd_unchecked(diff, diff, p);
    h *= detail::hilbert_odd_unchecked(diff, d, p);
    h *= detail::hilbert_odd_unchecked(top, d, p);
    return h;
}

}  // namespace qfd
