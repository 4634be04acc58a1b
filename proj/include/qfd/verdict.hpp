#pragma once

/**
 * @file verdict.hpp
 * @brief One-sided feasibility outcomes shared by the form and design tests.
 *
 * Excluded means a necessary condition failed and carries the reason and a
 * witness. NotExcluded says nothing about existence.
 */

#include "qfd/arith.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <utility>

namespace qfd {

enum class Outcome { excluded, not_excluded };

enum class Reason {
    non_square,              // witness: the value that must be a perfect square
    not_sum_of_two_squares,  // witness: the value that must be a sum of two squares
    local_invariant,         // witness: the odd prime where the symbol is -1
    inadmissible,            // detail: the violated parameter rule
    positivity_fail,         // witness: the value that must be positive
};

inline std::string to_string(Outcome o) { return o == Outcome::excluded ? "excluded" : "not-excluded"; }

inline std::string to_string(Reason r) {
    switch (r) {
        case Reason::non_square: return "non-square";
        case Reason::not_sum_of_two_squares: return "not-sum-of-two-squares";
        case Reason::local_invariant: return "local-invariant";
        case Reason::inadmissible: return "inadmissible";
        case Reason::positivity_fail: return "positivity";
    }
    return "?";
}

inline std::optional<Outcome> parse_outcome(const std::string& s) {
    if (s == "excluded") return Outcome::excluded;
    if (s == "not-excluded") return Outcome::not_excluded;
    return std::nullopt;
}

inline std::optional<Reason> parse_reason(const std::string& s) {
    for (Reason r : {Reason::non_square, Reason::not_sum_of_two_squares, Reason::local_invariant,
                     Reason::inadmissible, Reason::positivity_fail})
        if (to_string(r) == s) return r;
    return std::nullopt;
}

class Verdict {
public:
    static Verdict not_excluded() { return Verdict(); }

    static Verdict excluded(Reason reason, std::optional<Int> witness = std::nullopt, std::string detail = {}) {
        Verdict v;
        v.outcome_ = Outcome::excluded;
        v.reason_ = reason;
        v.witness_ = std::move(witness);
        v.detail_ = std::move(detail);
        return v;
    }

    /// Excluded by a Hilbert symbol (a, b)_p = -1.
    static Verdict local(const Int& p, const Int& a, const Int& b, std::string detail = {}) {
        Verdict v = excluded(Reason::local_invariant, p, std::move(detail));
        v.symbol_args_ = std::make_pair(a, b);
        return v;
    }

    Outcome outcome() const { return outcome_; }
    bool is_excluded() const { return outcome_ == Outcome::excluded; }
    const std::optional<Reason>& reason() const { return reason_; }
    const std::optional<Int>& witness() const { return witness_; }
    const std::string& detail() const { return detail_; }

    /// The failing symbol's arguments for local_invariant verdicts.
    const std::optional<std::pair<Int, Int>>& symbol_args() const { return symbol_args_; }

    friend bool operator==(const Verdict&, const Verdict&) = default;

    std::string str() const {
        if (!is_excluded()) return "not-excluded";
        std::string s = "excluded(" + to_string(*reason_);
        if (witness_) s += ", " + witness_->str();
        if (!detail_.empty()) s += ", " + detail_;
        return s + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const Verdict& v) { return os << v.str(); }

private:
    Outcome outcome_ = Outcome::not_excluded;
    std::optional<Reason> reason_;
    std::optional<Int> witness_;
    std::string detail_;
    std::optional<std::pair<Int, Int>> symbol_args_;
};

}  // namespace qfd
