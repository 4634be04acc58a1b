#pragma once

/**
 * @file cli.hpp
 * @brief Command parsing, dispatch and report rendering for the qfd tool.
 *
 * Kept in the library so the tests can drive `run` without a subprocess.
 */

#include "qfd/designs.hpp"
#include "qfd/forms.hpp"
#include "qfd/oracle.hpp"
#include "qfd/scan.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qfd::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { records, table };

/// One output line in record mode: ordered key=value pairs.
using Record = std::vector<std::pair<std::string, std::string>>;

struct Command {
    std::string verb;     // symbol | form | design | scan | help
    std::string subverb;  // legendre, hilbert, diagonalize, brc, planes, ...
    std::vector<Int> numbers;
    std::optional<std::string> file;  // form input; "-" or absent means standard input
    Format format = Format::table;
    bool verify = false;
    std::optional<std::int64_t> max;
    unsigned jobs = 1;
};

inline const char* usage_text() {
    return "usage: qfd [--format records|table] [--verify] COMMAND\n"
           "  symbol legendre A P\n"
           "  symbol hilbert A B P\n"
           "  form diagonalize|invariants|gram-test [FILE|-]\n"
           "  design brc V K L\n"
           "  design plane N\n"
           "  design decompose V K1 K2\n"
           "  design gdd M N K L1 L2\n"
           "  design maxdet N\n"
           "  scan planes|decompositions|maxdet --max X [--jobs J]\n";
}

// -----------------------------------------------------------------------------
// Matrix text
// -----------------------------------------------------------------------------

namespace detail {

inline std::string at(std::size_t r, std::size_t c) {
    return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

inline std::optional<Rat> parse_rational(const std::string& token) {
    Int num, den = 1;
    auto slash = token.find('/');
    if (slash == std::string::npos) {
        if (!parse_int(token, num)) return std::nullopt;
    } else {
        if (!parse_int(token.substr(0, slash), num) || !parse_int(token.substr(slash + 1), den) || den == 0)
            return std::nullopt;
    }
    return Rat(num, den);
}

}  // namespace detail

/// Whitespace-separated rows of integers or p/q fractions, one row per line.
/// Blank lines are ignored.
inline SymMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<Rat>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream tokens(line);
        std::vector<Rat> row;
        std::string token;
        while (tokens >> token) {
            auto value = detail::parse_rational(token);
            if (!value)
                throw ParseError("non-numeric entry '" + token + "' at " + detail::at(rows.size() + 1, row.size() + 1));
            row.push_back(*value);
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged row " + std::to_string(rows.size() + 1) + ": expected " +
                             std::to_string(rows.front().size()) + " entries, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty matrix");
    const std::size_t n = rows.size();
    if (rows.front().size() != n)
        throw ParseError("not square: " + std::to_string(n) + " rows of " + std::to_string(rows.front().size()) +
                         " entries");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m(i, j) != m(j, i))
                throw ParseError("asymmetric at " + detail::at(i + 1, j + 1) + "/" + detail::at(j + 1, i + 1));
    return SymMatrix(std::move(m));
}

// -----------------------------------------------------------------------------
// Argument parsing
// -----------------------------------------------------------------------------

namespace detail {

inline bool looks_numeric(const std::string& s) {
    return s.size() > 1 && (s[0] == '-' || s[0] == '+') && std::isdigit(static_cast<unsigned char>(s[1]));
}

inline std::int64_t parse_count(const std::string& flag, const std::string& value, std::int64_t lo) {
    Int n;
    if (!parse_int(value, n) || n < lo || n > std::numeric_limits<std::int64_t>::max())
        throw UsageError("invalid value '" + value + "' for " + flag);
    return static_cast<std::int64_t>(n);
}

inline std::size_t arity(const std::string& verb, const std::string& sub) {
    if (verb == "symbol") {
        if (sub == "legendre") return 2;
        if (sub == "hilbert") return 3;
    } else if (verb == "design") {
        if (sub == "brc" || sub == "decompose") return 3;
        if (sub == "plane" || sub == "maxdet") return 1;
        if (sub == "gdd") return 5;
    } else if (verb == "form") {
        if (sub == "diagonalize" || sub == "invariants" || sub == "gram-test") return 0;
    } else if (verb == "scan") {
        if (sub == "planes" || sub == "decompositions" || sub == "maxdet") return 0;
    }
    throw UsageError("unknown " + verb + " command '" + sub + "'");
}

}  // namespace detail

/// Total over argv: returns a Command or throws UsageError naming the
/// offending token.
inline Command parse(const std::vector<std::string>& args) {
    Command cmd;
    std::vector<std::string> positional;
    bool saw_max = false, saw_jobs = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string tok = args[i];
        if (tok.size() > 2 && tok.rfind("--", 0) == 0) {
            std::string name = tok, value;
            bool inline_value = false;
            if (auto eq = tok.find('='); eq != std::string::npos) {
                name = tok.substr(0, eq);
                value = tok.substr(eq + 1);
                inline_value = true;
            }
            auto take_value = [&]() -> std::string {
                if (inline_value) return value;
                if (i + 1 >= args.size()) throw UsageError("missing value for " + name);
                return args[++i];
            };
            if (name == "--format") {
                std::string v = take_value();
                if (v == "records")
                    cmd.format = Format::records;
                else if (v == "table")
                    cmd.format = Format::table;
                else
                    throw UsageError("invalid value '" + v + "' for --format");
            } else if (name == "--verify" && !inline_value) {
                cmd.verify = true;
            } else if (name == "--help" && !inline_value) {
                cmd.verb = "help";
                return cmd;
            } else if (name == "--max") {
                cmd.max = detail::parse_count(name, take_value(), 1);
                saw_max = true;
            } else if (name == "--jobs") {
                cmd.jobs = static_cast<unsigned>(detail::parse_count(name, take_value(), 1));
                saw_jobs = true;
            } else {
                throw UsageError("unknown option '" + tok + "'");
            }
            continue;
        }
        if (tok.size() > 1 && tok[0] == '-' && !detail::looks_numeric(tok)) throw UsageError("unknown option '" + tok + "'");
        positional.push_back(std::move(tok));
    }

    if (positional.empty()) throw UsageError("missing command");
    cmd.verb = positional[0];
    if (cmd.verb == "help") return cmd;
    if (cmd.verb != "symbol" && cmd.verb != "form" && cmd.verb != "design" && cmd.verb != "scan")
        throw UsageError("unknown command '" + cmd.verb + "'");
    if (positional.size() < 2) throw UsageError("missing " + cmd.verb + " command");
    cmd.subverb = positional[1];
    const std::size_t want = detail::arity(cmd.verb, cmd.subverb);

    if (cmd.verb != "scan" && saw_max) throw UsageError("unexpected option '--max'");
    if (cmd.verb != "scan" && saw_jobs) throw UsageError("unexpected option '--jobs'");

    std::vector<std::string> rest(positional.begin() + 2, positional.end());
    if (cmd.verb == "form") {
        if (rest.size() > 1) throw UsageError("unexpected argument '" + rest[1] + "'");
        if (!rest.empty()) cmd.file = rest[0];
        return cmd;
    }
    if (rest.size() > want) throw UsageError("unexpected argument '" + rest[want] + "'");
    if (rest.size() < want)
        throw UsageError(cmd.verb + " " + cmd.subverb + " takes " + std::to_string(want) + " arguments, got " +
                         std::to_string(rest.size()));
    for (const auto& r : rest) {
        Int n;
        if (!parse_int(r, n)) throw UsageError("not an integer: '" + r + "'");
        cmd.numbers.push_back(std::move(n));
    }
    if (cmd.verb == "scan" && !cmd.max) throw UsageError("scan " + cmd.subverb + " requires --max");
    return cmd;
}

// -----------------------------------------------------------------------------
// Rendering
// -----------------------------------------------------------------------------

inline void add_verdict(Record& rec, const Verdict& v) {
    rec.emplace_back("outcome", to_string(v.outcome()));
    if (!v.is_excluded()) return;
    rec.emplace_back("reason", to_string(*v.reason()));
    if (v.witness()) rec.emplace_back("witness", v.witness()->str());
    if (!v.detail().empty()) rec.emplace_back("detail", v.detail());
}

namespace detail {

inline std::string sanitize(std::string s) {
    std::replace_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }, '_');
    return s;
}

inline std::string pad(const std::string& s, std::size_t width) {
    return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

}  // namespace detail

inline std::string format_record(const Record& rec) {
    std::string out;
    for (const auto& [k, v] : rec) {
        if (!out.empty()) out += ' ';
        out += k + "=" + detail::sanitize(v);
    }
    return out;
}

/// Aligned key/value lines for a single result.
inline std::string format_pairs(const Record& rec) {
    std::size_t width = 0;
    for (const auto& kv : rec) width = std::max(width, kv.first.size());
    std::string out;
    for (const auto& [k, v] : rec) out += detail::pad(k, width) + "  " + v + "\n";
    return out;
}

inline std::string format_single(const Record& rec, Format mode) {
    return mode == Format::records ? format_record(rec) + "\n" : format_pairs(rec);
}

inline Record row_record(const ScanRow& row) {
    Record rec;
    for (const auto& [k, v] : row.params) rec.emplace_back(k, v.str());
    add_verdict(rec, row.verdict);
    return rec;
}

inline std::vector<std::string> header_lines(const ScanReport& report) {
    Record query(report.query.begin(), report.query.end());
    const ScanSummary& s = report.summary;
    Record summary{{"total", std::to_string(s.total)},
                   {"excluded", std::to_string(s.excluded)},
                   {"not-excluded", std::to_string(s.not_excluded)},
                   {"dropped", std::to_string(s.dropped)},
                   {"smallest-not-excluded", s.smallest_not_excluded ? s.smallest_not_excluded->str() : "none"}};
    for (const auto& [reason, count] : s.by_reason) summary.emplace_back("reason." + reason, std::to_string(count));
    return {format_record(query), format_record(summary)};
}

/// Deterministic rendering: "# "-prefixed header lines (query, then summary),
/// then one line per stored row. Timing is not part of the report text.
inline std::string format_report(const ScanReport& report, Format mode) {
    std::string out;
    for (const auto& h : header_lines(report)) out += "# " + h + "\n";
    if (mode == Format::records) {
        for (const auto& row : report.rows) out += format_record(row_record(row)) + "\n";
        return out;
    }
    std::vector<Record> recs;
    std::vector<std::string> columns;
    for (const auto& row : report.rows) {
        recs.push_back(row_record(row));
        for (const auto& kv : recs.back())
            if (std::find(columns.begin(), columns.end(), kv.first) == columns.end()) columns.push_back(kv.first);
    }
    if (recs.empty()) return out;
    std::vector<std::size_t> width;
    for (const auto& c : columns) width.push_back(c.size());
    auto cell = [](const Record& r, const std::string& key) {
        for (const auto& kv : r)
            if (kv.first == key) return kv.second;
        return std::string("-");
    };
    for (const auto& r : recs)
        for (std::size_t c = 0; c < columns.size(); ++c) width[c] = std::max(width[c], cell(r, columns[c]).size());
    auto emit = [&](auto value_of) {
        std::string line;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::string v = value_of(c);
            line += c + 1 == columns.size() ? v : detail::pad(v, width[c]) + "  ";
        }
        out += line + "\n";
    };
    emit([&](std::size_t c) { return columns[c]; });
    for (const auto& r : recs) emit([&](std::size_t c) { return cell(r, columns[c]); });
    return out;
}

/// Parses record-mode text; header and blank lines are skipped.
inline std::vector<Record> parse_records(const std::string& text) {
    std::vector<Record> out;
    std::istringstream lines(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(lines, line)) {
        ++number;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream tokens(line);
        Record rec;
        std::string tok;
        while (tokens >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ParseError("line " + std::to_string(number) + ": expected key=value, got '" + tok + "'");
            rec.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        }
        out.push_back(std::move(rec));
    }
    return out;
}

// -----------------------------------------------------------------------------
// Dispatch
// -----------------------------------------------------------------------------

class VerifyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr std::int64_t kVerifyModulusLimit = std::int64_t{1} << 27;

inline std::string join(const std::vector<Int>& xs, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i].str();
    return s.empty() ? "none" : s;
}

// Brute-force (a, b)_p, refusing moduli too large to enumerate.
inline SymbolValue checked_bruteforce(const Int& a, const Int& b, const Int& p) {
    unsigned depth = (p == 2 ? 5u : 3u) + valuation(square_free_part(a), p) + valuation(square_free_part(b), p);
    Int mod = boost::multiprecision::pow(p, depth);
    if (mod > kVerifyModulusLimit)
        throw VerifyError("verify: " + p.str() + "^" + std::to_string(depth) + " is too large to enumerate");
    return oracle::hilbert_bruteforce(a, b, p);
}

// (a/p) by listing the squares modulo p.
inline SymbolValue legendre_bruteforce(const Int& a, const Int& p) {
    if (p > kVerifyModulusLimit) throw VerifyError("verify: " + p.str() + " is too large to enumerate");
    const auto q = static_cast<std::int64_t>(p);
    const auto r = static_cast<std::int64_t>(((a % p) + p) % p);
    for (std::int64_t x = 1; x < q; ++x)
        if (static_cast<std::int64_t>(static_cast<__int128>(x) * x % q) == r) return SymbolValue::plus();
    return SymbolValue::minus();
}

inline void verify_symbol(const char* what, SymbolValue fast, SymbolValue slow) {
    if (fast != slow)
        throw VerifyError(std::string("verify: ") + what + " mismatch, fast " + fast.str() + ", brute force " + slow.str());
}

inline void verify_verdict(const Verdict& v) {
    if (!v.is_excluded() || !v.symbol_args()) return;
    const auto& [a, b] = *v.symbol_args();
    verify_symbol("local witness", SymbolValue::minus(), checked_bruteforce(a, b, *v.witness()));
}

inline std::string read_input(const std::optional<std::string>& file) {
    if (!file || *file == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(*file);
    if (!in) throw ParseError("cannot open '" + *file + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline int status_of(const Verdict& v) { return v.is_excluded() ? 1 : 0; }

inline std::string signature_str(const Signature& s) {
    return std::to_string(s.positives) + "," + std::to_string(s.negatives) + "," + std::to_string(s.zeros);
}

inline int run_symbol(const Command& cmd, std::ostream& out) {
    const auto& n = cmd.numbers;
    SymbolValue value;
    Record rec{{"symbol", cmd.subverb}};
    if (cmd.subverb == "legendre") {
        value = legendre(n[0], n[1]);
        if (cmd.verify) verify_symbol("legendre", value, legendre_bruteforce(n[0], n[1]));
        rec.insert(rec.end(), {{"a", n[0].str()}, {"p", n[1].str()}});
    } else {
        value = hilbert(n[0], n[1], Place::prime(n[2]));
        if (cmd.verify) verify_symbol("hilbert", value, checked_bruteforce(n[0], n[1], n[2]));
        rec.insert(rec.end(), {{"a", n[0].str()}, {"b", n[1].str()}, {"p", n[2].str()}});
    }
    rec.emplace_back("value", value.str());
    out << (cmd.format == Format::records ? format_record(rec) : value.str()) << "\n";
    return 0;
}

inline int run_form(const Command& cmd, std::ostream& out) {
    const SymMatrix s = parse_matrix(read_input(cmd.file));
    Record rec{{"form", cmd.subverb}, {"dimension", std::to_string(s.size())}};
    int status = 0;
    if (cmd.subverb == "diagonalize") {
        CongruenceWitness w = diagonalize(s);
        if (!w.verify(s)) throw VerifyError("verify: diagonalization witness does not reproduce the input");
        std::vector<std::string> diag, rows;
        for (const Rat& d : w.diagonal) diag.push_back(to_string(d));
        for (std::size_t i = 0; i < w.transform.rows(); ++i) {
            std::string r;
            for (std::size_t j = 0; j < w.transform.cols(); ++j) r += (j ? "," : "") + to_string(w.transform(i, j));
            rows.push_back(r);
        }
        auto joined = [](const std::vector<std::string>& xs, const char* sep) {
            std::string r;
            for (std::size_t i = 0; i < xs.size(); ++i) r += (i ? sep : "") + xs[i];
            return r;
        };
        rec.emplace_back("diagonal", joined(diag, ","));
        rec.emplace_back("signature", signature_str(w.signature()));
        rec.emplace_back("transform", joined(rows, ";"));
    } else if (cmd.subverb == "invariants") {
        FormInvariants inv = form_invariants(s);
        std::vector<Int> minus;
        for (const auto& [p, h] : inv.locals) {
            minus.push_back(p);
            if (cmd.verify) {
                // H at p through the explicit pairwise product of brute-force symbols.
                DiagonalForm d = diagonalize(s).form();
                SymbolValue slow = SymbolValue::plus();
                for (std::size_t i = 0; i < d.size(); ++i)
                    for (std::size_t j = i + 1; j < d.size(); ++j) slow = slow * checked_bruteforce(d[i], d[j], p);
                verify_symbol("hasse-minkowski", h, slow);
            }
        }
        rec.emplace_back("signature", signature_str(inv.signature));
        rec.emplace_back("discriminant", inv.discriminant.str());
        rec.emplace_back("minus-primes", join(minus));
        rec.emplace_back("relevant-primes", join(inv.relevant_primes));
    } else {
        Verdict v = gram_exclusion(s);
        add_verdict(rec, v);
        status = status_of(v);
    }
    out << format_single(rec, cmd.format);
    return status;
}

inline int run_design(const Command& cmd, std::ostream& out) {
    const auto& n = cmd.numbers;
    Record rec{{"design", cmd.subverb}};
    Verdict v;
    if (cmd.subverb == "brc") {
        rec.insert(rec.end(), {{"v", n[0].str()}, {"k", n[1].str()}, {"lambda", n[2].str()}});
        v = brc_test({n[0], n[1], n[2]});
    } else if (cmd.subverb == "plane") {
        rec.emplace_back("n", n[0].str());
        v = plane_test(n[0]);
    } else if (cmd.subverb == "decompose") {
        rec.insert(rec.end(), {{"v", n[0].str()}, {"k1", n[1].str()}, {"k2", n[2].str()}});
        auto derived = decomposition_derive(n[0], n[1], n[2]);
        if (auto* rej = std::get_if<DecompositionRejection>(&derived)) {
            v = Verdict::excluded(Reason::inadmissible, std::nullopt, rej->condition);
        } else {
            const auto& dp = std::get<DecompositionParams>(derived);
            rec.insert(rec.end(), {{"lambda1", dp.lambda1.str()},
                                   {"lambda2", dp.lambda2.str()},
                                   {"alpha", dp.alpha.str()},
                                   {"sigma", dp.sigma.str()},
                                   {"tau", dp.tau.str()},
                                   {"k", dp.k().str()},
                                   {"lambda", dp.lambda().str()}});
            DecompositionVerdict dv = decomposition_test(dp);
            rec.emplace_back("sigma-condition", to_string(dv.gram.outcome()));
            rec.emplace_back("component1", to_string(dv.first_component.outcome()));
            rec.emplace_back("component2", to_string(dv.second_component.outcome()));
            rec.emplace_back("sum", to_string(dv.sum.outcome()));
            v = dv.verdict;
        }
    } else if (cmd.subverb == "gdd") {
        rec.insert(rec.end(), {{"m", n[0].str()},
                               {"n", n[1].str()},
                               {"k", n[2].str()},
                               {"lambda1", n[3].str()},
                               {"lambda2", n[4].str()}});
        v = bose_connor_test({n[0], n[1], n[2], n[3], n[4]});
    } else {
        MaxDetVerdict mv = maxdet_test(n[0]);
        rec.insert(rec.end(), {{"n", n[0].str()},
                               {"residue", to_string(mv.residue)},
                               {"applicable", mv.applicable ? "true" : "false"}});
        v = mv.bound_attainable;
    }
    if (cmd.verify) verify_verdict(v);
    add_verdict(rec, v);
    out << format_single(rec, cmd.format);
    return status_of(v);
}

inline int run_scan(const Command& cmd, std::ostream& out, std::ostream& err) {
    ScanOptions opts;
    opts.jobs = cmd.jobs;
    ScanReport report;
    if (cmd.subverb == "planes")
        report = scan_planes(*cmd.max, opts);
    else if (cmd.subverb == "decompositions")
        report = scan_even_decompositions(*cmd.max, opts);
    else
        report = scan_maxdet(*cmd.max, opts);
    if (cmd.verify)
        for (const auto& row : report.rows) verify_verdict(row.verdict);
    out << format_report(report, cmd.format);
    err << "elapsed " << report.elapsed_seconds << " s\n";
    return 0;
}

}  // namespace detail

/// Exit status: 0 answer computed or not excluded, 1 excluded, 2 usage,
/// parse, domain or verification error (message on `err`).
inline int run(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        if (cmd.verb == "help") {
            out << usage_text();
            return 0;
        }
        if (cmd.verb == "symbol") return detail::run_symbol(cmd, out);
        if (cmd.verb == "form") return detail::run_form(cmd, out);
        if (cmd.verb == "design") return detail::run_design(cmd, out);
        if (cmd.verb == "scan") return detail::run_scan(cmd, out, err);
        throw UsageError("unknown command '" + cmd.verb + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << usage_text();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const DomainError& e) {
        err << e.what() << "\n";
    } catch (const VerifyError& e) {
        err << e.what() << "\n";
    }
    return 2;
}

/// parse + run.
inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Command cmd;
    try {
        cmd = parse(args);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << usage_text();
        return 2;
    }
    return run(cmd, out, err);
}

}  // namespace qfd::cli
