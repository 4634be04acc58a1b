#pragma once

/**
 * @file scan.hpp
 * @brief Parameter sweeps over the design tests.
 *
 * A sweep is split into independent cells (one per order or per v). Cells are
 * evaluated by up to `jobs` worker threads and merged in cell order, so the
 * report does not depend on scheduling.
 */

#include "qfd/designs.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iterator>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace qfd {

struct ScanRow {
    std::vector<std::pair<std::string, Int>> params;  // first entry is the primary parameter
    Verdict verdict;

    const Int& primary() const { return params.front().second; }
};

struct ScanSummary {
    std::size_t total = 0;  // rows evaluated, stored or not
    std::size_t excluded = 0;
    std::size_t not_excluded = 0;
    std::size_t dropped = 0;  // not-excluded rows beyond the storage cap
    std::map<std::string, std::size_t> by_reason;
    std::optional<Int> smallest_not_excluded;

    friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

struct ScanReport {
    std::vector<std::pair<std::string, std::string>> query;  // describes the sweep and its normalization
    std::vector<ScanRow> rows;                               // ascending by primary parameter
    ScanSummary summary;
    double elapsed_seconds = 0;

    std::vector<Int> excluded_primaries() const {
        std::vector<Int> out;
        for (const auto& r : rows)
            if (r.verdict.is_excluded()) out.push_back(r.primary());
        return out;
    }
};

struct ScanOptions {
    unsigned jobs = 1;
    std::size_t max_not_excluded_rows = 10'000;
};

namespace detail {

template <typename Cell, typename Fn>
std::vector<ScanRow> evaluate_cells(const std::vector<Cell>& cells, unsigned jobs, Fn&& fn) {
    std::vector<std::vector<ScanRow>> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) results[i] = fn(cells[i]);
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    std::vector<ScanRow> merged;
    for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(merged));
    return merged;
}

inline void finish(ScanReport& report, std::vector<ScanRow> rows, const ScanOptions& opts,
                   std::chrono::steady_clock::time_point start) {
    ScanSummary& s = report.summary;
    for (auto& row : rows) {
        ++s.total;
        if (row.verdict.is_excluded()) {
            ++s.excluded;
            ++s.by_reason[to_string(*row.verdict.reason())];
            report.rows.push_back(std::move(row));
            continue;
        }
        ++s.not_excluded;
        if (!s.smallest_not_excluded) s.smallest_not_excluded = row.primary();
        if (s.not_excluded > opts.max_not_excluded_rows) {
            ++s.dropped;
            continue;
        }
        report.rows.push_back(std::move(row));
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline std::vector<std::int64_t> range_cells(std::int64_t from, std::int64_t to, std::int64_t step) {
    std::vector<std::int64_t> cells;
    for (std::int64_t x = from; x <= to; x += step) cells.push_back(x);
    return cells;
}

}  // namespace detail

/// plane_test for every order 2..n_max.
inline ScanReport scan_planes(std::int64_t n_max, const ScanOptions& opts = {}) {
    if (n_max < 2) throw DomainError("scan_planes: --max must be at least 2");
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.query = {{"report", "planes"}, {"max", std::to_string(n_max)}};
    auto rows = detail::evaluate_cells(detail::range_cells(2, n_max, 1), opts.jobs, [](std::int64_t n) {
        return std::vector<ScanRow>{{{{"n", Int(n)}}, plane_test(n)}};
    });
    detail::finish(report, std::move(rows), opts, start);
    return report;
}

/// All decompositions of symmetric designs on an even number v of points that
/// survive the sum-design square condition: k <= v/2 (complements are
/// symmetric), k - lambda square, k1 <= k2, and decomposition_derive succeeds.
inline std::vector<DecompositionParams> even_decomposition_candidates(std::int64_t v) {
    std::vector<DecompositionParams> out;
    if (v < 4 || v % 2 != 0) return out;
    const std::int64_t vm1 = v - 1;
    std::vector<std::int64_t> ks;  // block sizes with k(k-1)/(v-1) integral
    for (std::int64_t k = 1; k < v; ++k)
        if ((k * (k - 1)) % vm1 == 0) ks.push_back(k);
    std::vector<bool> is_k(static_cast<std::size_t>(v), false);
    for (auto k : ks) is_k[static_cast<std::size_t>(k)] = true;

    for (std::int64_t k : ks) {
        if (2 * k > v) break;
        const std::int64_t lambda = k * (k - 1) / vm1;
        if (!admissible(v, k, lambda) || !is_perfect_square(Int(k - lambda))) continue;
        for (std::int64_t k1 : ks) {
            const std::int64_t k2 = k - k1;
            if (k1 > k2) break;
            if (!is_k[static_cast<std::size_t>(k2)]) continue;
            auto derived = decomposition_derive(v, k1, k2);
            if (auto* dp = std::get_if<DecompositionParams>(&derived)) out.push_back(std::move(*dp));
        }
    }
    return out;
}

/// Even-v decomposition census: candidates whose component designs pass
/// brc_test, each with its decomposition_test verdict.
inline ScanReport scan_even_decompositions(std::int64_t v_max, const ScanOptions& opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.query = {{"report", "decompositions"},
                    {"max", std::to_string(v_max)},
                    {"parity", "even"},
                    {"normalization", "k<=v/2,k1<=k2"}};
    std::vector<std::int64_t> cells = v_max >= 4 ? detail::range_cells(4, v_max, 2) : std::vector<std::int64_t>{};
    auto rows = detail::evaluate_cells(cells, opts.jobs, [](std::int64_t v) {
        std::vector<ScanRow> out;
        for (const auto& dp : even_decomposition_candidates(v)) {
            if (brc_test(dp.first()).is_excluded() || brc_test(dp.second()).is_excluded()) continue;
            ScanRow row;
            row.params = {{"v", dp.v},           {"k", dp.k()},         {"lambda", dp.lambda()},
                          {"k1", dp.k1},         {"lambda1", dp.lambda1}, {"k2", dp.k2},
                          {"lambda2", dp.lambda2}, {"alpha", dp.alpha},    {"sigma", dp.sigma},
                          {"tau", dp.tau}};
            row.verdict = decomposition_test(dp).verdict;
            out.push_back(std::move(row));
        }
        return out;
    });
    detail::finish(report, std::move(rows), opts, start);
    return report;
}

/// maxdet_test for every n = 7m = 3 (mod 4) with 63 <= n <= n_max.
inline ScanReport scan_maxdet(std::int64_t n_max, const ScanOptions& opts = {}) {
    if (n_max < 63) throw DomainError("scan_maxdet: --max must be at least 63");
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.query = {{"report", "maxdet"}, {"max", std::to_string(n_max)}, {"residue", "3"}, {"multiple-of", "7"}};
    std::vector<std::int64_t> cells;
    for (std::int64_t n = 63; n <= n_max; n += 7)
        if (n % 4 == 3) cells.push_back(n);
    auto rows = detail::evaluate_cells(cells, opts.jobs, [](std::int64_t n) {
        return std::vector<ScanRow>{{{{"n", Int(n)}, {"m", Int(n / 7)}}, maxdet_test(n).bound_attainable}};
    });
    detail::finish(report, std::move(rows), opts, start);
    return report;
}

}  // namespace qfd
