#ifndef EAMATCH_ASSIGN_HPP
#define EAMATCH_ASSIGN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "eamatch/alignment.hpp"
#include "eamatch/error.hpp"
#include "eamatch/simmatrix.hpp"

namespace eamatch {

/// Instrumentation for the sparse-path memory contract: matchers count the
/// auxiliary elements (mask bits, list slots, row buffers) they allocate.
struct MatchStats {
    std::size_t aux_elements = 0;
};

/// Output of the Sinkhorn routines: a dense non-negative plan. On
/// convergence rows sum to 1 and columns to rows/cols, within `tolerance`.
struct DoublyStochasticMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // row-major
    bool converged = false;
    std::size_t iterations = 0;
    double row_dev = 0; // max |row sum - 1|
    double col_dev = 0; // max |col sum - rows/cols|

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Greedy per-row (or per-column) argmax matching. Many-to-1 outcomes are
/// allowed; rows without a candidate are left unmatched.
inline Alignment match_dinf(const SimilarityMatrix& s,
                            MatchConfig::Direction direction = MatchConfig::Direction::Row,
                            MatchStats* stats = nullptr) {
    Alignment out;
    out.source = "dinf";
    if (direction == MatchConfig::Direction::Row) {
        for (std::size_t i = 0; i < s.rows(); ++i) {
            if (s.row_is_dummy(i)) continue;
            auto hit = s.row_argmax(i);
            if (!hit || s.col_is_dummy(hit->index)) continue;
            out.add(i, hit->index, hit->score);
        }
    } else {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            if (s.col_is_dummy(j)) continue;
            auto hit = s.col_argmax(j);
            if (!hit || s.row_is_dummy(hit->index)) continue;
            out.add(hit->index, j, hit->score);
        }
        out.sort_pairs();
    }
    if (stats && s.is_sparse()) stats->aux_elements = 0; // pure scans over stored entries
    return out;
}

namespace detail {

// Shortest-augmenting-path assignment (Jonker-Volgenant style) minimizing
// cost over an m x n grid with m <= n. Returns row -> column.
inline std::vector<std::size_t> solve_assignment_min(
    std::size_t m, std::size_t n,
    const std::vector<double>& cost /* m x n row-major */) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(m + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= m; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            std::size_t i0 = p[j0], j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(m, 0);
    for (std::size_t j = 1; j <= n; ++j)
        if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

} // namespace detail

/// Maximum-weight 1-to-1 assignment of cardinality min(m, n), solved by
/// shortest augmenting paths on cost = (max entry - score). Sparse inputs
/// are densified; rectangular inputs are solved along the smaller side.
inline Alignment match_hungarian(const SimilarityMatrix& sparse_or_dense) {
    SimilarityMatrix s = sparse_or_dense.densify();
    std::size_t m = s.rows(), n = s.cols();
    bool transposed = m > n;
    std::size_t rs = transposed ? n : m; // solve with rs <= cs
    std::size_t cs = transposed ? m : n;

    double max_entry = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) max_entry = std::max(max_entry, s.at(i, j));

    std::vector<double> cost(rs * cs);
    for (std::size_t i = 0; i < rs; ++i)
        for (std::size_t j = 0; j < cs; ++j)
            cost[i * cs + j] = max_entry - (transposed ? s.at(j, i) : s.at(i, j));

    auto row_to_col = detail::solve_assignment_min(rs, cs, cost);

    Alignment out;
    out.source = "hun";
    for (std::size_t i = 0; i < rs; ++i) {
        std::size_t r = transposed ? row_to_col[i] : i;
        std::size_t c = transposed ? i : row_to_col[i];
        if (s.row_is_dummy(r) || s.col_is_dummy(c)) continue;
        out.add(r, c, s.at(r, c));
    }
    out.sort_pairs();
    return out;
}

namespace detail {

inline double logsumexp(const double* vals, std::size_t count, std::size_t stride) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k) mx = std::max(mx, vals[k * stride]);
    if (!std::isfinite(mx)) return mx; // all -inf
    double s = 0;
    for (std::size_t k = 0; k < count; ++k) s += std::exp(vals[k * stride] - mx);
    return mx + std::log(s);
}

} // namespace detail

/// Iterated row/column renormalization of exp(S / tau), computed in the log
/// domain. Each of the k rounds normalizes rows then columns; a trailing row
/// normalization leaves every row summing to 1.
inline DoublyStochasticMatrix sinkhorn_operator(const SimilarityMatrix& input, double tau,
                                                std::size_t k, double tolerance = 1e-9) {
    if (tau <= 0) throw ConfigError("tau must be positive");
    if (k < 1) throw ConfigError("iteration count must be >= 1");
    SimilarityMatrix s = input.densify();
    std::size_t m = s.rows(), n = s.cols();

    std::vector<double> L(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = s.at(i, j) / tau;
            if (!std::isfinite(v))
                throw DataError("similarity / tau overflows; increase tau");
            L[i * n + j] = v;
        }

    auto normalize_rows = [&] {
        for (std::size_t i = 0; i < m; ++i) {
            double lse = detail::logsumexp(&L[i * n], n, 1);
            for (std::size_t j = 0; j < n; ++j) L[i * n + j] -= lse;
        }
    };
    auto normalize_cols = [&] {
        for (std::size_t j = 0; j < n; ++j) {
            double lse = detail::logsumexp(&L[j], m, n);
            for (std::size_t i = 0; i < m; ++i) L[i * n + j] -= lse;
        }
    };

    for (std::size_t it = 0; it < k; ++it) {
        normalize_rows();
        normalize_cols();
    }
    normalize_rows();

    DoublyStochasticMatrix out;
    out.rows = m;
    out.cols = n;
    out.iterations = k;
    out.values.resize(m * n);
    for (std::size_t idx = 0; idx < m * n; ++idx) out.values[idx] = std::exp(L[idx]);

    double col_target = static_cast<double>(m) / static_cast<double>(n);
    for (std::size_t i = 0; i < m; ++i) {
        double rs = 0;
        for (std::size_t j = 0; j < n; ++j) rs += out.at(i, j);
        out.row_dev = std::max(out.row_dev, std::abs(rs - 1.0));
    }
    for (std::size_t j = 0; j < n; ++j) {
        double cs = 0;
        for (std::size_t i = 0; i < m; ++i) cs += out.at(i, j);
        out.col_dev = std::max(out.col_dev, std::abs(cs - col_target));
    }
    out.converged = out.row_dev < tolerance && out.col_dev < tolerance;
    return out;
}

/// Entropy-regularized optimal transport between uniform marginals with
/// reward S (cost -S), solved by log-domain Sinkhorn-Knopp. The returned
/// plan is rescaled by m so rows sum to 1. Non-convergence is flagged on
/// the result, not fatal.
inline DoublyStochasticMatrix sinkhorn_distance_plan(const SimilarityMatrix& input,
                                                     double epsilon,
                                                     std::size_t max_iters = 10000,
                                                     double tolerance = 1e-9) {
    if (epsilon <= 0) throw ConfigError("epsilon must be positive");
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    SimilarityMatrix s = input.densify();
    std::size_t m = s.rows(), n = s.cols();

    std::vector<double> K(m * n); // S / epsilon
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = s.at(i, j) / epsilon;
            if (!std::isfinite(v))
                throw DataError("similarity / epsilon overflows; increase epsilon");
            K[i * n + j] = v;
        }

    const double log_r = -std::log(static_cast<double>(m)); // log 1/m
    const double log_c = -std::log(static_cast<double>(n)); // log 1/n
    std::vector<double> log_u(m, 0.0), log_v(n, 0.0), scratch(std::max(m, n));

    DoublyStochasticMatrix out;
    out.rows = m;
    out.cols = n;

    double col_target = static_cast<double>(m) / static_cast<double>(n);
    std::size_t it = 0;
    for (; it < max_iters; ++it) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) scratch[j] = K[i * n + j] + log_v[j];
            log_u[i] = log_r - detail::logsumexp(scratch.data(), n, 1);
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < m; ++i) scratch[i] = K[i * n + j] + log_u[i];
            log_v[j] = log_c - detail::logsumexp(scratch.data(), m, 1);
        }
        // Rows are exact right after the u-update; convergence is judged on
        // the row marginals of the plan implied by the fresh v.
        double dev = 0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) scratch[j] = log_u[i] + K[i * n + j] + log_v[j];
            double rs = std::exp(detail::logsumexp(scratch.data(), n, 1));
            dev = std::max(dev, std::abs(rs - 1.0 / static_cast<double>(m)));
        }
        if (dev < tolerance) {
            out.converged = true;
            ++it;
            break;
        }
    }
    out.iterations = it;

    out.values.resize(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.values[i * n + j] =
                std::exp(log_u[i] + K[i * n + j] + log_v[j]) * static_cast<double>(m);

    for (std::size_t i = 0; i < m; ++i) {
        double rs = 0;
        for (std::size_t j = 0; j < n; ++j) rs += out.at(i, j);
        out.row_dev = std::max(out.row_dev, std::abs(rs - 1.0));
    }
    for (std::size_t j = 0; j < n; ++j) {
        double cs = 0;
        for (std::size_t i = 0; i < m; ++i) cs += out.at(i, j);
        out.col_dev = std::max(out.col_dev, std::abs(cs - col_target));
    }
    return out;
}

namespace detail {

// Row-wise argmax over a dense plan; scores are read back from the original
// similarity matrix so thresholds stay on the similarity scale.
inline Alignment dinf_over_plan(const DoublyStochasticMatrix& plan, const SimilarityMatrix& s,
                                const char* tag) {
    Alignment out;
    out.source = tag;
    for (std::size_t i = 0; i < plan.rows; ++i) {
        if (s.row_is_dummy(i)) continue;
        std::size_t best = 0;
        double best_v = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < plan.cols; ++j) {
            if (plan.at(i, j) > best_v) {
                best_v = plan.at(i, j);
                best = j;
            }
        }
        if (s.col_is_dummy(best)) continue;
        out.add(i, best, s.at(i, best));
    }
    return out;
}

} // namespace detail

/// DInf applied to the Sinkhorn-operator approximation of the permutation
/// matrix. Not 1-to-1 in general.
inline Alignment match_sink_o(const SimilarityMatrix& s, const MatchConfig& cfg) {
    auto plan = sinkhorn_operator(s, cfg.tau, cfg.sink_o_iters);
    return detail::dinf_over_plan(plan, s, "sink-o");
}

/// DInf applied to the entropy-regularized transport plan. Not 1-to-1 in
/// general.
inline Alignment match_sink_d(const SimilarityMatrix& s, const MatchConfig& cfg) {
    auto plan = sinkhorn_distance_plan(s, cfg.ot_epsilon, cfg.ot_max_iters, cfg.ot_tolerance);
    return detail::dinf_over_plan(plan, s, "sink-d");
}

} // namespace eamatch

#endif
