#ifndef EAMATCH_STABLE_HPP
#define EAMATCH_STABLE_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

#include "eamatch/alignment.hpp"
#include "eamatch/assign.hpp"
#include "eamatch/error.hpp"
#include "eamatch/simmatrix.hpp"

namespace eamatch {

/// Per-row and per-column candidate orderings: descending score, ties by
/// ascending index. Sparse inputs list stored entries only.
struct PreferenceOrders {
    std::vector<std::vector<std::size_t>> row_prefs;
    std::vector<std::vector<std::size_t>> col_prefs;
};

namespace detail {

inline void sort_by_score(std::vector<std::size_t>& idx, const std::vector<double>& score) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
}

} // namespace detail

inline PreferenceOrders preference_orders(const SimilarityMatrix& s) {
    PreferenceOrders p;
    p.row_prefs.resize(s.rows());
    p.col_prefs.resize(s.cols());
    if (!s.is_sparse()) {
        std::vector<double> score;
        for (std::size_t i = 0; i < s.rows(); ++i) {
            score.resize(s.cols());
            auto& prefs = p.row_prefs[i];
            prefs.resize(s.cols());
            for (std::size_t j = 0; j < s.cols(); ++j) {
                prefs[j] = j;
                score[j] = s.at(i, j);
            }
            detail::sort_by_score(prefs, score);
        }
        for (std::size_t j = 0; j < s.cols(); ++j) {
            score.resize(s.rows());
            auto& prefs = p.col_prefs[j];
            prefs.resize(s.rows());
            for (std::size_t i = 0; i < s.rows(); ++i) {
                prefs[i] = i;
                score[i] = s.at(i, j);
            }
            detail::sort_by_score(prefs, score);
        }
        return p;
    }
    for (std::size_t i = 0; i < s.rows(); ++i) {
        auto cols = s.row_cols(i);
        auto vals = s.row_vals(i);
        auto& prefs = p.row_prefs[i];
        std::vector<std::size_t> order(cols.size());
        std::vector<double> score(vals.begin(), vals.end());
        for (std::size_t k = 0; k < cols.size(); ++k) order[k] = k;
        detail::sort_by_score(order, score);
        prefs.reserve(cols.size());
        for (std::size_t k : order) prefs.push_back(cols[k]);
    }
    for (std::size_t j = 0; j < s.cols(); ++j) {
        auto rows = s.col_rows(j);
        auto vals = s.col_vals(j);
        auto& prefs = p.col_prefs[j];
        std::vector<std::size_t> order(rows.size());
        std::vector<double> score(vals.begin(), vals.end());
        for (std::size_t k = 0; k < rows.size(); ++k) order[k] = k;
        detail::sort_by_score(order, score);
        prefs.reserve(rows.size());
        for (std::size_t k : order) prefs.push_back(rows[k]);
    }
    return p;
}

/// Row-proposing Gale-Shapley over preference_orders(s); returns the
/// row-optimal stable matching. Non-square inputs are zero-padded to square
/// first and pairs touching padding are discarded. Proposals stop at
/// non-positive scores, so absent sparse entries and padded zeros never
/// match; sparse and dense backings of the same matrix agree.
inline Alignment match_smat(const SimilarityMatrix& input, MatchStats* stats = nullptr) {
    SimilarityMatrix padded = pad_to_square(input);
    const SimilarityMatrix& s = padded;
    std::size_t m = s.rows(), n = s.cols();

    // Only row-side preference lists are materialized; the column side is
    // decided by direct score comparison against the current holder.
    std::vector<std::vector<std::size_t>> row_prefs(m);
    std::size_t pref_elems = 0;
    if (!s.is_sparse()) {
        std::vector<double> score(n);
        for (std::size_t i = 0; i < m; ++i) {
            auto& prefs = row_prefs[i];
            prefs.resize(n);
            for (std::size_t j = 0; j < n; ++j) {
                prefs[j] = j;
                score[j] = s.at(i, j);
            }
            detail::sort_by_score(prefs, score);
            pref_elems += prefs.size();
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            auto cols = s.row_cols(i);
            auto vals = s.row_vals(i);
            std::vector<std::size_t> order(cols.size());
            std::vector<double> score(vals.begin(), vals.end());
            for (std::size_t k = 0; k < cols.size(); ++k) order[k] = k;
            detail::sort_by_score(order, score);
            auto& prefs = row_prefs[i];
            prefs.reserve(cols.size());
            for (std::size_t k : order) prefs.push_back(cols[k]);
            pref_elems += prefs.size();
        }
    }

    constexpr std::size_t unmatched = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> holder(n, unmatched); // column -> current row
    std::vector<std::size_t> next(m, 0);           // next proposal per row
    std::deque<std::size_t> free_rows;
    for (std::size_t i = 0; i < m; ++i)
        if (!s.row_is_dummy(i)) free_rows.push_back(i);

    while (!free_rows.empty()) {
        std::size_t r = free_rows.front();
        free_rows.pop_front();
        bool placed = false;
        while (next[r] < row_prefs[r].size()) {
            std::size_t c = row_prefs[r][next[r]++];
            double sc = s.at(r, c);
            if (sc <= 0.0) {
                next[r] = row_prefs[r].size(); // rest of the list is no better
                break;
            }
            std::size_t h = holder[c];
            if (h == unmatched) {
                holder[c] = r;
                placed = true;
                break;
            }
            double hsc = s.at(h, c);
            if (sc > hsc || (sc == hsc && r < h)) {
                holder[c] = r;
                free_rows.push_back(h);
                placed = true;
                break;
            }
        }
        (void)placed; // rows that run out of candidates stay unmatched
    }

    Alignment out;
    out.source = "smat";
    for (std::size_t c = 0; c < n; ++c) {
        if (holder[c] == unmatched) continue;
        if (s.row_is_dummy(holder[c]) || s.col_is_dummy(c)) continue;
        out.add(holder[c], c, s.at(holder[c], c));
    }
    out.sort_pairs();
    if (stats && s.is_sparse()) stats->aux_elements = pref_elems + m + n;
    return out;
}

/// Bidirectional matching: repeatedly pair rows and columns that are each
/// other's argmax, then retire the matched row and column. Retirement uses
/// tombstone masks on a read-only matrix instead of destructive zeroing.
/// Rows whose best remaining score is not positive are dropped as
/// permanently unmatched, which guarantees termination.
inline Alignment match_bmat(const SimilarityMatrix& s, MatchStats* stats = nullptr) {
    std::size_t m = s.rows(), n = s.cols();
    std::vector<bool> row_dead(m, false), col_dead(n, false);
    std::vector<std::size_t> pending;
    pending.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (s.row_is_dummy(i))
            row_dead[i] = true;
        else
            pending.push_back(i);
    }
    for (std::size_t j = 0; j < n; ++j)
        if (s.col_is_dummy(j)) col_dead[j] = true;

    Alignment out;
    out.source = "bmat";
    std::vector<std::size_t> survivors;
    while (!pending.empty()) {
        survivors.clear();
        bool progressed = false;
        for (std::size_t r : pending) {
            auto best = s.row_argmax(r, &col_dead);
            if (!best || best->score <= 0.0) {
                progressed = true; // dropped for good
                continue;
            }
            std::size_t c = best->index;
            auto back = s.col_argmax(c, &row_dead);
            if (back && back->index == r) {
                out.add(r, c, s.at(r, c));
                row_dead[r] = true;
                col_dead[c] = true;
                progressed = true;
            } else {
                survivors.push_back(r);
            }
        }
        if (!progressed) break;
        pending.swap(survivors);
    }
    out.sort_pairs();
    if (stats && s.is_sparse()) stats->aux_elements = m + n + m; // masks + pending set
    return out;
}

/// True iff the 1-to-1 alignment has no blocking pair: no (i, j) outside it
/// where S[i,j] strictly beats both sides' current scores. Unmatched
/// entities treat any positive-score candidate as preferable.
inline bool is_stable(const SimilarityMatrix& s, const Alignment& a) {
    if (!a.is_one_to_one()) throw UsageError("is_stable requires a 1-to-1 alignment");
    constexpr std::size_t unmatched = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> row_match(s.rows(), unmatched), col_match(s.cols(), unmatched);
    for (const auto& p : a.pairs) {
        if (p.row >= s.rows() || p.col >= s.cols())
            throw UsageError("alignment index out of matrix bounds");
        row_match[p.row] = p.col;
        col_match[p.col] = p.row;
    }
    auto blocks = [&](std::size_t i, std::size_t j, double v) {
        if (row_match[i] == j) return false;
        bool i_prefers = row_match[i] == unmatched ? v > 0.0 : v > s.at(i, row_match[i]);
        if (!i_prefers) return false;
        bool j_prefers = col_match[j] == unmatched ? v > 0.0 : v > s.at(col_match[j], j);
        return j_prefers;
    };
    if (s.is_sparse()) {
        for (std::size_t i = 0; i < s.rows(); ++i) {
            auto cols = s.row_cols(i);
            auto vals = s.row_vals(i);
            for (std::size_t k = 0; k < cols.size(); ++k)
                if (blocks(i, cols[k], vals[k])) return false;
        }
        return true;
    }
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (blocks(i, j, s.at(i, j))) return false;
    return true;
}

} // namespace eamatch

#endif
