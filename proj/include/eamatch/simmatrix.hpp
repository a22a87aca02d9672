#ifndef EAMATCH_SIMMATRIX_HPP
#define EAMATCH_SIMMATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "eamatch/catalog.hpp"
#include "eamatch/error.hpp"

namespace eamatch {

/// (row, col, score) triple of a sparse matrix.
struct Triple {
    std::size_t row;
    std::size_t col;
    double score;
};

/// Result of an argmax over a row or column.
struct ArgmaxHit {
    std::size_t index;
    double score;
};

/// Pairwise entity-similarity matrix with entity catalogs on both sides.
///
/// Backed either by a dense row-major array or by compressed sparse rows.
/// Sparse storage keeps no explicit zeros and no duplicate keys; an absent
/// entry reads as 0 but is not a match candidate. A column index over the
/// same entries is kept so column scans stay cheap.
class SimilarityMatrix {
public:
    static SimilarityMatrix dense(std::size_t rows, std::size_t cols,
                                  std::vector<double> values,
                                  EntityCatalog left, EntityCatalog right) {
        if (values.size() != rows * cols)
            throw UsageError("dense similarity matrix: value count != rows*cols");
        check_shape(rows, cols, left, right);
        for (double v : values)
            if (!std::isfinite(v)) throw DataError("non-finite similarity score");
        SimilarityMatrix s;
        s.rows_ = rows;
        s.cols_ = cols;
        s.sparse_ = false;
        s.dense_ = std::move(values);
        s.left_ = std::move(left);
        s.right_ = std::move(right);
        return s;
    }

    static SimilarityMatrix sparse(std::size_t rows, std::size_t cols,
                                   std::vector<Triple> triples,
                                   EntityCatalog left, EntityCatalog right) {
        check_shape(rows, cols, left, right);
        std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        SimilarityMatrix s;
        s.rows_ = rows;
        s.cols_ = cols;
        s.sparse_ = true;
        s.row_ptr_.assign(rows + 1, 0);
        s.col_idx_.reserve(triples.size());
        s.val_.reserve(triples.size());
        for (std::size_t k = 0; k < triples.size(); ++k) {
            const Triple& t = triples[k];
            if (t.row >= rows || t.col >= cols)
                throw UsageError("sparse triple index out of range");
            if (!std::isfinite(t.score)) throw DataError("non-finite similarity score");
            if (k > 0 && triples[k - 1].row == t.row && triples[k - 1].col == t.col)
                throw DataError("duplicate sparse entry at (" + std::to_string(t.row) +
                                "," + std::to_string(t.col) + ")");
            if (t.score == 0.0) continue; // no explicit zeros

            s.row_ptr_[t.row + 1]++;
            s.col_idx_.push_back(t.col);
            s.val_.push_back(t.score);
        }
        for (std::size_t r = 0; r < rows; ++r) s.row_ptr_[r + 1] += s.row_ptr_[r];
        s.build_column_index();
        s.left_ = std::move(left);
        s.right_ = std::move(right);
        return s;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_sparse() const { return sparse_; }
    std::size_t stored_count() const { return sparse_ ? val_.size() : rows_ * cols_; }

    const EntityCatalog& left() const { return left_; }
    const EntityCatalog& right() const { return right_; }

    double at(std::size_t i, std::size_t j) const {
        check_row(i);
        check_col(j);
        if (!sparse_) return dense_[i * cols_ + j];
        auto cb = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
        auto ce = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
        auto it = std::lower_bound(cb, ce, j);
        if (it == ce || *it != j) return 0.0;
        return val_[static_cast<std::size_t>(it - col_idx_.begin())];
    }

    /// Stored (col, score) pairs of row i. Sparse only.
    std::size_t row_nnz(std::size_t i) const {
        check_row(i);
        return sparse_ ? row_ptr_[i + 1] - row_ptr_[i] : cols_;
    }

    std::span<const std::size_t> row_cols(std::size_t i) const {
        check_row(i);
        return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const double> row_vals(std::size_t i) const {
        check_row(i);
        return {val_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const std::size_t> col_rows(std::size_t j) const {
        check_col(j);
        return {csc_row_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
    }
    std::span<const double> col_vals(std::size_t j) const {
        check_col(j);
        return {csc_val_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
    }

    /// Maximal non-excluded entry of row i, ties to the smallest column.
    ///
    /// Dense backing returns the argmax even when the maximum is <= 0.
    /// Sparse backing treats absent entries as non-candidates and returns
    /// nothing when every stored, non-excluded entry is <= 0.
    std::optional<ArgmaxHit> row_argmax(std::size_t i,
                                        const std::vector<bool>* excluded_cols = nullptr) const {
        check_row(i);
        if (excluded_cols && excluded_cols->size() != cols_)
            throw UsageError("row_argmax: exclusion mask size != cols");
        std::optional<ArgmaxHit> best;
        if (!sparse_) {
            const double* row = dense_.data() + i * cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (excluded_cols && (*excluded_cols)[j]) continue;
                if (!best || row[j] > best->score) best = ArgmaxHit{j, row[j]};
            }
            return best;
        }
        auto cols = row_cols(i);
        auto vals = row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (excluded_cols && (*excluded_cols)[cols[k]]) continue;
            if (!best || vals[k] > best->score) best = ArgmaxHit{cols[k], vals[k]};
        }
        if (best && best->score <= 0.0) return std::nullopt;
        return best;
    }

    /// Column-wise counterpart of row_argmax, ties to the smallest row.
    std::optional<ArgmaxHit> col_argmax(std::size_t j,
                                        const std::vector<bool>* excluded_rows = nullptr) const {
        check_col(j);
        if (excluded_rows && excluded_rows->size() != rows_)
            throw UsageError("col_argmax: exclusion mask size != rows");
        std::optional<ArgmaxHit> best;
        if (!sparse_) {
            for (std::size_t i = 0; i < rows_; ++i) {
                if (excluded_rows && (*excluded_rows)[i]) continue;
                double v = dense_[i * cols_ + j];
                if (!best || v > best->score) best = ArgmaxHit{i, v};
            }
            return best;
        }
        auto rws = col_rows(j);
        auto vals = col_vals(j);
        for (std::size_t k = 0; k < rws.size(); ++k) {
            if (excluded_rows && (*excluded_rows)[rws[k]]) continue;
            if (!best || vals[k] > best->score) best = ArgmaxHit{rws[k], vals[k]};
        }
        if (best && best->score <= 0.0) return std::nullopt;
        return best;
    }

    /// Writes row i into `buf` (resized to cols), absent entries as 0.
    void densify_row(std::size_t i, std::vector<double>& buf) const {
        check_row(i);
        buf.assign(cols_, 0.0);
        if (!sparse_) {
            std::copy_n(dense_.data() + i * cols_, cols_, buf.data());
            return;
        }
        auto cols = row_cols(i);
        auto vals = row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) buf[cols[k]] = vals[k];
    }

    /// Dense copy sharing the same catalogs. Identity for dense input.
    SimilarityMatrix densify() const {
        if (!sparse_) return *this;
        std::vector<double> d(rows_ * cols_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            auto cols = row_cols(i);
            auto vals = row_vals(i);
            for (std::size_t k = 0; k < cols.size(); ++k) d[i * cols_ + cols[k]] = vals[k];
        }
        return dense(rows_, cols_, std::move(d), left_, right_);
    }

    bool row_is_dummy(std::size_t i) const { return left_.is_dummy(i); }
    bool col_is_dummy(std::size_t j) const { return right_.is_dummy(j); }

private:
    static void check_shape(std::size_t rows, std::size_t cols,
                            const EntityCatalog& left, const EntityCatalog& right) {
        if (rows == 0 || cols == 0) throw UsageError("similarity matrix must be non-empty");
        if (left.size() != rows || right.size() != cols)
            throw UsageError("catalog size does not match matrix shape");
    }
    void check_row(std::size_t i) const {
        if (i >= rows_) throw UsageError("row index out of range");
    }
    void check_col(std::size_t j) const {
        if (j >= cols_) throw UsageError("column index out of range");
    }

    void build_column_index() {
        col_ptr_.assign(cols_ + 1, 0);
        for (std::size_t c : col_idx_) col_ptr_[c + 1]++;
        for (std::size_t c = 0; c < cols_; ++c) col_ptr_[c + 1] += col_ptr_[c];
        csc_row_.resize(val_.size());
        csc_val_.resize(val_.size());
        std::vector<std::size_t> next(col_ptr_.begin(), col_ptr_.end() - 1);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
                std::size_t pos = next[col_idx_[k]]++;
                csc_row_[pos] = r;
                csc_val_[pos] = val_[k];
            }
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    bool sparse_ = false;
    std::vector<double> dense_;
    std::vector<std::size_t> row_ptr_, col_idx_;
    std::vector<double> val_;
    std::vector<std::size_t> col_ptr_, csc_row_;
    std::vector<double> csc_val_;
    EntityCatalog left_, right_;
};

/// Appends all-zero rows or columns until the matrix is square. Padded
/// catalog entries are flagged as dummies; matchers drop pairs touching them.
inline SimilarityMatrix pad_to_square(const SimilarityMatrix& s) {
    if (s.rows() == s.cols()) return s;
    std::size_t n = std::max(s.rows(), s.cols());
    EntityCatalog left, right;
    for (std::size_t i = 0; i < s.rows(); ++i) left.add(s.left().id(i), s.left().is_dummy(i));
    for (std::size_t i = s.rows(); i < n; ++i) left.add("__pad_row_" + std::to_string(i), true);
    for (std::size_t j = 0; j < s.cols(); ++j) right.add(s.right().id(j), s.right().is_dummy(j));
    for (std::size_t j = s.cols(); j < n; ++j) right.add("__pad_col_" + std::to_string(j), true);

    if (s.is_sparse()) {
        std::vector<Triple> triples;
        triples.reserve(s.stored_count());
        for (std::size_t i = 0; i < s.rows(); ++i) {
            auto cols = s.row_cols(i);
            auto vals = s.row_vals(i);
            for (std::size_t k = 0; k < cols.size(); ++k)
                triples.push_back({i, cols[k], vals[k]});
        }
        return SimilarityMatrix::sparse(n, n, std::move(triples), std::move(left), std::move(right));
    }
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) d[i * n + j] = s.at(i, j);
    return SimilarityMatrix::dense(n, n, std::move(d), std::move(left), std::move(right));
}

} // namespace eamatch

#endif
