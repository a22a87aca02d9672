#ifndef EAMATCH_SIMILARITY_HPP
#define EAMATCH_SIMILARITY_HPP

#include <cctype>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "eamatch/catalog.hpp"
#include "eamatch/error.hpp"
#include "eamatch/simmatrix.hpp"

namespace eamatch {

/// Entity embedding vectors, one row per catalog entry.
struct EmbeddingTable {
    EntityCatalog catalog;
    std::size_t dim = 0;
    std::vector<double> vectors; // catalog.size() x dim, row-major

    const double* row(std::size_t i) const { return vectors.data() + i * dim; }
};

/// One display name per catalog entry; empty names permitted.
struct NameTable {
    EntityCatalog catalog;
    std::vector<std::string> names;
};

/// Lowercased token set of a name: split on any character outside the
/// delimiter-exempt alphanumerics, drop empties, collapse duplicates.
inline std::set<std::string> tokenize_name(const std::string& name,
                                           const std::string& extra_delims = "") {
    std::set<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) tokens.insert(cur);
        cur.clear();
    };
    for (unsigned char c : name) {
        bool alnum = std::isalnum(c) != 0;
        bool delim = !alnum || extra_delims.find(static_cast<char>(c)) != std::string::npos;
        if (delim)
            flush();
        else
            cur.push_back(static_cast<char>(std::tolower(c)));
    }
    flush();
    return tokens;
}

/// S[i,j] = cos(a_i, b_j); zero-norm vectors score 0 against everything.
inline SimilarityMatrix cosine_similarity_matrix(const EmbeddingTable& a,
                                                 const EmbeddingTable& b) {
    if (a.dim != b.dim)
        throw ConfigError("embedding dimension mismatch: " + std::to_string(a.dim) +
                          " vs " + std::to_string(b.dim));
    if (a.dim == 0) throw ConfigError("embedding dimension must be >= 1");
    for (double v : a.vectors)
        if (!std::isfinite(v)) throw DataError("non-finite embedding entry");
    for (double v : b.vectors)
        if (!std::isfinite(v)) throw DataError("non-finite embedding entry");

    std::size_t m = a.catalog.size(), n = b.catalog.size(), d = a.dim;
    std::vector<double> na(m), nb(n);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0;
        for (std::size_t k = 0; k < d; ++k) s += a.row(i)[k] * a.row(i)[k];
        na[i] = std::sqrt(s);
    }
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < d; ++k) s += b.row(j)[k] * b.row(j)[k];
        nb[j] = std::sqrt(s);
    }
    std::vector<double> out(m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (na[i] == 0.0 || nb[j] == 0.0) continue;
            double dot = 0;
            for (std::size_t k = 0; k < d; ++k) dot += a.row(i)[k] * b.row(j)[k];
            out[i * n + j] = dot / (na[i] * nb[j]);
        }
    }
    return SimilarityMatrix::dense(m, n, std::move(out), a.catalog, b.catalog);
}

/// Sorensen-Dice coefficient over token sets: 2|X∩Y| / (|X|+|Y|).
/// Two empty token sets score 0.
inline SimilarityMatrix dice_similarity_matrix(const NameTable& a, const NameTable& b,
                                               const std::string& extra_delims = "") {
    std::size_t m = a.catalog.size(), n = b.catalog.size();
    std::vector<std::set<std::string>> ta(m), tb(n);
    for (std::size_t i = 0; i < m; ++i) ta[i] = tokenize_name(a.names.at(i), extra_delims);
    for (std::size_t j = 0; j < n; ++j) tb[j] = tokenize_name(b.names.at(j), extra_delims);

    std::vector<double> out(m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t total = ta[i].size() + tb[j].size();
            if (total == 0) continue;
            std::size_t common = 0;
            for (const auto& t : ta[i]) common += tb[j].count(t);
            out[i * n + j] = 2.0 * static_cast<double>(common) / static_cast<double>(total);
        }
    }
    return SimilarityMatrix::dense(m, n, std::move(out), a.catalog, b.catalog);
}

} // namespace eamatch

#endif
