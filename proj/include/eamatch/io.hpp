#ifndef EAMATCH_IO_HPP
#define EAMATCH_IO_HPP

#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eamatch/catalog.hpp"
#include "eamatch/error.hpp"
#include "eamatch/eval.hpp"
#include "eamatch/similarity.hpp"
#include "eamatch/simmatrix.hpp"

namespace eamatch {
namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

inline std::optional<double> parse_double(const std::string& s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    return in;
}

// Strips a trailing \r so CRLF files parse the same as LF files.
inline bool getline_clean(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

} // namespace detail

/// Sparse similarity TSV: `left_id<TAB>right_id<TAB>score` per line.
/// Catalogs are built in file order; explicit zeros are dropped.
inline SimilarityMatrix load_similarity_sparse(const std::string& path) {
    auto in = detail::open_or_throw(path);
    EntityCatalog left, right;
    std::vector<Triple> triples;
    std::string line;
    std::size_t lineno = 0;
    while (detail::getline_clean(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = detail::split_tabs(line);
        if (f.size() != 3)
            throw ParseError(path, lineno, "expected left<TAB>right<TAB>score");
        auto score = detail::parse_double(f[2]);
        if (!score) throw ParseError(path, lineno, "bad score: " + f[2]);
        std::size_t r = left.intern(f[0]);
        std::size_t c = right.intern(f[1]);
        triples.push_back({r, c, *score});
    }
    if (triples.empty()) throw DataError(path + ": empty similarity file");
    std::size_t m = left.size(), n = right.size();
    return SimilarityMatrix::sparse(m, n, std::move(triples), std::move(left),
                                    std::move(right));
}

/// Dense similarity file: header `#dense m n`, optional `#cols id...` line
/// naming the right-side entities, then one `row_id<TAB>s1...sn` line per row.
/// Without a #cols line, column ids default to col0..col{n-1}.
inline SimilarityMatrix load_similarity_dense(const std::string& path) {
    auto in = detail::open_or_throw(path);
    std::string line;
    std::size_t lineno = 0;
    if (!detail::getline_clean(in, line)) throw DataError(path + ": empty file");
    ++lineno;
    std::istringstream header(line);
    std::string tag;
    std::size_t m = 0, n = 0;
    header >> tag >> m >> n;
    if (tag != "#dense" || m == 0 || n == 0)
        throw ParseError(path, lineno, "expected header '#dense m n'");

    EntityCatalog left, right;
    std::vector<double> values;
    values.reserve(m * n);

    bool have_cols = false;
    std::streampos after_header = in.tellg();
    if (detail::getline_clean(in, line)) {
        ++lineno;
        if (line.rfind("#cols", 0) == 0) {
            have_cols = true;
            std::istringstream cols(line.substr(5));
            std::string id;
            while (cols >> id) right.add(id);
            if (right.size() != n)
                throw ParseError(path, lineno, "#cols count does not match n");
        } else {
            in.seekg(after_header);
            --lineno;
        }
    }
    if (!have_cols)
        for (std::size_t j = 0; j < n; ++j) right.add("col" + std::to_string(j));

    while (detail::getline_clean(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = detail::split_tabs(line);
        if (f.size() != n + 1)
            throw ParseError(path, lineno, "expected row_id and " + std::to_string(n) + " scores");
        left.add(f[0]);
        for (std::size_t j = 0; j < n; ++j) {
            auto v = detail::parse_double(f[j + 1]);
            if (!v) throw ParseError(path, lineno, "bad score: " + f[j + 1]);
            values.push_back(*v);
        }
    }
    if (left.size() != m) throw DataError(path + ": row count does not match header");
    return SimilarityMatrix::dense(m, n, std::move(values), std::move(left), std::move(right));
}

/// Loads either layout: files starting with `#dense` use the dense format.
inline SimilarityMatrix load_similarity(const std::string& path) {
    {
        auto in = detail::open_or_throw(path);
        std::string first;
        detail::getline_clean(in, first);
        if (first.rfind("#dense", 0) == 0) return load_similarity_dense(path);
    }
    return load_similarity_sparse(path);
}

/// Embedding TSV: `entity_id<TAB>v1<TAB>...<TAB>vd`.
inline EmbeddingTable load_embeddings(const std::string& path) {
    auto in = detail::open_or_throw(path);
    EmbeddingTable t;
    std::string line;
    std::size_t lineno = 0;
    while (detail::getline_clean(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = detail::split_tabs(line);
        if (f.size() < 2) throw ParseError(path, lineno, "expected id and at least one value");
        if (t.dim == 0)
            t.dim = f.size() - 1;
        else if (f.size() - 1 != t.dim)
            throw ParseError(path, lineno, "inconsistent embedding dimension");
        t.catalog.add(f[0]);
        for (std::size_t k = 1; k < f.size(); ++k) {
            auto v = detail::parse_double(f[k]);
            if (!v) throw ParseError(path, lineno, "bad value: " + f[k]);
            t.vectors.push_back(*v);
        }
    }
    if (t.catalog.size() == 0) throw DataError(path + ": empty embedding file");
    return t;
}

/// Name TSV: `entity_id<TAB>name`. The name may be empty.
inline NameTable load_names(const std::string& path) {
    auto in = detail::open_or_throw(path);
    NameTable t;
    std::string line;
    std::size_t lineno = 0;
    while (detail::getline_clean(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = detail::split_tabs(line);
        if (f.size() != 2) throw ParseError(path, lineno, "expected id<TAB>name");
        t.catalog.add(f[0]);
        t.names.push_back(f[1]);
    }
    if (t.catalog.size() == 0) throw DataError(path + ": empty name file");
    return t;
}

/// Gold-link TSV: `left_id<TAB>right_id`.
inline GoldLinks load_gold(const std::string& path) {
    auto in = detail::open_or_throw(path);
    GoldLinks g;
    std::string line;
    std::size_t lineno = 0;
    while (detail::getline_clean(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = detail::split_tabs(line);
        if (f.size() != 2) throw ParseError(path, lineno, "expected left<TAB>right");
        if (!g.pairs.insert({f[0], f[1]}).second)
            throw DataError(path + ":" + std::to_string(lineno) + ": duplicate gold pair");
    }
    return g;
}

} // namespace eamatch

#endif
