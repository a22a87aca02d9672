#ifndef EAMATCH_ALIGNMENT_HPP
#define EAMATCH_ALIGNMENT_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "eamatch/error.hpp"

namespace eamatch {

/// One matched entity pair with its similarity score.
struct MatchedPair {
    std::size_t row;
    std::size_t col;
    double score;

    friend bool operator==(const MatchedPair& a, const MatchedPair& b) {
        return a.row == b.row && a.col == b.col;
    }
};

/// A matcher's output: matched (row, col, score) triples plus the matcher tag.
/// Pairs are kept sorted by (row, col); no duplicates, no dummy indices.
struct Alignment {
    std::vector<MatchedPair> pairs;
    std::string source;

    void add(std::size_t row, std::size_t col, double score) {
        pairs.push_back({row, col, score});
    }

    void sort_pairs() {
        std::sort(pairs.begin(), pairs.end(), [](const MatchedPair& a, const MatchedPair& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
    }

    std::size_t size() const { return pairs.size(); }

    double objective() const {
        double s = 0;
        for (const auto& p : pairs) s += p.score;
        return s;
    }

    bool same_pairs(const Alignment& other) const {
        if (pairs.size() != other.pairs.size()) return false;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (!(pairs[k] == other.pairs[k])) return false;
        return true;
    }

    /// True when no row and no column index repeats.
    bool is_one_to_one() const {
        std::vector<std::size_t> r, c;
        for (const auto& p : pairs) {
            r.push_back(p.row);
            c.push_back(p.col);
        }
        std::sort(r.begin(), r.end());
        std::sort(c.begin(), c.end());
        return std::adjacent_find(r.begin(), r.end()) == r.end() &&
               std::adjacent_find(c.begin(), c.end()) == c.end();
    }
};

/// Matcher knobs. Defaults follow the toolkit's desk-scale calibration;
/// every field is CLI-overridable.
struct MatchConfig {
    enum class Direction { Row, Col };

    Direction direction = Direction::Row; // DInf scan direction
    double tau = 0.05;                    // Sink-o temperature
    std::size_t sink_o_iters = 100;       // Sink-o normalization rounds
    double ot_epsilon = 0.01;             // Sink-d entropy regularization
    std::size_t ot_max_iters = 10000;
    double ot_tolerance = 1e-9;
    double theta = 0.5;                   // score threshold

    void validate() const {
        if (tau <= 0) throw ConfigError("tau must be positive");
        if (sink_o_iters < 1) throw ConfigError("sink_o_iters must be >= 1");
        if (ot_epsilon <= 0) throw ConfigError("ot_epsilon must be positive");
        if (ot_max_iters < 1) throw ConfigError("ot_max_iters must be >= 1");
        if (ot_tolerance <= 0) throw ConfigError("ot_tolerance must be positive");
        if (theta < 0 || theta > 1) throw ConfigError("theta must lie in [0,1]");
    }
};

} // namespace eamatch

#endif
