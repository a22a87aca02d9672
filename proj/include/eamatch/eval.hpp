#ifndef EAMATCH_EVAL_HPP
#define EAMATCH_EVAL_HPP

#include <cstddef>
#include <iostream>
#include <set>
#include <string>
#include <utility>

#include "eamatch/alignment.hpp"
#include "eamatch/catalog.hpp"

namespace eamatch {

/// Ground-truth equivalent pairs. Left ids may repeat: the updated DBP15K
/// ground truth is not bijective.
struct GoldLinks {
    std::set<std::pair<std::string, std::string>> pairs;

    std::size_t size() const { return pairs.size(); }
    bool contains(const std::string& l, const std::string& r) const {
        return pairs.count({l, r}) > 0;
    }
};

/// Precision/recall/F1 on the 0-100 percentage scale, plus pair counts.
struct EvalReport {
    std::string matcher;
    double theta = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t predicted_count = 0;
    std::size_t gold_count = 0;
    std::size_t correct_count = 0;
    double wall_ms = 0;
};

/// Keeps exactly the pairs with score >= theta.
inline Alignment apply_threshold(const Alignment& a, double theta) {
    if (theta < 0 || theta > 1) throw UsageError("theta must lie in [0,1]");
    Alignment out;
    out.source = a.source;
    for (const auto& p : a.pairs)
        if (p.score >= theta) out.pairs.push_back(p);
    return out;
}

/// Scores an alignment against gold links. A predicted pair is correct iff
/// its (left-id, right-id) is a gold pair; gold pairs whose ids never appear
/// in the catalogs still count toward |gold| and get a warning.
inline EvalReport evaluate(const Alignment& a, const EntityCatalog& left,
                           const EntityCatalog& right, const GoldLinks& gold,
                           std::ostream* warnings = &std::cerr) {
    EvalReport rep;
    rep.matcher = a.source;
    rep.predicted_count = a.size();
    rep.gold_count = gold.size();
    for (const auto& p : a.pairs) {
        if (gold.contains(left.id(p.row), right.id(p.col))) rep.correct_count++;
    }
    if (warnings) {
        for (const auto& [l, r] : gold.pairs) {
            if (!left.contains(l) && !right.contains(r))
                *warnings << "warning: gold pair (" << l << ", " << r
                          << ") references ids absent from both catalogs\n";
        }
    }
    double c = static_cast<double>(rep.correct_count);
    rep.precision = rep.predicted_count ? 100.0 * c / static_cast<double>(rep.predicted_count) : 0.0;
    rep.recall = rep.gold_count ? 100.0 * c / static_cast<double>(rep.gold_count) : 0.0;
    rep.f1 = (rep.precision + rep.recall > 0)
                 ? 2.0 * rep.precision * rep.recall / (rep.precision + rep.recall)
                 : 0.0;
    return rep;
}

} // namespace eamatch

#endif
