#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace eamatch;

namespace {

bool has_pair(const Alignment& a, std::size_t r, std::size_t c) {
    for (const auto& p : a.pairs)
        if (p.row == r && p.col == c) return true;
    return false;
}

Alignment manual(std::vector<MatchedPair> pairs, const char* tag = "manual") {
    Alignment a;
    a.pairs = std::move(pairs);
    a.source = tag;
    return a;
}

} // namespace

TEST_CASE("preference orders sort by score, ties ascending") {
    auto p = preference_orders(testutil::dense(2, 2, {0.9, 0.8, 0.85, 0.2}));
    CHECK(p.row_prefs == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 1}});
    CHECK(p.col_prefs == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 1}});

    auto tie = preference_orders(testutil::dense(1, 2, {0.5, 0.5}));
    CHECK(tie.row_prefs[0] == std::vector<std::size_t>{0, 1});

    auto sp = preference_orders(testutil::sparse(2, 2, {{1, 0, 0.3}}));
    CHECK(sp.row_prefs[0].empty());
    CHECK(sp.row_prefs[1] == std::vector<std::size_t>{0});
    CHECK(sp.col_prefs[0] == std::vector<std::size_t>{1});
    CHECK(sp.col_prefs[1].empty());
}

TEST_CASE("smat hand-run: row 1 rejected at column 0") {
    auto a = match_smat(testutil::dense(2, 2, {0.9, 0.8, 0.85, 0.2}));
    REQUIRE(a.size() == 2);
    CHECK(has_pair(a, 0, 0));
    CHECK(has_pair(a, 1, 1));
}

TEST_CASE("smat on identity and rectangular input") {
    auto id = match_smat(testutil::dense(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}));
    CHECK(id.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(has_pair(id, i, i));

    auto r = match_smat(testutil::dense(2, 3, {0.9, 0.1, 0.5, 0.2, 0.8, 0.3}));
    REQUIRE(r.size() == 2);
    CHECK(has_pair(r, 0, 0));
    CHECK(has_pair(r, 1, 1));
}

TEST_CASE("bmat hand-run of the worked 2x2") {
    auto a = match_bmat(testutil::dense(2, 2, {0.9, 0.8, 0.85, 0.2}));
    REQUIRE(a.size() == 2);
    CHECK(has_pair(a, 0, 0));
    CHECK(has_pair(a, 1, 1));
}

TEST_CASE("bmat identity in one pass, sparse drop rule") {
    auto id = match_bmat(testutil::dense(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}));
    CHECK(id.size() == 3);

    auto sp = match_bmat(testutil::sparse(3, 3, {{0, 0, 0.9}, {1, 0, 0.8}}));
    REQUIRE(sp.size() == 1);
    CHECK(has_pair(sp, 0, 0)); // rows 1 and 2 end unmatched
}

TEST_CASE("bmat terminates on all-zero and all-negative matrices") {
    CHECK(match_bmat(testutil::dense(3, 3, std::vector<double>(9, 0.0))).size() == 0);
    CHECK(match_bmat(testutil::dense(2, 2, {-0.5, -0.1, -0.2, -0.9})).size() == 0);
}

TEST_CASE("is_stable detects blocking pairs") {
    auto s = testutil::dense(2, 2, {0.9, 0.8, 0.85, 0.2});
    CHECK_FALSE(is_stable(s, manual({{0, 1, 0.8}, {1, 0, 0.85}})));
    CHECK(is_stable(s, manual({{0, 0, 0.9}, {1, 1, 0.2}})));
    auto id = testutil::dense(2, 2, {1, 0, 0, 1});
    CHECK(is_stable(id, manual({{0, 0, 1.0}, {1, 1, 1.0}})));
    CHECK_THROWS_AS(is_stable(s, manual({{0, 0, 0.9}, {0, 1, 0.8}})), UsageError);
}

TEST_CASE("smat and bmat outputs are stable 1-to-1 matchings (property)") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 300; ++t) {
        std::size_t n = 2 + t % 11; // 2..12
        auto s = testutil::random_dense(n, n, rng);
        auto sm = match_smat(s);
        auto bm = match_bmat(s);
        CHECK(sm.is_one_to_one());
        CHECK(bm.is_one_to_one());
        CHECK(sm.size() == n);
        CHECK(bm.size() == n);
        CHECK(is_stable(s, sm));
        CHECK(is_stable(s, bm));
    }
}

TEST_CASE("bmat is invariant under strictly increasing transforms") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 20; ++t) {
        auto s = testutil::random_dense(6, 6, rng);
        std::vector<double> tr;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) tr.push_back(std::exp(2.0 * s.at(i, j)));
        auto a = match_bmat(s);
        auto b = match_bmat(testutil::dense(6, 6, std::move(tr)));
        CHECK(a.same_pairs(b));
    }
}

TEST_CASE("sparse and dense backings agree for smat and bmat") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 20; ++t) {
        auto sp = testutil::random_sparse(30, 30, 4, rng);
        auto d = sp.densify();
        CHECK(match_smat(sp).same_pairs(match_smat(d)));
        CHECK(match_bmat(sp).same_pairs(match_bmat(d)));
        CHECK(match_dinf(sp).same_pairs(match_dinf(d)));
    }
}

TEST_CASE("each bmat outer pass with positive candidates matches at least one pair") {
    // The globally maximal remaining entry is always a mutual argmax, so a
    // positive-entry matrix always yields a non-empty matching.
    std::mt19937_64 rng(79);
    for (int t = 0; t < 50; ++t) {
        auto s = testutil::random_dense(4, 7, rng);
        CHECK(match_bmat(s).size() >= 1);
    }
}
