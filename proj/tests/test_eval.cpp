#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "testutil.hpp"

using namespace eamatch;

namespace {

Alignment manual(std::vector<MatchedPair> pairs, const char* tag = "manual") {
    Alignment a;
    a.pairs = std::move(pairs);
    a.source = tag;
    return a;
}

GoldLinks gold_of(std::vector<std::pair<std::string, std::string>> pairs) {
    GoldLinks g;
    for (auto& p : pairs) g.pairs.insert(std::move(p));
    return g;
}

} // namespace

TEST_CASE("apply_threshold filters by score") {
    auto a = manual({{0, 0, 0.9}, {1, 1, 0.3}});
    auto kept = apply_threshold(a, 0.5);
    REQUIRE(kept.size() == 1);
    CHECK(kept.pairs[0].row == 0);

    CHECK(apply_threshold(a, 0.0).size() == 2);
    CHECK(apply_threshold(manual({}), 0.5).size() == 0);
    CHECK_THROWS_AS(apply_threshold(a, 1.5), UsageError);
}

TEST_CASE("evaluate worked example: P=50, R=33.3, F1=40") {
    EntityCatalog left(std::vector<std::string>{"a", "c"}), right(std::vector<std::string>{"b", "d"});
    auto g = gold_of({{"a", "b"}, {"c", "e"}, {"f", "g"}});
    std::ostringstream warn;
    auto rep = evaluate(manual({{0, 0, 0.9}, {1, 1, 0.9}}), left, right, g, &warn);
    CHECK(rep.predicted_count == 2);
    CHECK(rep.gold_count == 3);
    CHECK(rep.correct_count == 1);
    CHECK(rep.precision == Catch::Approx(50.0).epsilon(1e-12));
    CHECK(rep.recall == Catch::Approx(100.0 / 3).epsilon(1e-12));
    CHECK(rep.f1 == Catch::Approx(40.0).epsilon(1e-12));
    // (f, g) resolves to neither catalog and is warned about
    CHECK(warn.str().find("(f, g)") != std::string::npos);
}

TEST_CASE("evaluate perfect and empty predictions") {
    EntityCatalog left(std::vector<std::string>{"a"}), right(std::vector<std::string>{"b"});
    auto g = gold_of({{"a", "b"}});
    auto perfect = evaluate(manual({{0, 0, 1.0}}), left, right, g, nullptr);
    CHECK(perfect.precision == 100.0);
    CHECK(perfect.recall == 100.0);
    CHECK(perfect.f1 == 100.0);

    auto empty = evaluate(manual({}), left, right, g, nullptr);
    CHECK(empty.precision == 0.0);
    CHECK(empty.recall == 0.0);
    CHECK(empty.f1 == 0.0);
}

TEST_CASE("evaluate is order-independent") {
    EntityCatalog left(std::vector<std::string>{"a", "c"}), right(std::vector<std::string>{"b", "d"});
    auto g = gold_of({{"a", "b"}, {"c", "d"}});
    auto r1 = evaluate(manual({{0, 0, 1.0}, {1, 1, 1.0}}), left, right, g, nullptr);
    auto r2 = evaluate(manual({{1, 1, 1.0}, {0, 0, 1.0}}), left, right, g, nullptr);
    CHECK(r1.precision == r2.precision);
    CHECK(r1.recall == r2.recall);
    CHECK(r1.correct_count == r2.correct_count);
}

TEST_CASE("recall and predicted_count are non-increasing in theta") {
    std::mt19937_64 rng(83);
    auto s = testutil::random_dense(8, 8, rng);
    GoldLinks g;
    for (std::size_t i = 0; i < 8; ++i)
        g.pairs.insert({s.left().id(i), s.right().id(i)});
    auto a = match_dinf(s);
    std::size_t prev_pred = static_cast<std::size_t>(-1);
    double prev_recall = 1e9;
    for (double theta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto rep = evaluate(apply_threshold(a, theta), s.left(), s.right(), g, nullptr);
        CHECK(rep.predicted_count <= prev_pred);
        CHECK(rep.recall <= prev_recall);
        prev_pred = rep.predicted_count;
        prev_recall = rep.recall;
    }
}

TEST_CASE("dinf F1 at theta=0 equals Hit@1 on bijective gold") {
    std::mt19937_64 rng(89);
    for (int t = 0; t < 20; ++t) {
        auto s = testutil::random_dense(10, 10, rng);
        GoldLinks g;
        std::vector<std::size_t> perm(10);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < 10; ++i)
            g.pairs.insert({s.left().id(i), s.right().id(perm[i])});
        auto rep = evaluate(apply_threshold(match_dinf(s), 0.0), s.left(), s.right(), g,
                            nullptr);
        double hit1 = testutil::naive_hit_at_1(s, g);
        CHECK(rep.precision == Catch::Approx(hit1).margin(1e-9));
        CHECK(rep.recall == Catch::Approx(hit1).margin(1e-9));
        CHECK(rep.f1 == Catch::Approx(hit1).margin(1e-9));
    }
}
