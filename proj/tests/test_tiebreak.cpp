#include "doctest.h"
#include "fixtures.hpp"
#include "tally/tiebreak.hpp"

using namespace tally;

namespace {

const std::vector<std::vector<int>> kFacultyCounts = {
    {0, 0, 1, 5, 4},  // Cauchy
    {1, 7, 0, 2, 0},  // Gauss
    {3, 1, 3, 2, 1},  // Laplace
    {5, 1, 2, 0, 2},  // Nightingale
    {1, 1, 4, 1, 3},  // Poisson
};

}  // namespace

TEST_CASE("preference counts tabulate ranks per candidate") {
    auto counts = preference_counts(fixtures::parse(fixtures::kFaculty));
    CHECK(counts == kFacultyCounts);

    auto food = preference_counts(fixtures::parse(fixtures::kFood));
    CHECK(food[2] == std::vector<int>{12, 0, 0, 0, 0});  // Chocolate: all firsts
    CHECK(food[3] == std::vector<int>{1, 8, 0, 0, 0});   // Strawberries
    CHECK(food[0] == std::vector<int>{4, 2, 0, 0, 0});   // Oranges
}

TEST_CASE("ordered ranking sorts preference rows ascending") {
    auto ord = ordered_ranking(fixtures::parse(fixtures::kFaculty), 0);
    CHECK(ord.rank == std::vector<int>{1, 3, 4, 5, 2});  // C, G, L, N, P
    CHECK(ord.sampled == std::vector<bool>{false, false, false, false, false});
    // all rows distinct: five separate groups
    CHECK(ord.group == std::vector<int>{0, 2, 3, 4, 1});
}

TEST_CASE("identical preference rows are ordered by a seeded draw") {
    std::vector<std::vector<int>> counts = {
        {2, 0, 0},
        {1, 1, 0},
        {1, 1, 0},
    };
    auto a = ordered_ranking_from_counts(counts, 11);
    auto b = ordered_ranking_from_counts(counts, 11);
    CHECK(a.rank == b.rank);  // same seed, same order
    CHECK(a.sampled == std::vector<bool>{false, true, true});
    CHECK(a.group[1] == a.group[2]);
    CHECK(a.group[0] != a.group[1]);
    CHECK(a.rank[0] == 3);  // (2,0,0) is lexicographically largest
    // the tied pair occupies ranks 1 and 2 in one order or the other
    CHECK(a.rank[1] + a.rank[2] == 3);
    bool flipped = false;
    for (uint64_t seed = 0; seed < 64 && !flipped; ++seed) {
        auto c = ordered_ranking_from_counts(counts, seed);
        flipped = c.rank[1] != a.rank[1];
    }
    CHECK(flipped);  // the draw really depends on the seed
}

TEST_CASE("stage one: the totals history settles most ties") {
    OrderedRanking ord;
    ord.rank = {1, 2, 3};
    ord.sampled = {false, false, false};
    ord.group = {0, 1, 2};
    // two counts of history; candidates 0 and 1 tied now
    std::vector<std::vector<double>> history = {
        {4.0, 3.0, 9.0},
        {5.0, 5.0, 9.0},
    };
    SUBCASE("forwards looks at the first count first") {
        auto d = break_tie({0, 1}, TieDirection::ForElimination, history, ord, 'f');
        CHECK(d.chosen == 1);  // had 3 at count 1
        CHECK(d.tag == "f");
        auto e = break_tie({0, 1}, TieDirection::ForElection, history, ord, 'f');
        CHECK(e.chosen == 0);
        CHECK(e.tag == "f");
    }
    SUBCASE("backwards scans from the latest count") {
        std::vector<std::vector<double>> h2 = {
            {4.0, 3.0, 9.0},
            {5.0, 5.0, 9.0},
            {6.0, 7.0, 9.0},
        };
        auto d = break_tie({0, 1}, TieDirection::ForElimination, h2, ord, 'b');
        CHECK(d.chosen == 0);  // 6 < 7 at the last count
        CHECK(d.tag == "b");
    }
}

TEST_CASE("stage two: the ordered ranking decides history-proof ties") {
    OrderedRanking ord;
    ord.rank = {2, 1, 3};
    ord.sampled = {false, false, false};
    ord.group = {0, 1, 2};
    std::vector<std::vector<double>> history = {{5.0, 5.0, 5.0}};
    auto d = break_tie({0, 1, 2}, TieDirection::ForElimination, history, ord, 'f');
    CHECK(d.chosen == 1);  // lowest ordered rank goes first
    CHECK(d.tag == "fo");
    auto e = break_tie({0, 1, 2}, TieDirection::ForElection, history, ord, 'b');
    CHECK(e.chosen == 2);  // highest ordered rank elected
    CHECK(e.tag == "bo");
}

TEST_CASE("stage two flags decisions resting on a sampled order") {
    OrderedRanking ord;
    ord.rank = {1, 2, 3};
    ord.sampled = {true, true, false};
    ord.group = {0, 0, 1};  // candidates 0 and 1 had identical rows
    std::vector<std::vector<double>> history = {{5.0, 5.0, 9.0}};
    auto d = break_tie({0, 1}, TieDirection::ForElimination, history, ord, 'f');
    CHECK(d.chosen == 0);
    CHECK(d.tag == "fos");  // a co-member of the drawn group survived

    // same situation, but the group-mate is not among the survivors
    auto e = break_tie({0, 2}, TieDirection::ForElimination,
                       {{5.0, 5.0, 5.0}}, ord, 'f');
    CHECK(e.chosen == 0);
    CHECK(e.tag == "fo");  // rank decided it; no sampled rival in the tie
}

TEST_CASE("context overload derives the ordering from the ballots") {
    TieContext ctx;
    ctx.tied = {2, 4};  // Laplace vs Poisson
    ctx.history = {{0.0, 1.0, 3.0, 5.0, 1.0}};
    ctx.original_ballots = fixtures::parse(fixtures::kFaculty);
    ctx.direction = TieDirection::ForElimination;
    ctx.seed = 0;
    auto d = break_tie(ctx, 'f');
    CHECK(d.chosen == 4);  // 1.0 < 3.0 at the only count
    CHECK(d.tag == "f");
}
