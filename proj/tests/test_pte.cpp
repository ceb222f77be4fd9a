#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "vindec/pte.hpp"

using namespace vindec;

TEST_CASE("off-diagonal solutions verify on construction") {
    // the classical degree-2 witness
    OffDiagonalSolution sol({1, 5, 6, 2, 3, 7}, 2, 3);
    CHECK(sol.bound == 7);
    CHECK(sol.side(0) == std::vector<i64>{1, 5, 6});
    CHECK(sol.side(1) == std::vector<i64>{2, 3, 7});
    // 1+5+6 = 12 = 2+3+7 and 1+25+36 = 62 = 4+9+49, checked by the constructor

    CHECK_THROWS_AS(OffDiagonalSolution({1, 2, 1, 2}, 2, 2), std::domain_error);  // diagonal
    CHECK_THROWS_AS(OffDiagonalSolution({1, 2, 3, 5}, 2, 2), std::domain_error);  // not a solution
}

TEST_CASE("search finds the colex-first witness in the off-diagonal regime") {
    PteSearchResult r = find_offdiagonal(2, 3, 7);
    REQUIRE(r.found.has_value());
    CHECK(r.found->bound <= 7);
    // first collision in colex order: repeats allowed in the multisets
    CHECK(r.found->side(0) == std::vector<i64>{1, 4, 4});
    CHECK(r.found->side(1) == std::vector<i64>{2, 2, 5});

    PteSearchResult r2 = find_offdiagonal(3, 4, 12);
    REQUIRE(r2.found.has_value());
    CHECK(r2.found->bound <= 12);
    CHECK(r2.found->side(0) == std::vector<i64>{1, 4, 5, 8});
    CHECK(r2.found->side(1) == std::vector<i64>{2, 2, 7, 7});
}

TEST_CASE("search proves none in the diagonal regime") {
    for (int n = 1; n <= 4; ++n)
        for (int s = 1; s <= n; ++s) {
            PteSearchResult r = find_offdiagonal(n, s, 12);
            CHECK_FALSE(r.found.has_value());
            CHECK(r.exhausted);
        }
}

TEST_CASE("budget stop is distinct from proven-none") {
    PteSearchResult r = find_offdiagonal(2, 2, 100, 10);
    CHECK_FALSE(r.found.has_value());
    CHECK_FALSE(r.exhausted);
    CHECK(r.multisets_examined == 10);
}

TEST_CASE("amplify: closed-form count and re-verification") {
    OffDiagonalSolution base({1, 5, 6, 2, 3, 7}, 2, 3);
    auto sols = amplify(base, 100);
    CHECK(static_cast<i64>(sols.size()) == 665);  // sum_{q=1}^{14} (100 - 7q)
    CHECK(amplify_count_closed_form(7, 100) == 665);
    CHECK(amplify_count_closed_form(7, 50) == 154);
    CHECK(amplify_count_closed_form(7, 200) == 2758);

    // all ordered tuples distinct
    std::set<std::vector<i64>> seen;
    for (const auto& s : sols) seen.insert(s.x);
    CHECK(seen.size() == sols.size());

    // q = 1, h = 1 is the base shifted by one
    bool found_shift = false;
    for (const auto& s : sols)
        if (s.x == std::vector<i64>{2, 6, 7, 3, 4, 8}) found_shift = true;
    CHECK(found_shift);

    // X below the max entry: empty stream, not an error
    CHECK(amplify(base, 5).empty());
}

TEST_CASE("amplified counts grow like X^2") {
    OffDiagonalSolution base({1, 5, 6, 2, 3, 7}, 2, 3);
    std::vector<std::pair<i64, i64>> counts;
    for (i64 X : {i64{50}, i64{100}, i64{200}})
        counts.emplace_back(X, static_cast<i64>(amplify(base, X).size()));
    double slope = growth_exponent(counts);
    CHECK(slope >= 1.9);
    CHECK(slope <= 2.1);
}

TEST_CASE("growth exponent corner cases") {
    CHECK(growth_exponent({{10, 100}, {20, 400}, {40, 1600}}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(growth_exponent({{10, 7}, {20, 7}, {40, 7}}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(growth_exponent({{10, 100}, {20, 400}}), std::domain_error);
    CHECK_THROWS_AS(growth_exponent({{10, 100}, {20, 0}, {40, 1600}}), std::domain_error);
    CHECK_THROWS_AS(growth_exponent({{10, 100}, {10, 400}, {40, 1600}}), std::domain_error);
}
