#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "vindec/errors.hpp"
#include "vindec/harness.hpp"
#include "vindec/intervals.hpp"
#include "vindec/io.hpp"
#include "vindec/rng.hpp"

using namespace vindec;

namespace {

SignedIntervalFamily random_family(int n, u64 seed) {
    Rng rng(seed);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (int i = 0; i < n; ++i) {
        i64 d1 = 1 + static_cast<i64>(rng.next_below(64));
        i64 d2 = 1 + static_cast<i64>(rng.next_below(64));
        pairs.emplace_back(Rational(static_cast<i64>(rng.next_below(static_cast<u64>(d1) + 1)), d1),
                           Rational(static_cast<i64>(rng.next_below(static_cast<u64>(d2) + 1)), d2));
    }
    return SignedIntervalFamily(pairs);
}

}  // namespace

TEST_CASE("build_xi: single pair, overlap, and degenerate pair") {
    StepFunction one = build_xi(SignedIntervalFamily({{Rational(0), Rational(1)}}));
    CHECK(one.value_at(Rational(0)) == 1);
    CHECK(one.value_at(Rational(1, 2)) == 1);
    CHECK(one.value_at(Rational(1)) == 0);       // right-continuous, zero at 1
    CHECK(one.value_at(Rational(-1, 2)) == 0);

    StepFunction mix = build_xi(SignedIntervalFamily(
        {{Rational(0), Rational(1)}, {Rational(1, 2), Rational(1, 5)}}));
    CHECK(mix.value_at(Rational(1, 10)) == 1);
    CHECK(mix.value_at(Rational(3, 10)) == 0);   // +1 - 1 on [1/5, 1/2)
    CHECK(mix.value_at(Rational(7, 10)) == 1);

    StepFunction zero = build_xi(SignedIntervalFamily(
        {{Rational(1, 3), Rational(1, 3)}, {Rational(1, 2), Rational(1, 2)}}));
    CHECK(zero.is_zero());
}

TEST_CASE("decompose_support: oriented, overlapping, and cancelling families") {
    // n disjoint oriented intervals
    StepFunction xi = build_xi(SignedIntervalFamily(
        {{Rational(0), Rational(1, 4)}, {Rational(4, 7), Rational(2, 7)}}));
    Decomposition d = decompose_support(xi, 2);
    REQUIRE(d.size() == 2);
    CHECK(d.pieces[0].sign == 1);
    CHECK(d.pieces[1].sign == -1);

    // overlap example: two positive components
    StepFunction mix = build_xi(SignedIntervalFamily(
        {{Rational(0), Rational(1)}, {Rational(1, 2), Rational(1, 5)}}));
    Decomposition dm = decompose_support(mix, 2);
    REQUIRE(dm.size() == 2);
    CHECK(dm.pieces[0].sign == 1);
    CHECK(dm.pieces[1].sign == 1);

    // permutation family cancels exactly
    StepFunction z = build_xi(SignedIntervalFamily(
        {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}));
    CHECK(z.is_zero());
    CHECK(decompose_support(z, 2).size() == 0);
}

TEST_CASE("adjacent opposite signs stay essentially disjoint") {
    // +1 on [0, 1/2), -1 on [1/2, 1)
    StepFunction xi = build_xi(SignedIntervalFamily(
        {{Rational(0), Rational(1, 2)}, {Rational(1), Rational(1, 2)}}));
    Decomposition d = decompose_support(xi, 2);
    REQUIRE(d.size() == 2);
    CHECK(d.pieces[0].hi == d.pieces[1].lo);
    CHECK(reconstruction_holds(xi, d));
}

TEST_CASE("pad_to_n: unchanged, equal split, and error cases") {
    StepFunction xi = build_xi(SignedIntervalFamily({{Rational(0), Rational(1, 2)}}));
    Decomposition d1 = decompose_support(xi, 1);
    Decomposition same = pad_to_n(d1, 1, 1.0, 0.0);
    CHECK_FALSE(same.padded);
    CHECK(same.size() == 1);

    Decomposition d3 = pad_to_n(d1, 3, 1.0, 0.0);
    CHECK(d3.padded);
    REQUIRE(d3.size() == 3);
    CHECK(d3.pieces[0].lo == Rational(0));
    CHECK(d3.pieces[0].hi == Rational(1, 6));
    CHECK(d3.pieces[1].hi == Rational(1, 3));
    CHECK(d3.pieces[2].hi == Rational(1, 2));
    for (const auto& p : d3.pieces) CHECK(p.sign == 1);
    CHECK(reconstruction_holds(xi, d3));

    Decomposition empty;
    CHECK_THROWS_AS(pad_to_n(empty, 2, 1.0, 0.0), std::domain_error);
    Decomposition empty_meta;
    empty_meta.meta = DissectionMeta{Rational(1, 16), Rational(10, 16), false};
    CHECK_THROWS_AS(pad_to_n(empty_meta, 2, 16.0, 10.0), invariant_violation);
}

TEST_CASE("reconstruction identity on random families, with and without padding") {
    for (int t = 0; t < 3000; ++t) {
        int n = 1 + static_cast<int>(Rng(5000, static_cast<u64>(t)).next_below(6));
        SignedIntervalFamily fam = random_family(n, 6000 + static_cast<u64>(t));
        StepFunction xi = build_xi(fam);
        CHECK(xi.max_abs() <= n);
        Decomposition d = decompose_support(xi, n);
        CHECK(d.size() <= n);
        CHECK(reconstruction_holds(xi, d));
        if (d.size() > 0 && d.size() < n) {
            Decomposition padded = pad_to_n(d, n, 1.0, 0.0);
            CHECK(padded.size() == n);
            CHECK(reconstruction_holds(xi, padded));
        }
    }
}

TEST_CASE("theta permutation test: examples") {
    auto r1 = theta_permutation_test({Rational(0), Rational(1)}, {Rational(1), Rational(0)});
    CHECK(r1.theta_zero);
    CHECK(r1.is_permutation);

    auto r2 = theta_permutation_test({Rational(0), Rational(0)}, {Rational(1), Rational(1)});
    CHECK_FALSE(r2.theta_zero);
    CHECK_FALSE(r2.is_permutation);
}

TEST_CASE("removing matched pairs changes nothing") {
    Rng rng(77);
    for (int t = 0; t < 500; ++t) {
        int n = 1 + static_cast<int>(rng.next_below(4));
        std::vector<Rational> x, y;
        for (int i = 0; i < n; ++i) {
            x.emplace_back(static_cast<i64>(rng.next_below(9)));
            y.emplace_back(static_cast<i64>(rng.next_below(9)));
        }
        auto before = theta_permutation_test(x, y);
        // append a matched pair x_i = y_i
        Rational extra(static_cast<i64>(rng.next_below(9)));
        x.push_back(extra);
        y.push_back(extra);
        auto after = theta_permutation_test(x, y);
        CHECK(before.is_permutation == after.is_permutation);
        CHECK(before.theta_zero == after.theta_zero);
    }
}

TEST_CASE("exhaustive equivalence on the small grid (n <= 2 here)") {
    for (int n = 1; n <= 2; ++n) {
        std::vector<Rational> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
        i64 total = 1;
        for (int i = 0; i < 2 * n; ++i) total *= 5;
        for (i64 code = 0; code < total; ++code) {
            i64 rem = code;
            for (int i = 0; i < n; ++i) {
                x[static_cast<std::size_t>(i)] = Rational(rem % 5);
                rem /= 5;
            }
            for (int i = 0; i < n; ++i) {
                y[static_cast<std::size_t>(i)] = Rational(rem % 5);
                rem /= 5;
            }
            CHECK_NOTHROW(theta_permutation_test(x, y));
        }
    }
}

TEST_CASE("separation harness: dissection checks and violations") {
    Curve c2 = Curve::normalized_moment(2);
    SeparationReport rep = separation_harness(c2, 16.0, 10.0, 1.0, 2000, 99);
    CHECK(rep.violations == 0);
    CHECK(rep.decomposition_failures == 0);
    CHECK(rep.min_scaled_gap >= 1.0);

    Curve c3 = Curve::normalized_moment(3);
    SeparationReport rep3 = separation_harness(c3, 16.0, 10.0, 1.0, 1000, 99);
    CHECK(rep3.violations == 0);
    CHECK(rep3.decomposition_failures == 0);

    // negative control: c0 = 1 merely reports whatever it sees
    SeparationReport neg = separation_harness(c2, 16.0, 1.0, 1.0, 1000, 99);
    CHECK(neg.violations >= 0);

    // infeasible configuration: not enough room for two separated intervals
    CHECK_THROWS_AS(separation_harness(c2, 8.0, 10.0, 1.0, 10, 99), config_error);
}

TEST_CASE("calibration finds a passing c0") {
    Curve c2 = Curve::normalized_moment(2);
    double c0 = calibrate_c0(c2, 16.0, 1.0, 1000, 99, 10.0, 40.0);
    CHECK(c0 <= 40.0);
    SeparationReport rep = separation_harness(c2, 16.0, c0, 1.0, 1000, 99);
    CHECK(rep.violations == 0);
}

TEST_CASE("family file loader") {
    std::istringstream in("0 1/2\n1/2 1\n");
    auto pairs = load_family(in);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].first == Rational(0));
    CHECK(pairs[0].second == Rational(1, 2));
    CHECK(pairs[1].second == Rational(1));
    CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
}

TEST_CASE("family endpoints must live in [0,1]") {
    CHECK_THROWS_AS(SignedIntervalFamily({{Rational(-1, 2), Rational(1, 2)}}), std::domain_error);
    CHECK_THROWS_AS(SignedIntervalFamily({{Rational(0), Rational(3, 2)}}), std::domain_error);
}
