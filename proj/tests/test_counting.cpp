#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "vindec/counting.hpp"
#include "vindec/errors.hpp"
#include "vindec/io.hpp"
#include "vindec/rng.hpp"

#include <sstream>

using namespace vindec;

namespace {

std::vector<i64> range1(i64 X) {
    std::vector<i64> S(static_cast<std::size_t>(X));
    std::iota(S.begin(), S.end(), 1);
    return S;
}

// independent oracle: diagonal count by raw 2s-tuple enumeration
i64 diag_oracle(i64 k, int s) {
    i64 total = 1;
    for (int i = 0; i < 2 * s; ++i) total *= k;
    i64 count = 0;
    for (i64 code = 0; code < total; ++code) {
        i64 rem = code;
        std::vector<i64> left(static_cast<std::size_t>(s)), right(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) {
            left[static_cast<std::size_t>(i)] = rem % k;
            rem /= k;
        }
        for (int i = 0; i < s; ++i) {
            right[static_cast<std::size_t>(i)] = rem % k;
            rem /= k;
        }
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        if (left == right) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("diagonal_count matches the enumeration oracle") {
    CHECK(diagonal_count(3, 3) == 93);       // 729 sextuples enumerated independently
    CHECK(diag_oracle(3, 3) == 93);
    for (i64 k = 1; k <= 12; ++k) CHECK(diagonal_count(k, 2) == 2 * k * k - k);
    for (i64 k = 1; k <= 5; ++k) {
        CHECK(diagonal_count(k, 1) == k);
        CHECK(diagonal_count(k, 2) == diag_oracle(k, 2));
    }
    for (i64 k = 1; k <= 4; ++k) CHECK(diagonal_count(k, 3) == diag_oracle(k, 3));
}

TEST_CASE("bruteforce examples") {
    CountOptions opts;
    // n = 1, s = 1: the system is x1 = x2
    for (i64 X : {i64{1}, i64{5}, i64{9}}) {
        PhiMap phi = PhiMap::moment_powers(X, 1);
        SolutionTally t = count_solutions_bruteforce(phi, range1(X), 1, opts);
        CHECK(t.J == X);
        CHECK(t.off_diagonal == 0);
    }
    {
        PhiMap phi = PhiMap::moment_powers(2, 2);
        SolutionTally t = count_solutions_bruteforce(phi, {1, 2}, 2, opts);
        CHECK(t.J == 6);
        CHECK(t.diagonal == 6);
        CHECK(t.off_diagonal == 0);
    }
    {
        // off-diagonal regime: s = 3 > n = 2 over 1..7. The off-diagonal count
        // includes witnesses with repeated entries such as {1,4,4|2,2,5}.
        PhiMap phi = PhiMap::moment_powers(7, 2);
        SolutionTally t = count_solutions_bruteforce(phi, range1(7), 3, opts);
        CHECK(t.J == 1771);
        CHECK(t.diagonal == 1645);
        CHECK(t.off_diagonal == 126);
    }
}

TEST_CASE("mitm examples and engine equivalence") {
    CountOptions opts;
    {
        // s = 1: J is the sum of squared fiber sizes; |S| for injective phi
        PhiMap phi = PhiMap::moment_powers(9, 2);
        SolutionTally t = count_solutions_mitm(phi, range1(9), 1, opts);
        CHECK(t.J == 9);
    }
    {
        PhiMap phi = PhiMap::moment_powers(50, 2);
        SolutionTally t = count_solutions_mitm(phi, range1(50), 2, opts);
        CHECK(t.J == 4950);
        CHECK(t.off_diagonal == 0);
    }
    {
        PhiMap phi = PhiMap::moment_powers(7, 2);
        SolutionTally a = count_solutions_mitm(phi, range1(7), 3, opts);
        SolutionTally b = count_solutions_bruteforce(phi, range1(7), 3, opts);
        CHECK(a.J == b.J);
        CHECK(a.diagonal == b.diagonal);
        CHECK(a.off_diagonal == b.off_diagonal);
    }
    // random subsets, both engines, random n and s
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        i64 N = 8;
        std::vector<i64> S;
        for (i64 j = 1; j <= N; ++j)
            if (rng.next_double() < 0.6) S.push_back(j);
        if (S.empty()) S.push_back(3);
        int n = 1 + static_cast<int>(rng.next_below(3));
        int s = 1 + static_cast<int>(rng.next_below(3));
        PhiMap phi = PhiMap::moment_powers(N, n);
        SolutionTally a = count_solutions_bruteforce(phi, S, s, opts);
        SolutionTally b = count_solutions_mitm(phi, S, s, opts);
        CHECK(a.J == b.J);
        CHECK(a.diagonal == b.diagonal);
    }
}

TEST_CASE("monotonicity and the diagonal lower bound") {
    CountOptions opts;
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(2));
        int s = 1 + static_cast<int>(rng.next_below(2));
        std::vector<i64> big;
        for (i64 j = 1; j <= 9; ++j)
            if (rng.next_double() < 0.7) big.push_back(j);
        if (big.size() < 2) big = {2, 5};
        std::vector<i64> small(big.begin(), big.begin() + big.size() / 2 + 1);
        PhiMap phi = PhiMap::moment_powers(9, n);
        SolutionTally ts = count_solutions(phi, small, s, opts);
        SolutionTally tb = count_solutions(phi, big, s, opts);
        CHECK(ts.J <= tb.J);
        CHECK(ts.J >= diagonal_count(static_cast<i64>(small.size()), s));
    }
}

TEST_CASE("budget refusals carry estimates") {
    CountOptions opts;  // defaults: brute 1e8 tuples, table 3e7 entries
    PhiMap phi = PhiMap::moment_powers(1000, 2);
    CHECK_THROWS_AS(count_solutions_bruteforce(phi, range1(1000), 9, opts), budget_error);
    CHECK_THROWS_AS(count_solutions_mitm(phi, range1(1000), 9, opts), budget_error);
    try {
        count_solutions_mitm(phi, range1(1000), 9, opts);
    } catch (const budget_error& e) {
        CHECK(e.required == doctest::Approx(1e27));
    }
}

TEST_CASE("newton-girard identities") {
    CHECK(newton_girard_elementary({Rational(0), Rational(0)}) ==
          std::vector<Rational>{Rational(0), Rational(0)});
    CHECK(newton_girard_elementary({Rational(3), Rational(5)}) ==
          std::vector<Rational>{Rational(3), Rational(2)});
    CHECK(newton_girard_elementary({Rational(6), Rational(14), Rational(36)}) ==
          std::vector<Rational>{Rational(6), Rational(11), Rational(6)});
}

TEST_CASE("newton-girard round trip through the monic polynomial") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 1 + static_cast<int>(rng.next_below(6));
        std::vector<i64> roots(static_cast<std::size_t>(m));
        for (auto& r : roots) r = static_cast<i64>(rng.next_below(21)) - 10;
        // power sums
        std::vector<Rational> p(static_cast<std::size_t>(m));
        for (int j = 1; j <= m; ++j) {
            BigInt acc = 0;
            for (i64 r : roots) acc += big_pow(BigInt(r), static_cast<unsigned>(j));
            p[static_cast<std::size_t>(j - 1)] = Rational(acc);
        }
        auto S = newton_girard_elementary(p);
        // expand prod (T - r_i) and compare coefficients: T^m - S1 T^{m-1} + ...
        std::vector<Rational> poly{Rational(1)};
        for (i64 r : roots) {
            std::vector<Rational> next(poly.size() + 1);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i] += poly[i];
                next[i + 1] -= poly[i] * r;
            }
            poly = std::move(next);
        }
        for (int j = 1; j <= m; ++j) {
            Rational expect = poly[static_cast<std::size_t>(j)];
            Rational sign = (j % 2 == 1) ? Rational(-1) : Rational(1);
            CHECK(S[static_cast<std::size_t>(j - 1)] * sign == expect);
        }
        // every root annihilates the polynomial rebuilt from the S_j
        for (i64 r : roots) {
            Rational acc = 0;
            Rational sign(1);
            for (std::size_t i = 0; i < poly.size(); ++i) acc += poly[i] * big_pow(BigInt(r), static_cast<unsigned>(poly.size() - 1 - i));
            CHECK(acc == Rational(0));
            (void)sign;
        }
    }
}

TEST_CASE("certify_diagonal") {
    CHECK(certify_diagonal({1, 2, 2, 1}, 2));
    CHECK_FALSE(certify_diagonal({1, 5, 6, 2, 3, 7}, 2));
    CHECK_THROWS_AS(certify_diagonal({1, 2, 3, 4}, 2), std::domain_error);
    // solutions with s <= n are always diagonal
    CountOptions opts;
    PhiMap phi = PhiMap::moment_powers(5, 2);
    for (i64 a = 1; a <= 5; ++a)
        for (i64 b = 1; b <= 5; ++b) CHECK(certify_diagonal({a, b, b, a}, 2));
}

TEST_CASE("verify_diagonal_only") {
    CountOptions opts;
    CHECK(verify_diagonal_only(2, 2, 100, opts));
    CHECK(verify_diagonal_only(3, 3, 12, opts));
    CHECK_FALSE(verify_diagonal_only(2, 3, 7, opts));  // negative control, s > n
}

TEST_CASE("weighted table invariants") {
    CountOptions opts;
    PhiMap phi = PhiMap::moment_powers(6, 2);
    // indicator: non-negative integer weights summing to |S|^s
    auto ind = build_indicator_table(phi, {1, 3, 4, 6}, 3, opts);
    BigInt total = ind.total();
    CHECK(total == BigInt(64));  // 4^3
    for (const auto& w : ind.weights) CHECK(w > 0);

    // exact coefficients: total is (sum a)^s exactly
    Rng rng(41);
    std::vector<RationalComplex> a(6);
    RationalComplex sum{Rational(0), Rational(0)};
    for (auto& z : a) {
        z = RationalComplex{Rational(static_cast<i64>(rng.next_below(9)) - 4, 3),
                            Rational(static_cast<i64>(rng.next_below(9)) - 4, 5)};
        sum += z;
    }
    auto tab = build_exact_table(phi, a, 3, opts);
    CHECK(tab.total() == rc_pow(sum, 3));
}

TEST_CASE("weighted moment: Parseval at s=1 and the exact identity") {
    CountOptions opts;
    PhiMap phi = PhiMap::moment_powers(5, 2);  // injective
    Rng rng(53);
    std::vector<cplx> a(5);
    double l2 = 0;
    for (auto& z : a) {
        z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        l2 += std::norm(z);
    }
    CHECK(weighted_moment(phi, a, 1, opts) == doctest::Approx(l2).epsilon(1e-12));

    // indicator coefficients reproduce J exactly
    std::vector<i64> S{1, 2, 4};
    std::vector<RationalComplex> ind(5, RationalComplex{Rational(0), Rational(0)});
    for (i64 j : S) ind[static_cast<std::size_t>(j - 1)].re = 1;
    for (int s = 1; s <= 3; ++s) {
        SolutionTally t = count_solutions(phi, S, s, opts);
        CHECK(weighted_moment_exact(phi, ind, s, opts) == Rational(t.J));
    }
}

TEST_CASE("weighted moment matches the trig-grid quadrature oracle") {
    CountOptions opts;
    Rng rng(67);
    for (int trial = 0; trial < 25; ++trial) {
        int N = 1 + static_cast<int>(rng.next_below(4));
        int s = 1 + static_cast<int>(rng.next_below(2));
        std::vector<cplx> a(static_cast<std::size_t>(N));
        for (auto& z : a) z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        PhiMap phi = PhiMap::moment_powers(N, 1);
        double exact = weighted_moment(phi, a, s, opts);
        // uniform grid of size > 4N integrates trig polynomials of this degree exactly
        const int M = 4 * N + 1;
        double acc = 0;
        for (int k = 0; k < M; ++k) {
            cplx F(0, 0);
            for (int j = 1; j <= N; ++j) {
                double ph = 2.0 * 3.14159265358979323846 * j * k / M;
                F += a[static_cast<std::size_t>(j - 1)] * cplx(std::cos(ph), std::sin(ph));
            }
            acc += std::pow(std::norm(F), s);
        }
        acc /= M;
        CHECK(std::abs(exact - acc) <= 1e-9 * (std::abs(acc) + 1e-300));
    }
}

TEST_CASE("N=1 moment is 1 for unit coefficient") {
    CountOptions opts;
    PhiMap phi = PhiMap::moment_powers(1, 3);
    for (int s = 1; s <= 4; ++s)
        CHECK(weighted_moment(phi, {cplx(1, 0)}, s, opts) == doctest::Approx(1.0));
}

TEST_CASE("custom phi tables load and count") {
    std::istringstream in(
        "1 1 1\n"
        "2 2 4\n"
        "3 3 9\n"
        "4 1 1\n");  // phi(4) collides with phi(1)
    PhiMap phi = load_phi_table(in);
    CHECK(phi.N() == 4);
    CHECK(phi.n() == 2);
    CountOptions opts;
    SolutionTally t = count_solutions_mitm(phi, {1, 2, 3, 4}, 1, opts);
    // fibers: {1,4} squared + {2} + {3} = 4 + 1 + 1
    CHECK(t.J == 6);
}

TEST_CASE("subset loader") {
    std::istringstream in("1 2 3\n# comment\n7\n");
    auto S = load_subset(in);
    CHECK(S == std::vector<i64>{1, 2, 3, 7});
}
