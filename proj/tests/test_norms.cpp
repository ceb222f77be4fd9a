#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vindec/norms.hpp"
#include "vindec/rng.hpp"

using namespace vindec;

namespace {

CoefficientVector random_vector(i64 N, u64 seed) {
    Rng rng(seed);
    std::vector<cplx> a(static_cast<std::size_t>(N));
    for (auto& z : a) z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return CoefficientVector(a);
}

}  // namespace

TEST_CASE("distribution function") {
    CoefficientVector a({cplx(1, 0), cplx(1, 0), cplx(1, 0)});
    CHECK(distribution_function(a, 0.5) == 3);
    CHECK(distribution_function(a, 1.0) == 0);  // strict inequality
    CoefficientVector b({cplx(2, 0), cplx(1, 0)});
    CHECK(distribution_function(b, 1.5) == 1);
    CHECK(distribution_function(b, 5.0) == 0);
}

TEST_CASE("Lorentz (p,1) norm piecewise formula") {
    CoefficientVector single({cplx(0, 1)});
    for (double p : {1.5, 2.0, 3.0, 10.0}) CHECK(lorentz_p1_norm(single, p) == doctest::Approx(1.0));

    for (i64 N : {i64{2}, i64{5}, i64{100}}) {
        CoefficientVector ones(std::vector<cplx>(static_cast<std::size_t>(N), cplx(1, 0)));
        CHECK(lorentz_p1_norm(ones, 2.0) == doctest::Approx(std::sqrt(double(N))));
    }

    CoefficientVector two({cplx(2, 0), cplx(1, 0)});
    CHECK(lorentz_p1_norm(two, 2.0) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("lemma 3.2 comparison") {
    // equal entries: both norms coincide, bound holds with slack
    CoefficientVector ones(std::vector<cplx>(8, cplx(0.5, 0)));
    auto r = lemma32_check(ones, 2.0);
    CHECK(r.holds);
    CHECK(lorentz_p1_norm(ones, 2.0) == doctest::Approx(lp_norm(ones, 2.0)).epsilon(1e-15));

    CoefficientVector two({cplx(2, 0), cplx(1, 0)});
    auto r2 = lemma32_check(two, 2.0);
    CHECK(r2.lhs == doctest::Approx(2.414213562373095).epsilon(1e-12));
    CHECK(r2.rhs == doctest::Approx((1.0 + std::sqrt(std::log(2.0)) / 2.0) * std::sqrt(5.0)).epsilon(1e-12));
    CHECK(r2.holds);

    // property sweep (full scale runs in the acceptance suite)
    for (int t = 0; t < 200; ++t) {
        Rng rng(900, static_cast<u64>(t));
        i64 N = 1 + static_cast<i64>(rng.next_below(2000));
        auto v = random_vector(N, rng.next_u64());
        for (double p : {1.25, 2.0, 3.0, 10.0}) {
            auto rc = lemma32_check(v, p);
            CHECK(rc.holds);
            // standard ordering between the norms
            CHECK(lorentz_p1_norm(v, p) >= lp_norm(v, p) * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("Chebyshev bound and vanishing beyond the norm") {
    for (int t = 0; t < 50; ++t) {
        Rng rng(901, static_cast<u64>(t));
        auto v = random_vector(1 + static_cast<i64>(rng.next_below(100)), rng.next_u64());
        for (double p : {1.25, 2.0, 3.0}) {
            double np = lp_norm(v, p);
            for (double s : {0.01, 0.1, 0.5, 1.0, 2.0}) {
                double lam = static_cast<double>(distribution_function(v, s));
                CHECK(std::pow(lam, 1.0 / p) <= np / s * (1.0 + 1e-12));
            }
            CHECK(distribution_function(v, np * (1.0 + 1e-12)) == 0);
        }
    }
}

TEST_CASE("four-part split") {
    CoefficientVector pos({cplx(1, 0), cplx(2, 0)});
    auto s = four_part_split(pos);
    CHECK(s.re_pos == std::vector<double>{1, 2});
    CHECK(s.re_neg == std::vector<double>{0, 0});
    CHECK(s.im_pos == std::vector<double>{0, 0});
    CHECK(s.im_neg == std::vector<double>{0, 0});

    auto sn = four_part_split(CoefficientVector({cplx(-3, 0)}));
    CHECK(sn.re_neg == std::vector<double>{3});
    CHECK(sn.re_pos == std::vector<double>{0});

    for (int t = 0; t < 50; ++t) {
        auto v = random_vector(40, 1000 + static_cast<u64>(t));
        auto sp = four_part_split(v);
        double norm_parts = 0, norm_a = 0;
        const double p = 2.5;
        for (std::size_t j = 0; j < v.a.size(); ++j) {
            CHECK(sp.reconstruct(j) == v.a[j]);  // exact reconstruction
            CHECK(sp.re_pos[j] * sp.re_neg[j] == 0.0);  // disjoint supports
            CHECK(sp.im_pos[j] * sp.im_neg[j] == 0.0);
            norm_parts += std::pow(std::abs(sp.re_pos[j] - sp.re_neg[j]), p) +
                          std::pow(std::abs(sp.im_pos[j] - sp.im_neg[j]), p);
            norm_a += std::pow(std::abs(v.a[j]), p);
        }
        CHECK(norm_parts <= 2.0 * norm_a * (1 + 1e-12));
    }
}

TEST_CASE("decoupling config derives p, p', c'") {
    auto cfg = DecouplingCheckConfig::make(2, 2.0, 2.0);
    CHECK(cfg.p == doctest::Approx(2.0));
    CHECK(cfg.p_conj == doctest::Approx(2.0));
    CHECK(1.0 / cfg.p + 1.0 / cfg.p_conj == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cfg.c_prime == doctest::Approx(std::pow(2.0, 1.75)).epsilon(1e-14));

    auto cfg2 = DecouplingCheckConfig::make(3, 4.5, 1.0);
    CHECK(cfg2.p == doctest::Approx(4.0 / 3.0));
    CHECK(1.0 / cfg2.p + 1.0 / cfg2.p_conj == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(DecouplingCheckConfig::make(2, 4.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(DecouplingCheckConfig::make(2, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(DecouplingCheckConfig::make(2, 2.0, 0.0), std::domain_error);
}

TEST_CASE("decoupling check: trivial, indicator reduction, homogeneity") {
    CountOptions opts;
    auto cfg = DecouplingCheckConfig::make(2, 2.0, 2.0);

    PhiMap phi1 = PhiMap::moment_powers(1, 2);
    auto r1 = decoupling_check(phi1, CoefficientVector({cplx(1, 0)}), cfg, opts);
    CHECK(r1.lhs == doctest::Approx(1.0));
    CHECK(r1.holds);

    // indicator input reduces to the J-form of the inequality
    PhiMap phi = PhiMap::moment_powers(20, 2);
    std::vector<i64> S{2, 3, 5, 8, 13, 20};
    auto ind = CoefficientVector::indicator(20, S);
    auto r = decoupling_check(phi, ind, cfg, opts);
    SolutionTally t = count_solutions(phi, S, 2, opts);
    CHECK(std::pow(r.lhs, 4.0) == doctest::Approx(to_double(t.J)).epsilon(1e-9));
    CHECK(r.holds == (to_double(t.J) <= std::pow(r.rhs, 4.0) * (1 + 1e-9)));

    // scaling both sides: verdict is scale invariant
    auto v = random_vector(30, 77);
    auto base = decoupling_check(PhiMap::moment_powers(30, 2), v, cfg, opts);
    std::vector<cplx> scaled = v.a;
    for (auto& z : scaled) z *= 8.0;
    auto big = decoupling_check(PhiMap::moment_powers(30, 2), CoefficientVector(scaled), cfg, opts);
    CHECK(big.lhs == doctest::Approx(8.0 * base.lhs).epsilon(1e-9));
    CHECK(big.rhs == doctest::Approx(8.0 * base.rhs).epsilon(1e-9));
    CHECK(base.holds == big.holds);
}

TEST_CASE("decoupling sweep at the Theorem-1.1 parameters") {
    CountOptions opts;
    auto cfg = DecouplingCheckConfig::make(2, 2.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        Rng rng(902, static_cast<u64>(t));
        i64 N = 1 + static_cast<i64>(rng.next_below(60));
        auto v = random_vector(N, rng.next_u64());
        auto r = decoupling_check(PhiMap::moment_powers(N, 2), v, cfg, opts);
        CHECK(r.holds);
    }
}
