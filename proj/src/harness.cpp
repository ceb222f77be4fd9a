#include "vindec/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vindec/errors.hpp"
#include "vindec/rng.hpp"

namespace vindec {

namespace {

struct DissectionParams {
    i64 L;        // number of full dissection intervals
    i64 min_gap;  // minimum index gap between chosen intervals
    i64 max_span; // maximum index span (diameter constraint)
    i64 k_max;    // largest admissible collection size
};

DissectionParams dissection_params(double R, double c0, double delta0) {
    if (!(R >= 1.0)) throw std::domain_error("separation_harness: R must be >= 1");
    if (!(delta0 > 0.0 && delta0 <= 1.0))
        throw std::domain_error("separation_harness: delta0 must lie in (0,1]");
    DissectionParams p;
    p.L = static_cast<i64>(std::floor(R));
    // dist(I_l, I_l') = (|l - l'| - 1)/R >= c0/R  <=>  |l - l'| >= c0 + 1
    p.min_gap = static_cast<i64>(std::ceil(c0 + 1.0 - 1e-12));
    // (l_max - l_min + 1)/R <= delta0
    p.max_span = static_cast<i64>(std::floor(delta0 * R + 1e-12)) - 1;
    p.k_max = (p.max_span >= p.min_gap) ? 1 + p.max_span / p.min_gap : 1;
    p.k_max = std::min<i64>(p.k_max, 1 + (p.L - 1) / std::max<i64>(1, p.min_gap));
    if (p.k_max < 2)
        throw config_error(
            "separation_harness: no admissible collection of >= 2 intervals; need "
            "delta0 * R >= c0 + 2 (feasibility bound)");
    return p;
}

struct TrialResult {
    double scaled_gap;
    bool decomposition_ok;
};

TrialResult run_trial(const Curve& curve, const DissectionParams& dp, double R, double c0,
                      std::uint64_t seed, std::int64_t trial) {
    const int n = curve.dimension();
    Rng rng(seed, static_cast<std::uint64_t>(trial));

    // admissible index collection: k indices with pairwise gaps >= min_gap,
    // total span <= max_span
    i64 k = 2 + static_cast<i64>(rng.next_below(static_cast<u64>(dp.k_max - 1)));
    std::vector<i64> gaps(static_cast<std::size_t>(k - 1), dp.min_gap);
    i64 extra = dp.max_span - (k - 1) * dp.min_gap;
    for (auto& g : gaps) {
        if (extra <= 0) break;
        i64 add = static_cast<i64>(rng.next_below(static_cast<u64>(extra + 1)));
        g += add;
        extra -= add;
    }
    i64 span = 0;
    for (i64 g : gaps) span += g;
    i64 base = static_cast<i64>(rng.next_below(static_cast<u64>(dp.L - span)));
    std::vector<i64> cells(static_cast<std::size_t>(k));
    cells[0] = base;
    for (i64 i = 1; i < k; ++i) cells[static_cast<std::size_t>(i)] = cells[static_cast<std::size_t>(i - 1)] + gaps[static_cast<std::size_t>(i - 1)];

    // non-permutation tuples (I_1..I_n), (I_1'..I_n'), repeats allowed
    std::vector<int> ti(static_cast<std::size_t>(n)), si(static_cast<std::size_t>(n));
    bool ok = false;
    for (int attempt = 0; attempt < 1'000'000; ++attempt) {
        for (int i = 0; i < n; ++i) {
            ti[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(static_cast<u64>(k)));
            si[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(static_cast<u64>(k)));
        }
        auto a = ti, b = si;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) {
            ok = true;
            break;
        }
    }
    if (!ok) throw config_error("separation_harness: resampling cap hit for non-permutation tuples");

    // points t_i in I_i, s_i in I_i' as exact rationals (l + r/2^32)/R
    Rational Rq = rational_from_double(R);
    std::vector<Rational> tq(static_cast<std::size_t>(n)), sq(static_cast<std::size_t>(n));
    std::vector<double> td(static_cast<std::size_t>(n)), sd(static_cast<std::size_t>(n));
    const Rational two32(BigInt(1) << 32);
    for (int i = 0; i < n; ++i) {
        Rational ft(static_cast<i64>(cells[static_cast<std::size_t>(ti[static_cast<std::size_t>(i)])])), fs(static_cast<i64>(cells[static_cast<std::size_t>(si[static_cast<std::size_t>(i)])]));
        Rational ut(static_cast<i64>(rng.next_u32())), us(static_cast<i64>(rng.next_u32()));
        tq[static_cast<std::size_t>(i)] = (ft + ut / two32) / Rq;
        sq[static_cast<std::size_t>(i)] = (fs + us / two32) / Rq;
        td[static_cast<std::size_t>(i)] = to_double(tq[static_cast<std::size_t>(i)]);
        sd[static_cast<std::size_t>(i)] = to_double(sq[static_cast<std::size_t>(i)]);
    }

    // scaled gap R^n |sum gamma(t_i) - gamma(s_i)|
    std::vector<double> diff(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        auto gt = curve.eval_derivative(0, td[static_cast<std::size_t>(i)]);
        auto gs = curve.eval_derivative(0, sd[static_cast<std::size_t>(i)]);
        for (int d = 0; d < n; ++d) diff[static_cast<std::size_t>(d)] += gt[static_cast<std::size_t>(d)] - gs[static_cast<std::size_t>(d)];
    }
    double norm2 = 0.0;
    for (double d : diff) norm2 += d * d;
    double scaled = std::pow(R, n) * std::sqrt(norm2);

    // exact path: Xi from the sampled pairs must keep a sign-constant
    // component of length >= c0 / R
    std::vector<std::pair<Rational, Rational>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(sq[static_cast<std::size_t>(i)], tq[static_cast<std::size_t>(i)]);
    DissectionMeta meta{Rational(1) / Rq, rational_from_double(c0) / Rq, false};
    SignedIntervalFamily family(pairs, meta);
    StepFunction xi = build_xi(family);
    Decomposition decomp = decompose_support(xi, n, meta);
    bool long_component = false;
    for (const auto& piece : decomp.pieces)
        if (piece.hi - piece.lo >= meta.min_gap) long_component = true;

    return {scaled, long_component};
}

struct HarnessPartial {
    double min_gap = std::numeric_limits<double>::infinity();
    std::int64_t violations = 0;
    std::int64_t decomposition_failures = 0;

    void merge(const HarnessPartial& o) {
        min_gap = std::min(min_gap, o.min_gap);
        violations += o.violations;
        decomposition_failures += o.decomposition_failures;
    }
};

SeparationReport harness_core(const Curve& curve, double R, double c0, double delta0,
                              std::int64_t trials, std::uint64_t seed, int workers,
                              bool parallel) {
    if (trials < 1) throw std::domain_error("separation_harness: trials must be >= 1");
    if (!curve.is_nondegenerate()) throw std::domain_error("separation_harness: curve is degenerate");
    DissectionParams dp = dissection_params(R, c0, delta0);
    int nw = parallel ? (workers > 0 ? workers : omp_get_max_threads()) : 1;
    std::vector<HarnessPartial> parts(static_cast<std::size_t>(nw));
#pragma omp parallel num_threads(nw) if (parallel)
    {
        int tid = omp_get_thread_num();
        HarnessPartial& part = parts[static_cast<std::size_t>(tid)];
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < trials; ++t) {
            TrialResult r = run_trial(curve, dp, R, c0, seed, t);
            part.min_gap = std::min(part.min_gap, r.scaled_gap);
            if (r.scaled_gap < 1.0) ++part.violations;
            if (!r.decomposition_ok) ++part.decomposition_failures;
        }
    }
    HarnessPartial total;
    for (const auto& p : parts) total.merge(p);
    return {curve_kind_name(curve.kind()),
            curve.dimension(),
            R,
            c0,
            delta0,
            trials,
            total.min_gap,
            total.violations,
            total.decomposition_failures,
            seed,
            nw};
}

}  // namespace

SeparationReport separation_harness(const Curve& curve, double R, double c0, double delta0,
                                    std::int64_t trials, std::uint64_t seed, int workers) {
    return harness_core(curve, R, c0, delta0, trials, seed, workers, true);
}

SeparationReport separation_harness_serial(const Curve& curve, double R, double c0,
                                           double delta0, std::int64_t trials,
                                           std::uint64_t seed) {
    return harness_core(curve, R, c0, delta0, trials, seed, 1, false);
}

double calibrate_c0(const Curve& curve, double R, double delta0, std::int64_t trials,
                    std::uint64_t seed, double c0_start, double c0_cap) {
    for (double c0 = c0_start; c0 <= c0_cap; c0 *= 2.0) {
        SeparationReport rep = separation_harness(curve, R, c0, delta0, trials, seed);
        if (rep.violations == 0) return c0;
    }
    throw config_error("calibrate_c0: no passing c0 found below the cap");
}

}  // namespace vindec
