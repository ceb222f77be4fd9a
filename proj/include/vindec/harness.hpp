#pragma once

#include <cstdint>
#include <string>

#include "vindec/curve.hpp"
#include "vindec/intervals.hpp"

namespace vindec {

struct SeparationReport {
    std::string curve;
    int n;
    double R, c0, delta0;
    std::int64_t trials;
    double min_scaled_gap;       // min over trials of R^n |sum (gamma(t_i) - gamma(s_i))|
    std::int64_t violations;     // trials with scaled gap < 1
    std::int64_t decomposition_failures;  // trials where the long-component guarantee failed
    std::uint64_t seed;
    int workers;
};

// Samples admissible interval collections from the R^{-1} dissection of [0,1]
// (pairwise distance >= c0/R, diameter <= delta0), draws non-permutation
// interval tuples with points inside, and records how close
// R^n |sum_i (gamma(t_i) - gamma(s_i))| comes to the unit threshold. Each
// trial also exercises the exact sign-decomposition path: build Xi from the
// sampled endpoint pairs and confirm a sign-constant component of length
// >= c0/R exists. Per-trial seeded streams make the report independent of
// thread count.
SeparationReport separation_harness(const Curve& curve, double R, double c0, double delta0,
                                    std::int64_t trials, std::uint64_t seed, int workers = 0);

/// Serial reference; must produce an identical report (workers field aside).
SeparationReport separation_harness_serial(const Curve& curve, double R, double c0,
                                           double delta0, std::int64_t trials,
                                           std::uint64_t seed);

// Doubles c0 until the harness reports zero violations, starting from
// `c0_start`, capped at `c0_cap`. Throws config_error if the cap is passed.
double calibrate_c0(const Curve& curve, double R, double delta0, std::int64_t trials,
                    std::uint64_t seed, double c0_start = 10.0, double c0_cap = 40.0);

}  // namespace vindec
