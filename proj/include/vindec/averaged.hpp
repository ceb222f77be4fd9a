#pragma once

#include <cstdint>
#include <vector>

#include "vindec/curve.hpp"
#include "vindec/intervals.hpp"

namespace vindec {

// Column j is the integral over J_j of gamma' weighted by |Xi|. Exact
// piecewise integration: all curve kinds are polynomial, so each constant
// piece of |Xi| contributes |v| * (gamma(hi) - gamma(lo)).
struct AveragedMatrix {
    int n;
    std::vector<std::vector<double>> columns;   // columns[j][i]
    std::vector<SignComponent> source;          // J_1..J_n
    std::vector<std::vector<int>> weight_runs;  // |Xi| values met inside each J_j
    double det() const;
};

/// Requires exactly n essentially disjoint intervals with 1 <= |Xi| <= n on each.
AveragedMatrix averaged_matrix(const Curve& curve, const Decomposition& decomp,
                               const StepFunction& xi);

struct SmallImageReport {
    double min_Av;       // min |A v| over tested v
    bool pass;           // min_Av >= R^{-n}
    bool det_anomaly;    // |det A| fell below 1e-14 of its predicted scale
    double det_value;
    double det_predicted_scale;
    std::int64_t vectors_tested;
};

// Tests |A v| >= R^{-n} over all sign vectors and `random_vectors` random
// v with |v_{j0}| >= 1 and entries in [-n, n].
SmallImageReport small_image_excluded(const Curve& curve, const AveragedMatrix& A, double R,
                                      int j0, std::int64_t random_vectors = 1000,
                                      std::uint64_t seed = 1);

}  // namespace vindec
