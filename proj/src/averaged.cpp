#include "vindec/averaged.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vindec/errors.hpp"
#include "vindec/rng.hpp"

namespace vindec {

double AveragedMatrix::det() const { return det_lu(columns); }

AveragedMatrix averaged_matrix(const Curve& curve, const Decomposition& decomp,
                               const StepFunction& xi) {
    const int n = curve.dimension();
    if (decomp.size() != n)
        throw std::domain_error("averaged_matrix: decomposition must have exactly n intervals");
    auto sorted = decomp.pieces;
    std::sort(sorted.begin(), sorted.end(),
              [](const SignComponent& a, const SignComponent& b) { return a.lo < b.lo; });
    for (int j = 0; j + 1 < n; ++j)
        if (sorted[j].hi > sorted[j + 1].lo)
            throw std::domain_error("averaged_matrix: intervals overlap with positive measure");

    AveragedMatrix A;
    A.n = n;
    A.source = decomp.pieces;
    A.columns.assign(n, std::vector<double>(n, 0.0));
    A.weight_runs.resize(n);

    auto gamma_at = [&](const Rational& t) { return curve.eval_derivative(0, to_double(t)); };

    for (int j = 0; j < n; ++j) {
        const auto& J = decomp.pieces[j];
        if (J.hi <= J.lo) throw std::domain_error("averaged_matrix: empty interval");
        // walk the pieces of xi inside [J.lo, J.hi]
        Rational pos = J.lo;
        while (pos < J.hi) {
            int v = xi.value_at(pos);
            // next breakpoint after pos
            auto it = std::upper_bound(xi.breaks.begin(), xi.breaks.end(), pos);
            Rational nxt = (it == xi.breaks.end()) ? J.hi : std::min(*it, J.hi);
            if (nxt <= pos) nxt = J.hi;
            int av = std::abs(v);
            if (av < 1 || av > n)
                throw std::domain_error("averaged_matrix: |Xi| outside [1,n] on an interval");
            A.weight_runs[j].push_back(av);
            auto lo_v = gamma_at(pos), hi_v = gamma_at(nxt);
            for (int i = 0; i < n; ++i) A.columns[j][i] += av * (hi_v[i] - lo_v[i]);
            pos = nxt;
        }
    }
    return A;
}

SmallImageReport small_image_excluded(const Curve& curve, const AveragedMatrix& A, double R,
                                      int j0, std::int64_t random_vectors, std::uint64_t seed) {
    const int n = A.n;
    if (R < 1.0) throw std::domain_error("small_image_excluded: R must be >= 1");
    if (j0 < 0 || j0 >= n) throw std::domain_error("small_image_excluded: j0 out of range");

    // predicted scale of det(A): prod |J_j| * prod (c_j - c_i)
    double scale = 1.0;
    std::vector<double> centers(n);
    for (int j = 0; j < n; ++j) {
        scale *= to_double(A.source[j].hi - A.source[j].lo);
        centers[j] = to_double(A.source[j].lo + A.source[j].hi) / 2.0;
    }
    std::vector<double> sorted_c = centers;
    std::sort(sorted_c.begin(), sorted_c.end());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) scale *= sorted_c[j] - sorted_c[i];

    double dv = A.det();
    bool anomaly = std::abs(dv) < 1e-14 * std::abs(scale);

    auto image_norm = [&](const std::vector<double>& v) {
        double s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += A.columns[j][i] * v[j];
            s2 += row * row;
        }
        return std::sqrt(s2);
    };

    double min_norm = std::numeric_limits<double>::infinity();
    std::int64_t tested = 0;
    std::vector<double> v(n);
    for (int mask = 0; mask < (1 << n); ++mask) {
        for (int j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? 1.0 : -1.0;
        min_norm = std::min(min_norm, image_norm(v));
        ++tested;
    }
    for (std::int64_t k = 0; k < random_vectors; ++k) {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        for (int j = 0; j < n; ++j) v[j] = rng.uniform(-double(n), double(n));
        double sgn = rng.next_double() < 0.5 ? -1.0 : 1.0;
        v[j0] = sgn * rng.uniform(1.0, double(n));  // |v_{j0}| >= 1
        min_norm = std::min(min_norm, image_norm(v));
        ++tested;
    }

    double threshold = std::pow(R, -double(n));
    (void)curve;
    return {min_norm, min_norm >= threshold, anomaly, dv, scale, tested};
}

}  // namespace vindec
