#pragma once

#include <functional>
#include <vector>

namespace vindec {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// k-point Gauss-Legendre rule (2 <= k <= 32), computed once and cached.
const GaussRule& gauss_rule(int k);

/// Composite k-point Gauss over [a, b] split into `panels` equal panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int k = 10);

struct QuadratureResult {
    double value;
    double error_estimate;  // |last - previous refinement|
    bool converged;
};

// Dyadic panel refinement until two successive levels agree to rel_tol
// (with a small absolute floor). Integrands here are smooth, so this
// converges in a few doublings.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-10, int max_panels = 1 << 14, int k = 10);

}  // namespace vindec
