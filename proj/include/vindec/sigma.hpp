#pragma once

#include <functional>
#include <vector>

#include "vindec/curve.hpp"
#include "vindec/numeric.hpp"

namespace vindec {

/// Knots of the recursively defined simplex measure sigma_{t_1..t_m}.
struct SigmaSpec {
    std::vector<double> knots;  // strictly increasing

    explicit SigmaSpec(std::vector<double> t);
    int order() const { return static_cast<int>(knots.size()); }
};

enum class SigmaMode { ClosedForm, RecursiveQuadrature };

/// Normalization constant c_m = (prod_{j=1}^m (j-1)!)^{-1}, exact.
Rational sigma_mass_constant(int m);

// Mass of sigma_{t_1..t_m}. Closed form: c_m * prod_{i<j} (t_j - t_i).
// Recursive mode integrates the defining nested integral; supported for m <= 4.
double sigma_mass(const SigmaSpec& spec, SigmaMode mode, int panels_per_dim = 1,
                  int gauss_order = 10);

// Integral of phi against sigma_{t_1..t_m} by recursion on the definition:
// level m integrates over the box [t_1,t_2] x ... x [t_{m-1},t_m] the
// sigma-integral of phi(t_1, .) at order m-1.
double sigma_integral(const std::function<double(const std::vector<double>&)>& phi,
                      const std::vector<double>& knots, int panels_per_dim = 1,
                      int gauss_order = 10);

struct MultilinearCheck {
    double lhs, rhs, residual;
};

// Checks the replacement of point evaluations by derivative averages:
// Lambda(h(t_1),...,h(t_m)) against the sigma-integral of
// Lambda(h(u_1), h'(u_2), ..., h^(m-1)(u_m)), where h is gamma' projected to
// the first m coordinates and Lambda is the m x m determinant.
MultilinearCheck multilinear_identity_check(const Curve& curve, const std::vector<double>& t,
                                            int m, double rel_tol = 1e-10);

}  // namespace vindec
