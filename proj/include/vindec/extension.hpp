#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "vindec/curve.hpp"
#include "vindec/numeric.hpp"

namespace vindec {

// Polynomially decaying weight (1 + |x - x0| / radius)^{-E}, E > n.
struct BallWeight {
    std::vector<double> center;
    double radius;
    double exponent;  // E

    BallWeight(std::vector<double> x0, double r, double E);
    double value(const std::vector<double>& x) const;
    double value2(double x1, double x2) const;  // 2-d fast path
    /// Weight mass outside |x - x0| > rho (2-d closed form).
    double tail_mass_outside(double rho) const;
};

// Complex density on [0,1]: samples on a uniform grid, piecewise linear in
// between.
struct DensityFunction {
    std::vector<cplx> samples;  // size >= 2, endpoints included

    explicit DensityFunction(std::vector<cplx> s);
    static DensityFunction constant(cplx value, int gridsize = 2);
    static DensityFunction random(int gridsize, std::uint64_t seed);

    cplx eval(double t) const;
    double max_abs() const;
    int gridsize() const { return static_cast<int>(samples.size()); }
};

struct QuadConfig {
    double panels_per_cycle = 8.0;  // panels per unit of |x| max|gamma'| |I|
    int min_panels = 4;
    int gauss_order = 10;
    double max_panels = 2e6;  // refusal threshold per integral
};

struct ExtensionValue {
    cplx value;
    double error_estimate;
    bool accuracy_warning;  // two refinement levels disagreed beyond 1e-6 relative
};

// E_I f(x) = int_I e^{2 pi i x . gamma(t)} f(t) dt by composite Gauss panels
// snapped to the density's sample grid, with one halving for the accuracy
// estimate. Refuses (budget_error) when the phase budget calls for more than
// max_panels panels.
ExtensionValue extension_eval(const Curve& curve, const DensityFunction& f, double a, double b,
                              const std::vector<double>& x, const QuadConfig& cfg = {});

struct ProbeConfig {
    double ball_radius = 0.0;   // 0: use R^n
    double ball_exponent = 3.0; // E = n + 1 at n = 2
    double core_mult = 2.0;     // core box half-width, in ball radii
    int core_points = 97;       // axis points across the core
    double xmax_mult = 4.0;     // domain budget, in ball radii
    int tail_points = 12;       // geometric axis points per side beyond the core
    double panels_per_cycle = 8.0;
    int gauss_order = 4;
    int workers = 0;
};

struct ProbeReport {
    int n = 2, R = 0;
    double ball_radius, ball_exponent;
    int grid_axis_points;
    double lhs_m1, sq_rhs_m1;   // L^2 norms
    double lhs_m2, sq_rhs_m2;   // L^4 norms
    double dec_rhs_p2, dec_rhs_p4;
    double tail_weight_mass;    // weight mass outside the truncated domain
    double additivity_max_rel_err;
};

// One desk-scale probe: evaluates E_I f for the full R^{-1} dissection and
// E_{[0,1]} f independently on a weighted tensor grid truncated at
// xmax_mult * radius, then all L^2 / L^4 norms in one pass. Norms accumulate
// by pairwise summation in a fixed tree, so reports are bit-stable.
ProbeReport run_probe(const Curve& curve, const DensityFunction& f, int R,
                      const ProbeConfig& cfg = {});

struct RatioRecord {
    double lhs, rhs, ratio;
    double tail_estimate;
};

/// lhs = ||E f||_{L^{2m}(w)}, rhs = ||(sum |E_I f|^2)^{1/2}||_{L^{2m}(w)}.
RatioRecord square_function_ratio(const Curve& curve, const DensityFunction& f, int R, int m,
                                  const ProbeConfig& cfg = {});

/// rhs = (sum_I ||E_I f||^2_{L^p(w)})^{1/2}; also asserts the Minkowski chain.
RatioRecord decoupling_ratio(const Curve& curve, const DensityFunction& f, int R, int p,
                             const ProbeConfig& cfg = {});

}  // namespace vindec
