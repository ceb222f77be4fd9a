#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vindec/numeric.hpp"

namespace vindec {

/// det of a small dense matrix (column-major columns), partial-pivoted elimination.
double det_lu(std::vector<std::vector<double>> columns);

enum class CurveKind { NormalizedMoment, StandardMoment, Polynomial };

std::string curve_kind_name(CurveKind k);

// A C^n curve on [0,1], stored as one exact-rational coefficient row per
// component. The two moment kinds are just fixed coefficient tables, so every
// derivative is an exact polynomial differentiation.
class Curve {
public:
    /// Moment curves of dimension n. Polynomial kind takes one coefficient row
    /// per component, row i holding the coefficients of gamma_i by ascending power.
    static Curve normalized_moment(int n);
    static Curve standard_moment(int n);
    static Curve polynomial(std::vector<std::vector<Rational>> coeff_rows);

    int dimension() const { return n_; }
    CurveKind kind() const { return kind_; }
    const std::vector<std::vector<Rational>>& coefficients() const { return coeffs_; }

    /// gamma^(order)(t), order in [0, n], t in [0,1]. Throws std::domain_error otherwise.
    std::vector<double> eval_derivative(int order, double t) const;

    /// All derivative orders 0..n at once (order-major), for hot loops.
    void eval_all_derivatives(double t, std::vector<std::vector<double>>& out) const;

    /// Velocity gamma'(t) without the domain checks, for inner loops.
    void velocity(double t, double* out) const;

    /// Extended-precision velocity, for determinant work near coincident nodes.
    void velocity_ld(double t, long double* out) const;

    /// max |gamma'| over [0,1], sampled; used for oscillation budgets.
    double max_speed() const;

    /// det(gamma', gamma'', ..., gamma^(n)) != 0 at `samples` equispaced points.
    bool is_nondegenerate(int samples = 1000) const;

private:
    Curve(CurveKind kind, int n, std::vector<std::vector<Rational>> coeffs);
    void build_derivative_tables();

    CurveKind kind_;
    int n_;
    std::vector<std::vector<Rational>> coeffs_;
    // deriv_[order][component][power] as doubles (coefficients differentiated exactly
    // in rational arithmetic first).
    std::vector<std::vector<std::vector<double>>> deriv_;
};

/// det(gamma'(u_1), ..., gamma'(u_n)) for strictly increasing u in (0,1).
double first_derivative_det(const Curve& curve, const std::vector<double>& u);

/// Vandermonde product prod_{i<j} (u_j - u_i).
double vandermonde_product(const std::vector<double>& u);

struct DetRatioScan {
    double ratio_min, ratio_max;
    std::vector<double> argmin, argmax;
    std::int64_t samples, skipped;
    std::uint64_t seed;
};

// Empirical extremes of |det(gamma'(u_1..u_n))| / prod (u_j - u_i) over random
// increasing tuples with span <= delta. Per-sample seeded streams and
// associative min/max merging keep the result independent of thread count.
DetRatioScan det_ratio_scan(const Curve& curve, double delta, std::int64_t samples,
                            std::uint64_t seed, int workers = 0);

/// Serial reference for det_ratio_scan; must produce identical output.
DetRatioScan det_ratio_scan_serial(const Curve& curve, double delta, std::int64_t samples,
                                   std::uint64_t seed);

}  // namespace vindec
