#include "vindec/sigma.hpp"

#include <cmath>
#include <stdexcept>

#include "vindec/errors.hpp"
#include "vindec/quadrature.hpp"

namespace vindec {

SigmaSpec::SigmaSpec(std::vector<double> t) : knots(std::move(t)) {
    if (knots.empty()) throw std::domain_error("SigmaSpec: need m >= 1 knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i] < knots[i + 1]))
            throw std::domain_error("SigmaSpec: knots must be strictly increasing");
}

Rational sigma_mass_constant(int m) {
    if (m < 1) throw std::domain_error("sigma_mass_constant: m >= 1 required");
    BigInt prod = 1;
    for (int j = 1; j <= m; ++j) prod *= factorial(static_cast<unsigned>(j - 1));
    return Rational(BigInt(1), prod);
}

namespace {

// Recursive evaluation of the nested defining integral. `point` accumulates
// the first coordinates (t_1 of each level).
double sigma_integral_rec(const std::function<double(const std::vector<double>&)>& phi,
                          const std::vector<double>& knots, std::vector<double>& point,
                          int panels, int k) {
    const int m = static_cast<int>(knots.size());
    point.push_back(knots[0]);
    double result;
    if (m == 1) {
        result = phi(point);
    } else {
        const GaussRule& g = gauss_rule(k);
        // Tensor quadrature over s_2 in [t_1,t_2], ..., s_m in [t_{m-1},t_m];
        // odometer over (m-1) dimensions x panels x nodes.
        const int dims = m - 1;
        std::vector<int> idx(dims, 0);
        const int per_dim = panels * k;
        std::vector<double> sub(dims);
        double acc = 0.0;
        while (true) {
            double w = 1.0;
            for (int d = 0; d < dims; ++d) {
                double a = knots[d], b = knots[d + 1];
                double h = (b - a) / panels;
                int p = idx[d] / k, q = idx[d] % k;
                double mid = a + (p + 0.5) * h, half = 0.5 * h;
                sub[d] = mid + half * g.nodes[q];
                w *= half * g.weights[q];
            }
            acc += w * sigma_integral_rec(phi, sub, point, panels, k);
            int d = 0;
            for (; d < dims; ++d) {
                if (++idx[d] < per_dim) break;
                idx[d] = 0;
            }
            if (d == dims) break;
        }
        result = acc;
    }
    point.pop_back();
    return result;
}

}  // namespace

double sigma_integral(const std::function<double(const std::vector<double>&)>& phi,
                      const std::vector<double>& knots, int panels_per_dim, int gauss_order) {
    std::vector<double> point;
    point.reserve(knots.size());
    return sigma_integral_rec(phi, knots, point, panels_per_dim, gauss_order);
}

double sigma_mass(const SigmaSpec& spec, SigmaMode mode, int panels_per_dim, int gauss_order) {
    const int m = spec.order();
    if (mode == SigmaMode::ClosedForm) {
        double prod = 1.0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) prod *= spec.knots[j] - spec.knots[i];
        return to_double(sigma_mass_constant(m)) * prod;
    }
    if (m > 4)
        throw config_error("sigma_mass: recursive-quadrature mode supported for m <= 4 only");
    auto one = [](const std::vector<double>&) { return 1.0; };
    return sigma_integral(one, spec.knots, panels_per_dim, gauss_order);
}

MultilinearCheck multilinear_identity_check(const Curve& curve, const std::vector<double>& t,
                                            int m, double rel_tol) {
    const int n = curve.dimension();
    if (m < 1 || m > 3 || m > n)
        throw std::domain_error("multilinear_identity_check: need 1 <= m <= min(n,3)");
    if (static_cast<int>(t.size()) != m)
        throw std::domain_error("multilinear_identity_check: knot count != m");
    for (int i = 0; i + 1 < m; ++i)
        if (!(t[i] < t[i + 1]))
            throw std::domain_error("multilinear_identity_check: knots must increase");

    // h = gamma' restricted to the first m coordinates; h^(k) = gamma^(k+1).
    auto h_deriv = [&](int order, double u, std::vector<double>& out) {
        auto full = curve.eval_derivative(order + 1, u);
        out.assign(full.begin(), full.begin() + m);
    };

    std::vector<std::vector<double>> cols(m, std::vector<double>(m));
    for (int j = 0; j < m; ++j) h_deriv(0, t[j], cols[j]);
    double lhs = det_lu(cols);

    auto integrand = [&](const std::vector<double>& u) {
        std::vector<std::vector<double>> c(m, std::vector<double>(m));
        for (int j = 0; j < m; ++j) h_deriv(j, u[j], c[j]);
        return det_lu(std::move(c));
    };

    double prev = sigma_integral(integrand, t, 1);
    double rhs = prev;
    bool converged = (m == 1);
    for (int panels = 2; panels <= 16 && !converged; panels *= 2) {
        rhs = sigma_integral(integrand, t, panels);
        if (std::abs(rhs - prev) <= rel_tol * std::abs(rhs) + 1e-300) converged = true;
        prev = rhs;
    }
    if (!converged)
        throw convergence_error("multilinear_identity_check: quadrature did not converge", rhs);
    double residual = std::abs(lhs - rhs) / (std::abs(lhs) + 1e-300);
    return {lhs, rhs, residual};
}

}  // namespace vindec
