#include "vindec/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "vindec/errors.hpp"

namespace vindec {

static GaussRule compute_gauss(int k) {
    // Newton iteration on Legendre polynomials, symmetric nodes.
    GaussRule r;
    r.nodes.resize(k);
    r.weights.resize(k);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (k + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_k(x) and derivative by recurrence.
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.weights[i] = w;
        r.nodes[k - 1 - i] = x;
        r.weights[k - 1 - i] = w;
    }
    if (k % 2 == 1) r.nodes[k / 2] = 0.0;
    return r;
}

const GaussRule& gauss_rule(int k) {
    if (k < 2 || k > 32) throw std::domain_error("gauss_rule: order out of range [2,32]");
    static std::map<int, GaussRule> cache;
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, compute_gauss(k)).first;
    return it->second;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int k) {
    const GaussRule& g = gauss_rule(k);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h, half = 0.5 * h;
        double s = 0.0;
        for (int q = 0; q < k; ++q) s += g.weights[q] * f(mid + half * g.nodes[q]);
        total += s * half;
    }
    return total;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, int max_panels, int k) {
    double prev = integrate_panels(f, a, b, 1, k);
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        double cur = integrate_panels(f, a, b, panels, k);
        double diff = std::abs(cur - prev);
        if (diff <= rel_tol * std::abs(cur) + 1e-300) return {cur, diff, true};
        prev = cur;
    }
    return {prev, std::abs(prev), false};
}

}  // namespace vindec
