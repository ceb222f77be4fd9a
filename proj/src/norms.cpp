#include "vindec/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vindec/reduce.hpp"

namespace vindec {

CoefficientVector::CoefficientVector(std::vector<cplx> v) : a(std::move(v)) {
    if (a.empty()) throw std::domain_error("CoefficientVector: N must be >= 1");
    for (const auto& z : a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("CoefficientVector: entries must be finite");
}

CoefficientVector CoefficientVector::indicator(i64 N, const std::vector<i64>& S) {
    std::vector<cplx> v(static_cast<std::size_t>(N), cplx(0.0, 0.0));
    for (i64 j : S) {
        if (j < 1 || j > N) throw std::domain_error("indicator: index outside 1..N");
        v[static_cast<std::size_t>(j - 1)] = cplx(1.0, 0.0);
    }
    return CoefficientVector(std::move(v));
}

i64 distribution_function(const CoefficientVector& a, double s) {
    if (s < 0) throw std::domain_error("distribution_function: s must be >= 0");
    i64 count = 0;
    for (const auto& z : a.a)
        if (std::abs(z) > s) ++count;
    return count;
}

double lp_norm(const CoefficientVector& a, double p) {
    std::vector<double> terms(a.a.size());
    for (std::size_t j = 0; j < a.a.size(); ++j) terms[j] = std::pow(std::abs(a.a[j]), p);
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

double lorentz_p1_norm(const CoefficientVector& a, double p) {
    if (!(p > 1.0)) throw std::domain_error("lorentz_p1_norm: p must be > 1");
    std::vector<double> m(a.a.size());
    for (std::size_t j = 0; j < a.a.size(); ++j) m[j] = std::abs(a.a[j]);
    std::sort(m.begin(), m.end(), std::greater<>());
    CompensatedSum acc;
    for (std::size_t k = 0; k < m.size(); ++k) {
        double next = (k + 1 < m.size()) ? m[k + 1] : 0.0;
        acc.add(std::pow(static_cast<double>(k + 1), 1.0 / p) * (m[k] - next));
    }
    return acc.value();
}

Lemma32Check lemma32_check(const CoefficientVector& a, double p) {
    if (!(p > 1.0)) throw std::domain_error("lemma32_check: p must be > 1");
    double p_conj = p / (p - 1.0);
    double lhs = lorentz_p1_norm(a, p);
    double factor = 1.0 + std::pow(std::log(static_cast<double>(a.N())), 1.0 / p_conj) / p;
    double rhs = factor * lp_norm(a, p);
    return {lhs, rhs, lhs <= rhs + 1e-12 * rhs};
}

FourPartSplit four_part_split(const CoefficientVector& a) {
    FourPartSplit s;
    const std::size_t N = a.a.size();
    s.re_pos.assign(N, 0.0);
    s.re_neg.assign(N, 0.0);
    s.im_pos.assign(N, 0.0);
    s.im_neg.assign(N, 0.0);
    for (std::size_t j = 0; j < N; ++j) {
        double re = a.a[j].real(), im = a.a[j].imag();
        (re >= 0 ? s.re_pos : s.re_neg)[j] = std::abs(re);
        (im >= 0 ? s.im_pos : s.im_neg)[j] = std::abs(im);
    }
    return s;
}

DecouplingCheckConfig DecouplingCheckConfig::make(int s, double theta, double c) {
    if (s < 1) throw std::domain_error("DecouplingCheckConfig: s must be >= 1");
    if (!(theta >= s && theta < 2.0 * s))
        throw std::domain_error("DecouplingCheckConfig: theta must lie in [s, 2s)");
    if (!(c > 0)) throw std::domain_error("DecouplingCheckConfig: c must be > 0");
    DecouplingCheckConfig cfg;
    cfg.s = s;
    cfg.theta = theta;
    cfg.c = c;
    cfg.p = 2.0 * s / theta;
    cfg.p_conj = cfg.p / (cfg.p - 1.0);
    cfg.c_prime = std::pow(2.0, 1.0 / cfg.p) * std::pow(4.0, 1.0 / cfg.p_conj) *
                  std::pow(c, 1.0 / (2.0 * s));
    return cfg;
}

DecouplingCheck decoupling_check(const PhiMap& phi, const CoefficientVector& a,
                                 const DecouplingCheckConfig& cfg, const CountOptions& opts) {
    double moment = weighted_moment(phi, a.a, cfg.s, opts);
    double lhs = std::pow(moment, 1.0 / (2.0 * cfg.s));
    double factor = 1.0 + std::pow(std::log(static_cast<double>(a.N())), 1.0 / cfg.p_conj) / cfg.p;
    double rhs = cfg.c_prime * factor * lp_norm(a, cfg.p);
    bool holds = lhs <= rhs * (1.0 + 1e-9);
    return {lhs, rhs, rhs > 0 ? lhs / rhs : std::numeric_limits<double>::infinity(), holds};
}

}  // namespace vindec
