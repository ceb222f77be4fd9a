#include "vindec/extension.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vindec/errors.hpp"
#include "vindec/quadrature.hpp"
#include "vindec/reduce.hpp"
#include "vindec/rng.hpp"

namespace vindec {

BallWeight::BallWeight(std::vector<double> x0, double r, double E)
    : center(std::move(x0)), radius(r), exponent(E) {
    if (!(radius > 0)) throw std::domain_error("BallWeight: radius must be > 0");
    if (!(exponent > static_cast<double>(center.size())))
        throw std::domain_error("BallWeight: exponent must exceed the dimension");
}

double BallWeight::value(const std::vector<double>& x) const {
    double d2 = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) d2 += (x[i] - center[i]) * (x[i] - center[i]);
    return std::pow(1.0 + std::sqrt(d2) / radius, -exponent);
}

double BallWeight::value2(double x1, double x2) const {
    double dx = x1 - center[0], dy = x2 - center[1];
    return std::pow(1.0 + std::sqrt(dx * dx + dy * dy) / radius, -exponent);
}

double BallWeight::tail_mass_outside(double rho) const {
    // 2 pi r^2 int_{v0}^inf (v - 1) v^{-E} dv with v = 1 + u, u = |x - x0|/r
    const double E = exponent;
    double v0 = 1.0 + rho / radius;
    double tail = std::pow(v0, 2.0 - E) / (E - 2.0) - std::pow(v0, 1.0 - E) / (E - 1.0);
    return 2.0 * 3.14159265358979323846 * radius * radius * tail;
}

DensityFunction::DensityFunction(std::vector<cplx> s) : samples(std::move(s)) {
    if (samples.size() < 2) throw std::domain_error("DensityFunction: need >= 2 samples");
    for (const auto& z : samples)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("DensityFunction: samples must be finite");
}

DensityFunction DensityFunction::constant(cplx value, int gridsize) {
    return DensityFunction(std::vector<cplx>(static_cast<std::size_t>(gridsize), value));
}

DensityFunction DensityFunction::random(int gridsize, std::uint64_t seed) {
    std::vector<cplx> s(static_cast<std::size_t>(gridsize));
    for (int i = 0; i < gridsize; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        s[static_cast<std::size_t>(i)] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    return DensityFunction(std::move(s));
}

cplx DensityFunction::eval(double t) const {
    const int K = gridsize() - 1;
    double u = std::clamp(t, 0.0, 1.0) * K;
    int i = std::min(static_cast<int>(u), K - 1);
    double frac = u - i;
    return samples[static_cast<std::size_t>(i)] * (1.0 - frac) +
           samples[static_cast<std::size_t>(i + 1)] * frac;
}

double DensityFunction::max_abs() const {
    double m = 0.0;
    for (const auto& z : samples) m = std::max(m, std::abs(z));
    return m;
}

namespace {

// Panel edges inside [a, b]: density grid points plus enough subdivision to
// resolve the worst-case phase.
std::vector<double> panel_edges(const DensityFunction& f, double a, double b, double cycles_per_unit,
                                const QuadConfig& cfg, double* total_panels) {
    std::vector<double> edges{a};
    const int K = f.gridsize() - 1;
    for (int i = 1; i < K; ++i) {
        double t = static_cast<double>(i) / K;
        if (t > a && t < b) edges.push_back(t);
    }
    edges.push_back(b);
    std::vector<double> out;
    double count = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        double want = cfg.panels_per_cycle * cycles_per_unit * (hi - lo);
        int panels = std::max(1, static_cast<int>(std::ceil(want)));
        count += panels;
        for (int p = 0; p < panels; ++p) out.push_back(lo + (hi - lo) * p / panels);
    }
    out.push_back(b);
    if (total_panels) *total_panels = count;
    return out;
}

cplx eval_on_edges(const Curve& curve, const DensityFunction& f, const std::vector<double>& x,
                   const std::vector<double>& edges, int split, int k) {
    const GaussRule& g = gauss_rule(k);
    const int n = curve.dimension();
    auto gamma0 = [&](double t) { return curve.eval_derivative(0, t); };
    cplx acc(0.0, 0.0);
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        double lo = edges[e], len = (edges[e + 1] - edges[e]) / split;
        for (int s = 0; s < split; ++s) {
            double pa = lo + s * len;
            double mid = pa + 0.5 * len, half = 0.5 * len;
            for (int q = 0; q < k; ++q) {
                double t = mid + half * g.nodes[q];
                auto gv = gamma0(t);
                double phase = 0.0;
                for (int i = 0; i < n; ++i) phase += x[static_cast<std::size_t>(i)] * gv[static_cast<std::size_t>(i)];
                phase *= 2.0 * 3.14159265358979323846;
                acc += g.weights[q] * half * f.eval(t) * cplx(std::cos(phase), std::sin(phase));
            }
        }
    }
    return acc;
}

}  // namespace

ExtensionValue extension_eval(const Curve& curve, const DensityFunction& f, double a, double b,
                              const std::vector<double>& x, const QuadConfig& cfg) {
    if (!(a >= 0.0 && b <= 1.0 && a <= b))
        throw std::domain_error("extension_eval: interval must sit inside [0,1]");
    if (static_cast<int>(x.size()) != curve.dimension())
        throw std::domain_error("extension_eval: point dimension mismatch");
    double xn = 0.0;
    for (double xi : x) xn += xi * xi;
    xn = std::sqrt(xn);
    double cycles_per_unit = xn * curve.max_speed();
    double want = cfg.panels_per_cycle * cycles_per_unit * (b - a);
    if (want > cfg.max_panels)
        throw budget_error("extension_eval: phase variation exceeds quadrature budget", want);

    double total = 0;
    auto edges = panel_edges(f, a, b, cycles_per_unit, cfg, &total);
    cplx coarse = eval_on_edges(curve, f, x, edges, 1, cfg.gauss_order);
    cplx fine = eval_on_edges(curve, f, x, edges, 2, cfg.gauss_order);
    double err = std::abs(fine - coarse);
    double scale = std::abs(fine);
    bool warn = err > 1e-6 * (scale + 1e-12);
    return {fine, err, warn};
}

namespace {

struct Axis {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // trapezoid-style cell weights
};

// Symmetric graded axis: uniform core plus geometric tail out to xmax.
Axis make_axis(double center, double radius, const ProbeConfig& cfg) {
    std::vector<double> pos;  // offsets >= 0
    double core = cfg.core_mult * radius;
    int half_core = cfg.core_points / 2;
    for (int i = 0; i <= half_core; ++i) pos.push_back(core * i / half_core);
    double xmax = cfg.xmax_mult * radius;
    if (cfg.tail_points > 0 && xmax > core) {
        double ratio = std::pow(xmax / core, 1.0 / cfg.tail_points);
        double v = core;
        for (int i = 1; i <= cfg.tail_points; ++i) pos.push_back(v *= ratio);
    }
    Axis ax;
    for (std::size_t i = pos.size(); i-- > 1;) ax.nodes.push_back(center - pos[i]);
    for (std::size_t i = 0; i < pos.size(); ++i) ax.nodes.push_back(center + pos[i]);
    const std::size_t N = ax.nodes.size();
    ax.weights.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        double lo = i == 0 ? ax.nodes[0] : 0.5 * (ax.nodes[i - 1] + ax.nodes[i]);
        double hi = i + 1 == N ? ax.nodes[N - 1] : 0.5 * (ax.nodes[i] + ax.nodes[i + 1]);
        ax.weights[i] = hi - lo;
    }
    return ax;
}

struct NodeSet {
    std::vector<double> t, w;  // quadrature nodes/weights on [lo, hi]
};

NodeSet interval_nodes(const DensityFunction& f, double lo, double hi, double cycles_per_unit,
                       double panels_per_cycle, int k) {
    QuadConfig qc;
    qc.panels_per_cycle = panels_per_cycle;
    auto edges = panel_edges(f, lo, hi, cycles_per_unit, qc, nullptr);
    const GaussRule& g = gauss_rule(k);
    NodeSet ns;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        double mid = 0.5 * (edges[e] + edges[e + 1]), half = 0.5 * (edges[e + 1] - edges[e]);
        for (int q = 0; q < k; ++q) {
            ns.t.push_back(mid + half * g.nodes[q]);
            ns.w.push_back(half * g.weights[q]);
        }
    }
    return ns;
}

// E on the tensor grid for one node set: out[a * Nb + b] = sum_q c_q
// exp(2 pi i (x1_a g1_q + x2_b g2_q)). Row-parallel; per-point sums run over q
// in a fixed order, so any worker count gives identical bits.
void accumulate_grid(const Curve& curve, const DensityFunction& f, const NodeSet& ns,
                     const Axis& ax1, const Axis& ax2, int workers, std::vector<cplx>& out) {
    const std::size_t Na = ax1.nodes.size(), Nb = ax2.nodes.size(), nq = ns.t.size();
    const double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<cplx> coef(nq);
    std::vector<double> g1(nq), g2(nq);
    std::vector<double> vel(2);
    for (std::size_t q = 0; q < nq; ++q) {
        auto gv = curve.eval_derivative(0, ns.t[q]);
        g1[q] = gv[0];
        g2[q] = gv[1];
        coef[q] = ns.w[q] * f.eval(ns.t[q]);
    }
    (void)vel;
    // Q transposed: Qt[b][q]
    std::vector<cplx> Qt(Nb * nq);
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::size_t b = 0; b < Nb; ++b)
        for (std::size_t q = 0; q < nq; ++q) {
            double ph = two_pi * ax2.nodes[b] * g2[q];
            Qt[b * nq + q] = cplx(std::cos(ph), std::sin(ph));
        }
    out.assign(Na * Nb, cplx(0.0, 0.0));
#pragma omp parallel num_threads(workers)
    {
        std::vector<cplx> cp(nq);
#pragma omp for schedule(static)
        for (std::size_t a = 0; a < Na; ++a) {
            for (std::size_t q = 0; q < nq; ++q) {
                double ph = two_pi * ax1.nodes[a] * g1[q];
                cp[q] = coef[q] * cplx(std::cos(ph), std::sin(ph));
            }
            cplx* row = out.data() + a * Nb;
            for (std::size_t b = 0; b < Nb; ++b) {
                const cplx* qrow = Qt.data() + b * nq;
                double re = 0.0, im = 0.0;
                for (std::size_t q = 0; q < nq; ++q) {
                    re += cp[q].real() * qrow[q].real() - cp[q].imag() * qrow[q].imag();
                    im += cp[q].real() * qrow[q].imag() + cp[q].imag() * qrow[q].real();
                }
                row[b] = cplx(re, im);
            }
        }
    }
}

}  // namespace

ProbeReport run_probe(const Curve& curve, const DensityFunction& f, int R,
                      const ProbeConfig& cfg) {
    if (curve.dimension() != 2)
        throw config_error("run_probe: desk-scale probes support n = 2 only");
    if (R < 2) throw std::domain_error("run_probe: R must be >= 2");
    const int n = 2;
    double radius = cfg.ball_radius > 0 ? cfg.ball_radius : std::pow(static_cast<double>(R), n);
    if (radius < std::pow(static_cast<double>(R), n) - 1e-9)
        throw std::domain_error("run_probe: ball radius must be >= R^n");
    BallWeight ball({0.0, 0.0}, radius, cfg.ball_exponent);

    int workers = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
    Axis ax1 = make_axis(0.0, radius, cfg);
    Axis ax2 = make_axis(0.0, radius, cfg);
    const std::size_t Na = ax1.nodes.size(), Nb = ax2.nodes.size();

    double xmax = cfg.xmax_mult * radius * std::sqrt(2.0);
    double cycles_per_unit = xmax * curve.max_speed();

    // per-interval fields, plus the full field from the identical node union
    std::vector<std::vector<cplx>> EI(static_cast<std::size_t>(R));
    NodeSet all_nodes;
    for (int j = 0; j < R; ++j) {
        double lo = static_cast<double>(j) / R, hi = static_cast<double>(j + 1) / R;
        NodeSet ns = interval_nodes(f, lo, hi, cycles_per_unit, cfg.panels_per_cycle,
                                    cfg.gauss_order);
        accumulate_grid(curve, f, ns, ax1, ax2, workers, EI[static_cast<std::size_t>(j)]);
        all_nodes.t.insert(all_nodes.t.end(), ns.t.begin(), ns.t.end());
        all_nodes.w.insert(all_nodes.w.end(), ns.w.begin(), ns.w.end());
    }
    std::vector<cplx> Efull;
    accumulate_grid(curve, f, all_nodes, ax1, ax2, workers, Efull);

    const std::size_t P = Na * Nb;
    std::vector<double> t_l1(P), t_l2(P), t_s1(P), t_s2(P);
    std::vector<std::vector<double>> t_d2(static_cast<std::size_t>(R), std::vector<double>(P));
    std::vector<std::vector<double>> t_d4(static_cast<std::size_t>(R), std::vector<double>(P));
    // additivity drift measured against the field scale (pointwise relative is
    // meaningless at zeros of an oscillatory field)
    double add_diff = 0.0, field_max = 0.0;

#pragma omp parallel for schedule(static) reduction(max : add_diff, field_max) num_threads(workers)
    for (std::size_t a = 0; a < Na; ++a) {
        for (std::size_t b = 0; b < Nb; ++b) {
            std::size_t idx = a * Nb + b;
            double w = ax1.weights[a] * ax2.weights[b] * ball.value2(ax1.nodes[a], ax2.nodes[b]);
            double S2 = 0.0;
            cplx sum_int(0.0, 0.0);
            for (int j = 0; j < R; ++j) {
                cplx e = EI[static_cast<std::size_t>(j)][idx];
                double m2 = std::norm(e);
                S2 += m2;
                sum_int += e;
                t_d2[static_cast<std::size_t>(j)][idx] = w * m2;
                t_d4[static_cast<std::size_t>(j)][idx] = w * m2 * m2;
            }
            double F2 = std::norm(Efull[idx]);
            t_l1[idx] = w * F2;
            t_l2[idx] = w * F2 * F2;
            t_s1[idx] = w * S2;
            t_s2[idx] = w * S2 * S2;
            add_diff = std::max(add_diff, std::abs(sum_int - Efull[idx]));
            field_max = std::max(field_max, std::abs(Efull[idx]));
        }
    }
    double add_err = add_diff / (field_max + 1e-300);

    ProbeReport rep;
    rep.R = R;
    rep.ball_radius = radius;
    rep.ball_exponent = cfg.ball_exponent;
    rep.grid_axis_points = static_cast<int>(Na);
    rep.lhs_m1 = std::sqrt(pairwise_sum(t_l1));
    rep.lhs_m2 = std::pow(pairwise_sum(t_l2), 0.25);
    rep.sq_rhs_m1 = std::sqrt(pairwise_sum(t_s1));
    rep.sq_rhs_m2 = std::pow(pairwise_sum(t_s2), 0.25);
    double d2 = 0.0, d4 = 0.0;
    for (int j = 0; j < R; ++j) {
        d2 += pairwise_sum(t_d2[static_cast<std::size_t>(j)]);  // ||E_I||_2^2 summed
        d4 += std::sqrt(pairwise_sum(t_d4[static_cast<std::size_t>(j)]));  // ||E_I||_4^2 summed
    }
    rep.dec_rhs_p2 = std::sqrt(d2);
    rep.dec_rhs_p4 = std::sqrt(d4);
    rep.tail_weight_mass = ball.tail_mass_outside(cfg.xmax_mult * radius);
    rep.additivity_max_rel_err = add_err;

    if (rep.sq_rhs_m1 == 0.0 && rep.lhs_m1 > 0.0)
        throw invariant_violation("run_probe: zero square function with nonzero sum (quadrature failure)");
    return rep;
}

RatioRecord square_function_ratio(const Curve& curve, const DensityFunction& f, int R, int m,
                                  const ProbeConfig& cfg) {
    if (m < 1 || m > 2) throw std::domain_error("square_function_ratio: m must be 1 or 2 at n=2");
    ProbeReport rep = run_probe(curve, f, R, cfg);
    double lhs = m == 1 ? rep.lhs_m1 : rep.lhs_m2;
    double rhs = m == 1 ? rep.sq_rhs_m1 : rep.sq_rhs_m2;
    return {lhs, rhs, rhs > 0 ? lhs / rhs : std::numeric_limits<double>::infinity(),
            rep.tail_weight_mass};
}

RatioRecord decoupling_ratio(const Curve& curve, const DensityFunction& f, int R, int p,
                             const ProbeConfig& cfg) {
    if (p != 2 && p != 4) throw std::domain_error("decoupling_ratio: p must be 2 or 4 at n=2");
    ProbeReport rep = run_probe(curve, f, R, cfg);
    double lhs = p == 2 ? rep.lhs_m1 : rep.lhs_m2;
    double sq_rhs = p == 2 ? rep.sq_rhs_m1 : rep.sq_rhs_m2;
    double rhs = p == 2 ? rep.dec_rhs_p2 : rep.dec_rhs_p4;
    if (sq_rhs > rhs * (1.0 + 1e-9))
        throw invariant_violation("decoupling_ratio: Minkowski ordering failed");
    return {lhs, rhs, rhs > 0 ? lhs / rhs : std::numeric_limits<double>::infinity(),
            rep.tail_weight_mass};
}

}  // namespace vindec
