#include "vindec/curve.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vindec/rng.hpp"

namespace vindec {

// Partial-pivoted elimination in extended precision. Columns are first put
// into a canonical order, so column permutations of the same matrix run the
// identical arithmetic and a swap flips exactly the sign.
template <typename F>
static F det_lu_impl(std::vector<std::vector<F>> cols) {
    const int n = static_cast<int>(cols.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cols[static_cast<std::size_t>(a)] < cols[static_cast<std::size_t>(b)]; });
    int inversions = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (order[static_cast<std::size_t>(i)] > order[static_cast<std::size_t>(j)]) ++inversions;
    std::vector<std::vector<F>> sorted(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sorted[static_cast<std::size_t>(i)] = std::move(cols[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    cols = std::move(sorted);
    F det = inversions % 2 == 0 ? F(1) : F(-1);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(cols[k][i]) > std::abs(cols[k][piv])) piv = i;
        if (cols[k][piv] == F(0)) return F(0);
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(cols[j][k], cols[j][piv]);
            det = -det;
        }
        det *= cols[k][k];
        for (int i = k + 1; i < n; ++i) {
            F f = cols[k][i] / cols[k][k];
            for (int j = k + 1; j < n; ++j) cols[j][i] -= f * cols[j][k];
        }
    }
    return det;
}

double det_lu(std::vector<std::vector<double>> cols) {
    std::vector<std::vector<long double>> wide(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) wide[j].assign(cols[j].begin(), cols[j].end());
    return static_cast<double>(det_lu_impl(std::move(wide)));
}

std::string curve_kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::NormalizedMoment: return "normalized-moment";
        case CurveKind::StandardMoment: return "standard-moment";
        case CurveKind::Polynomial: return "polynomial";
    }
    return "?";
}

Curve::Curve(CurveKind kind, int n, std::vector<std::vector<Rational>> coeffs)
    : kind_(kind), n_(n), coeffs_(std::move(coeffs)) {
    if (n_ < 1 || n_ > 8) throw std::domain_error("Curve: dimension must be in [1,8]");
    build_derivative_tables();
}

Curve Curve::normalized_moment(int n) {
    std::vector<std::vector<Rational>> c(n);
    for (int i = 0; i < n; ++i) {
        c[i].assign(i + 2, Rational(0));
        c[i][i + 1] = Rational(1, i + 1);  // t^{i+1}/(i+1)
    }
    return Curve(CurveKind::NormalizedMoment, n, std::move(c));
}

Curve Curve::standard_moment(int n) {
    std::vector<std::vector<Rational>> c(n);
    for (int i = 0; i < n; ++i) {
        c[i].assign(i + 2, Rational(0));
        c[i][i + 1] = Rational(1);
    }
    return Curve(CurveKind::StandardMoment, n, std::move(c));
}

Curve Curve::polynomial(std::vector<std::vector<Rational>> coeff_rows) {
    int n = static_cast<int>(coeff_rows.size());
    return Curve(CurveKind::Polynomial, n, std::move(coeff_rows));
}

void Curve::build_derivative_tables() {
    deriv_.assign(n_ + 1, {});
    std::vector<std::vector<Rational>> cur = coeffs_;
    for (int order = 0; order <= n_; ++order) {
        auto& table = deriv_[order];
        table.resize(n_);
        for (int i = 0; i < n_; ++i) {
            table[i].resize(cur[i].size());
            for (std::size_t k = 0; k < cur[i].size(); ++k) table[i][k] = to_double(cur[i][k]);
        }
        // differentiate exactly for the next order
        for (int i = 0; i < n_; ++i) {
            std::vector<Rational> d;
            for (std::size_t k = 1; k < cur[i].size(); ++k) d.push_back(cur[i][k] * int(k));
            if (d.empty()) d.push_back(Rational(0));
            cur[i] = std::move(d);
        }
    }
}

static double eval_poly(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
    return v;
}

std::vector<double> Curve::eval_derivative(int order, double t) const {
    if (order < 0 || order > n_) throw std::domain_error("eval_derivative: order outside [0,n]");
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_derivative: t outside [0,1]");
    std::vector<double> out(n_);
    for (int i = 0; i < n_; ++i) out[i] = eval_poly(deriv_[order][i], t);
    return out;
}

void Curve::eval_all_derivatives(double t, std::vector<std::vector<double>>& out) const {
    out.resize(n_ + 1);
    for (int order = 0; order <= n_; ++order) {
        out[order].resize(n_);
        for (int i = 0; i < n_; ++i) out[order][i] = eval_poly(deriv_[order][i], t);
    }
}

void Curve::velocity(double t, double* out) const {
    for (int i = 0; i < n_; ++i) out[i] = eval_poly(deriv_[1][i], t);
}

void Curve::velocity_ld(double t, long double* out) const {
    for (int i = 0; i < n_; ++i) {
        const auto& c = deriv_[1][i];
        long double v = 0.0L;
        for (std::size_t k = c.size(); k-- > 0;) v = v * t + static_cast<long double>(c[k]);
        out[i] = v;
    }
}

double Curve::max_speed() const {
    double m = 0.0;
    std::vector<double> v(n_);
    for (int i = 0; i <= 1000; ++i) {
        velocity(i / 1000.0, v.data());
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += v[j] * v[j];
        m = std::max(m, std::sqrt(s));
    }
    return m;
}

bool Curve::is_nondegenerate(int samples) const {
    std::vector<std::vector<double>> ders;
    for (int i = 0; i < samples; ++i) {
        double t = samples == 1 ? 0.5 : double(i) / (samples - 1);
        eval_all_derivatives(t, ders);
        std::vector<std::vector<double>> cols(ders.begin() + 1, ders.end());
        if (det_lu(std::move(cols)) == 0.0) return false;
    }
    return true;
}

double first_derivative_det(const Curve& curve, const std::vector<double>& u) {
    const int n = curve.dimension();
    if (static_cast<int>(u.size()) != n)
        throw std::domain_error("first_derivative_det: tuple size != n");
    for (int i = 0; i + 1 < n; ++i)
        if (!(u[i] < u[i + 1])) throw std::domain_error("first_derivative_det: u not increasing");
    if (!(u.front() > 0.0 && u.back() < 1.0))
        throw std::domain_error("first_derivative_det: u outside (0,1)");
    std::vector<std::vector<long double>> cols(static_cast<std::size_t>(n),
                                               std::vector<long double>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j) curve.velocity_ld(u[static_cast<std::size_t>(j)], cols[static_cast<std::size_t>(j)].data());
    return static_cast<double>(det_lu_impl(std::move(cols)));
}

double vandermonde_product(const std::vector<double>& u) {
    double p = 1.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) p *= u[j] - u[i];
    return p;
}

namespace {

// One scan sample: an increasing tuple in (0,1) with span <= delta.
// Returns false if rounding collapsed two points.
bool draw_tuple(Rng& rng, int n, double delta, std::vector<double>& u) {
    u.resize(n);
    if (n == 1) {
        u[0] = rng.uniform(1e-9, 1.0 - 1e-9);
        return true;
    }
    for (int i = 0; i < n; ++i) u[i] = rng.next_double();
    std::sort(u.begin(), u.end());
    double span = u.back() - u.front();
    if (span <= 0.0) return false;
    double target = delta * std::max(rng.next_double(), 1e-6);
    double scale = std::min(1.0, target / span) * (1.0 - 2e-9);
    double base = rng.uniform(1e-9, 1.0 - 1e-9 - span * scale);
    double lo = u.front();
    for (int i = 0; i < n; ++i) u[i] = base + (u[i] - lo) * scale;
    for (int i = 0; i + 1 < n; ++i)
        if (!(u[i] < u[i + 1])) return false;
    return u.front() > 0.0 && u.back() < 1.0;
}

struct ScanPartial {
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = -std::numeric_limits<double>::infinity();
    std::int64_t imin = -1, imax = -1;
    std::vector<double> umin, umax;
    std::int64_t skipped = 0;

    void absorb(double ratio, std::int64_t idx, const std::vector<double>& u) {
        if (ratio < rmin || (ratio == rmin && idx < imin)) {
            rmin = ratio;
            imin = idx;
            umin = u;
        }
        if (ratio > rmax || (ratio == rmax && idx < imax)) {
            rmax = ratio;
            imax = idx;
            umax = u;
        }
    }
    void merge(const ScanPartial& o) {
        if (o.imin >= 0 && (o.rmin < rmin || (o.rmin == rmin && o.imin < imin))) {
            rmin = o.rmin;
            imin = o.imin;
            umin = o.umin;
        }
        if (o.imax >= 0 && (o.rmax > rmax || (o.rmax == rmax && o.imax < imax))) {
            rmax = o.rmax;
            imax = o.imax;
            umax = o.umax;
        }
        skipped += o.skipped;
    }
};

void scan_range(const Curve& curve, double delta, std::uint64_t seed, std::int64_t lo,
                std::int64_t hi, ScanPartial& part) {
    const int n = curve.dimension();
    std::vector<double> u;
    for (std::int64_t i = lo; i < hi; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        if (!draw_tuple(rng, n, delta, u)) {
            ++part.skipped;
            continue;
        }
        double denom = vandermonde_product(u);
        if (denom == 0.0) {
            ++part.skipped;
            continue;
        }
        std::vector<std::vector<long double>> cols(static_cast<std::size_t>(n),
                                                   std::vector<long double>(static_cast<std::size_t>(n)));
        for (int j = 0; j < n; ++j) curve.velocity_ld(u[static_cast<std::size_t>(j)], cols[static_cast<std::size_t>(j)].data());
        double ratio = std::abs(static_cast<double>(det_lu_impl(std::move(cols)))) / std::abs(denom);
        part.absorb(ratio, i, u);
    }
}

}  // namespace

DetRatioScan det_ratio_scan(const Curve& curve, double delta, std::int64_t samples,
                            std::uint64_t seed, int workers) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("det_ratio_scan: delta outside (0,1]");
    if (samples < 1) throw std::domain_error("det_ratio_scan: samples must be >= 1");
    if (!curve.is_nondegenerate()) throw std::domain_error("det_ratio_scan: curve is degenerate");
    int nw = workers > 0 ? workers : omp_get_max_threads();
    std::vector<ScanPartial> parts(nw);
#pragma omp parallel num_threads(nw)
    {
        int tid = omp_get_thread_num();
        std::int64_t chunk = (samples + nw - 1) / nw;
        std::int64_t lo = tid * chunk, hi = std::min<std::int64_t>(samples, lo + chunk);
        if (lo < hi) scan_range(curve, delta, seed, lo, hi, parts[tid]);
    }
    ScanPartial total;
    for (const auto& p : parts) total.merge(p);
    return {total.rmin, total.rmax, total.umin, total.umax, samples, total.skipped, seed};
}

DetRatioScan det_ratio_scan_serial(const Curve& curve, double delta, std::int64_t samples,
                                   std::uint64_t seed) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("det_ratio_scan: delta outside (0,1]");
    ScanPartial part;
    scan_range(curve, delta, seed, 0, samples, part);
    return {part.rmin, part.rmax, part.umin, part.umax, samples, part.skipped, seed};
}

}  // namespace vindec
