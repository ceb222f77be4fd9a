#include "vindec/intervals.hpp"

#include <algorithm>
#include <stdexcept>

#include "vindec/errors.hpp"

namespace vindec {

int StepFunction::value_at(const Rational& t) const {
    if (breaks.empty()) return 0;
    // last break b_k <= t, value on [b_k, b_{k+1})
    auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
    if (it == breaks.begin()) return 0;
    std::size_t idx = static_cast<std::size_t>(it - breaks.begin()) - 1;
    if (idx >= values.size()) return 0;  // t >= last break
    return values[idx];
}

int StepFunction::max_abs() const {
    int m = 0;
    for (int v : values) m = std::max(m, std::abs(v));
    return m;
}

void StepFunction::canonicalize() {
    // trim zero pieces at the ends, merge equal neighbours
    std::vector<Rational> nb;
    std::vector<int> nv;
    std::size_t lo = 0, hi = values.size();
    while (lo < hi && values[lo] == 0) ++lo;
    while (hi > lo && values[hi - 1] == 0) --hi;
    for (std::size_t i = lo; i < hi; ++i) {
        if (!nv.empty() && nv.back() == values[i]) {
            nb.back() = breaks[i + 1];
            continue;
        }
        if (nv.empty()) nb.push_back(breaks[i]);
        nv.push_back(values[i]);
        nb.push_back(breaks[i + 1]);
    }
    if (nv.empty()) {
        breaks.clear();
        values.clear();
        return;
    }
    breaks = std::move(nb);
    values = std::move(nv);
}

SignedIntervalFamily::SignedIntervalFamily(std::vector<std::pair<Rational, Rational>> p,
                                           std::optional<DissectionMeta> m)
    : pairs(std::move(p)), meta(std::move(m)) {
    for (const auto& [s, t] : pairs) {
        if (s < 0 || s > 1 || t < 0 || t > 1)
            throw std::domain_error("SignedIntervalFamily: endpoints must lie in [0,1]");
    }
}

static int chi_signed(const Rational& a, const Rational& b, const Rational& t) {
    if (a <= t && t < b) return 1;
    if (b <= t && t < a) return -1;
    return 0;
}

StepFunction build_xi(const SignedIntervalFamily& family) {
    std::vector<Rational> pts;
    for (const auto& [s, t] : family.pairs) {
        pts.push_back(s);
        pts.push_back(t);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    StepFunction xi;
    if (pts.size() < 2) return xi;
    xi.breaks = pts;
    xi.values.resize(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        int v = 0;  // right continuity: value on [b_i, b_{i+1}) is the value at b_i
        for (const auto& [s, t] : family.pairs) v += chi_signed(s, t, pts[i]);
        xi.values[i] = v;
    }
    xi.canonicalize();
    if (xi.max_abs() > family.n())
        throw invariant_violation("build_xi: |Xi| exceeded n");
    return xi;
}

Decomposition decompose_support(const StepFunction& xi, int n,
                                std::optional<DissectionMeta> meta) {
    Decomposition d;
    d.meta = std::move(meta);
    std::size_t i = 0;
    while (i < xi.values.size()) {
        if (xi.values[i] == 0) {
            ++i;
            continue;
        }
        int sign = xi.values[i] > 0 ? 1 : -1;
        std::size_t j = i;
        while (j < xi.values.size() && xi.values[j] != 0 &&
               (xi.values[j] > 0 ? 1 : -1) == sign)
            ++j;
        d.pieces.push_back({xi.breaks[i], xi.breaks[j], sign});
        i = j;
    }
    if (d.size() > n)
        throw invariant_violation("decompose_support: sign-constant component count exceeded n");
    return d;
}

Decomposition pad_to_n(const Decomposition& d, int n, double R, double c0) {
    if (d.size() > n) throw std::domain_error("pad_to_n: decomposition already larger than n");
    if (d.size() == 0) {
        if (d.meta && !d.meta->tuples_permutation)
            throw invariant_violation("pad_to_n: empty support for a non-permutation family");
        throw std::domain_error("pad_to_n: cannot pad an empty support");
    }
    Decomposition out = d;
    out.padded = d.size() < n;
    if (out.padded) {
        // split the longest piece (leftmost on ties) into equal closed parts
        int split_idx = 0;
        Rational best = d.pieces[0].hi - d.pieces[0].lo;
        for (int j = 1; j < d.size(); ++j) {
            Rational len = d.pieces[j].hi - d.pieces[j].lo;
            if (len > best) {
                best = len;
                split_idx = j;
            }
        }
        int parts = n - d.size() + 1;
        std::vector<SignComponent> pieces;
        for (int j = 0; j < d.size(); ++j) {
            if (j != split_idx) {
                pieces.push_back(d.pieces[j]);
                continue;
            }
            const auto& p = d.pieces[j];
            Rational step = (p.hi - p.lo) / parts;
            if (step <= 0) throw std::domain_error("pad_to_n: cannot split a zero-length piece");
            for (int q = 0; q < parts; ++q)
                pieces.push_back({p.lo + step * q, p.lo + step * (q + 1), p.sign});
        }
        out.pieces = std::move(pieces);
    }
    std::sort(out.pieces.begin(), out.pieces.end(),
              [](const SignComponent& a, const SignComponent& b) {
                  return a.lo + a.hi < b.lo + b.hi;
              });
    // locate a piece carrying the (c0/n) R^{-1} length guarantee
    out.j0 = -1;
    Rational need = rational_from_double(c0) / (rational_from_double(R) * n);
    for (int j = 0; j < out.size(); ++j) {
        if (out.pieces[j].hi - out.pieces[j].lo >= need) {
            out.j0 = j;
            break;
        }
    }
    if (out.meta && !out.meta->tuples_permutation && out.j0 < 0)
        throw invariant_violation("pad_to_n: no piece reaches the guaranteed length");
    return out;
}

bool reconstruction_holds(const StepFunction& xi, const Decomposition& d) {
    std::vector<Rational> grid = xi.breaks;
    for (const auto& p : d.pieces) {
        grid.push_back(p.lo);
        grid.push_back(p.hi);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        Rational mid = (grid[i] + grid[i + 1]) / 2;
        int want = xi.value_at(mid);
        int got = 0;
        for (const auto& p : d.pieces)
            if (p.lo < mid && mid < p.hi) got += p.sign * std::abs(xi.value_at(mid));
        if (got != want) return false;
    }
    return true;
}

ThetaPermutationResult theta_permutation_test(const std::vector<Rational>& x,
                                              const std::vector<Rational>& y) {
    if (x.size() != y.size())
        throw std::domain_error("theta_permutation_test: size mismatch");
    std::vector<Rational> pts;
    pts.reserve(2 * x.size());
    pts.insert(pts.end(), x.begin(), x.end());
    pts.insert(pts.end(), y.begin(), y.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto theta_at = [&](const Rational& t) {
        int v = 0;
        for (std::size_t i = 0; i < x.size(); ++i) v += chi_signed(x[i], y[i], t);
        return v;
    };

    bool zero = true;
    if (!pts.empty()) {
        // midpoints of consecutive distinct endpoints, one probe beyond each end
        if (theta_at(pts.front() - 1) != 0 || theta_at(pts.back() + 1) != 0) zero = false;
        for (std::size_t i = 0; zero && i < pts.size(); ++i) {
            Rational probe = (i + 1 < pts.size()) ? (pts[i] + pts[i + 1]) / 2 : pts[i];
            if (theta_at(probe) != 0 || theta_at(pts[i]) != 0) zero = false;
        }
    }

    std::vector<Rational> xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    bool perm = xs == ys;

    if (zero != perm)
        throw invariant_violation("theta_permutation_test: verdicts disagree");
    return {zero, perm};
}

}  // namespace vindec
