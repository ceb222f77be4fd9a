#include "vindec/pte.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "vindec/errors.hpp"

namespace vindec {

namespace {

std::vector<BigInt> power_sums(const std::vector<i64>& vals, int n) {
    std::vector<BigInt> p(static_cast<std::size_t>(n), BigInt(0));
    for (i64 v : vals) {
        BigInt acc = 1;
        for (int j = 0; j < n; ++j) {
            acc *= v;
            p[static_cast<std::size_t>(j)] += acc;
        }
    }
    return p;
}

}  // namespace

OffDiagonalSolution::OffDiagonalSolution(std::vector<i64> tuple, int n_, int s_)
    : x(std::move(tuple)), n(n_), s(s_) {
    if (static_cast<int>(x.size()) != 2 * s || s < 1)
        throw std::domain_error("OffDiagonalSolution: need a 2s-tuple");
    std::vector<i64> a(x.begin(), x.begin() + s), b(x.begin() + s, x.end());
    if (power_sums(a, n) != power_sums(b, n))
        throw std::domain_error("OffDiagonalSolution: power sums of the halves differ");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) throw std::domain_error("OffDiagonalSolution: halves are multiset-equal");
    bound = *std::max_element(x.begin(), x.end());
}

std::vector<i64> OffDiagonalSolution::side(int which) const {
    std::vector<i64> v(x.begin() + (which ? s : 0), x.begin() + (which ? 2 * s : s));
    std::sort(v.begin(), v.end());
    return v;
}

PteSearchResult find_offdiagonal(int n, int s, i64 X_max, i64 budget) {
    if (n < 1 || s < 1 || X_max < 1) throw std::domain_error("find_offdiagonal: bad parameters");

    // colex odometer over sorted s-tuples (a_1 <= ... <= a_s) in {1..X_max}
    std::vector<i64> t(static_cast<std::size_t>(s), 1);
    std::map<std::vector<BigInt>, std::vector<i64>> table;
    i64 examined = 0;
    while (true) {
        if (examined >= budget) return {std::nullopt, false, examined};
        ++examined;
        auto key = power_sums(t, n);
        auto [it, inserted] = table.emplace(std::move(key), t);
        if (!inserted && it->second != t) {
            // normalize: lexicographically smaller side first
            std::vector<i64> a = it->second, b = t;
            if (b < a) std::swap(a, b);
            std::vector<i64> tuple = a;
            tuple.insert(tuple.end(), b.begin(), b.end());
            return {OffDiagonalSolution(std::move(tuple), n, s), false, examined};
        }
        // next multiset in colex order
        int d = 0;
        for (;; ++d) {
            if (d == s) return {std::nullopt, true, examined};
            i64 cap = (d + 1 < s) ? t[static_cast<std::size_t>(d + 1)] : X_max;
            if (t[static_cast<std::size_t>(d)] < cap) break;
        }
        ++t[static_cast<std::size_t>(d)];
        for (int e = 0; e < d; ++e) t[static_cast<std::size_t>(e)] = 1;
    }
}

i64 amplify_visit(const OffDiagonalSolution& base, i64 X,
                  const std::function<void(i64, i64, const OffDiagonalSolution&)>& visit) {
    if (X < base.bound) return 0;  // empty stream, not an error
    i64 count = 0;
    for (i64 q = 1; q * base.bound < X; ++q) {
        for (i64 h = 1; h <= X - q * base.bound; ++h) {
            std::vector<i64> y(base.x.size());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = q * base.x[i] + h;
            OffDiagonalSolution sol(std::move(y), base.n, base.s);  // re-verifies
            if (sol.bound > X || *std::min_element(sol.x.begin(), sol.x.end()) < 1)
                throw invariant_violation("amplify: entry left [1, X]");
            visit(q, h, sol);
            ++count;
        }
    }
    return count;
}

std::vector<OffDiagonalSolution> amplify(const OffDiagonalSolution& base, i64 X) {
    std::vector<OffDiagonalSolution> out;
    amplify_visit(base, X, [&](i64, i64, const OffDiagonalSolution& s) { out.push_back(s); });
    return out;
}

i64 amplify_count_closed_form(i64 max_entry, i64 X) {
    i64 total = 0;
    for (i64 q = 1; q * max_entry < X; ++q) total += std::max<i64>(0, X - q * max_entry);
    return total;
}

double growth_exponent(const std::vector<std::pair<i64, i64>>& counts) {
    if (counts.size() < 3) throw std::domain_error("growth_exponent: need >= 3 points");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i + 1 < counts.size() && counts[i].first >= counts[i + 1].first)
            throw std::domain_error("growth_exponent: X must be strictly increasing");
        if (counts[i].second <= 0) throw std::domain_error("growth_exponent: zero count");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(counts.size());
    for (const auto& [X, c] : counts) {
        double lx = std::log(static_cast<double>(X)), ly = std::log(static_cast<double>(c));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace vindec
