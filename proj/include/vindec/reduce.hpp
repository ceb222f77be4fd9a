#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vindec {

// Pairwise summation over a fixed binary tree. The tree shape depends only on
// the element count, never on thread scheduling, so accumulated norms are
// bit-stable for a fixed grid.
template <typename T>
T pairwise_sum(const T* v, std::size_t n) {
    if (n <= 8) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

/// Kahan compensated accumulator.
struct CompensatedSum {
    double sum = 0.0, carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace vindec
