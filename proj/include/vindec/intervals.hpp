#pragma once

#include <optional>
#include <vector>

#include "vindec/numeric.hpp"

namespace vindec {

// Integer-valued right-continuous step function with exact rational
// breakpoints: value values[i] on [breaks[i], breaks[i+1]), zero outside
// [breaks.front(), breaks.back()). Canonical form: adjacent equal values
// merged, no zero-valued boundary pieces.
struct StepFunction {
    std::vector<Rational> breaks;
    std::vector<int> values;  // size = breaks.size() - 1 (empty function: both empty)

    int value_at(const Rational& t) const;
    bool is_zero() const { return values.empty(); }
    int max_abs() const;
    void canonicalize();
};

/// Dissection context carried by families sampled from an R^{-1}-grid.
struct DissectionMeta {
    Rational inv_R;           // interval length R^{-1}
    Rational min_gap;         // required distance between distinct intervals (c0/R)
    bool tuples_permutation;  // whether (I_1..I_n) is a permutation of (I_1'..I_n')
};

// The n endpoint pairs (s_i, t_i) generating Xi = sum_i chi_[s_i, t_i).
// The signed indicator chi_[a,b) is +1 on [a,b) if a <= t < b and -1 on [b,a)
// if b <= t < a, so it is right continuous either way.
struct SignedIntervalFamily {
    std::vector<std::pair<Rational, Rational>> pairs;
    std::optional<DissectionMeta> meta;

    explicit SignedIntervalFamily(std::vector<std::pair<Rational, Rational>> p,
                                  std::optional<DissectionMeta> m = std::nullopt);
    int n() const { return static_cast<int>(pairs.size()); }
};

/// Exact step function of the family's signed-indicator sum.
StepFunction build_xi(const SignedIntervalFamily& family);

struct SignComponent {
    Rational lo, hi;  // closed interval
    int sign;         // +1 / -1
};

struct Decomposition {
    std::vector<SignComponent> pieces;  // ordered by center
    bool padded = false;
    std::optional<DissectionMeta> meta;
    int j0 = -1;  // index of a piece carrying the length guarantee, when known
    Rational center(int j) const { return (pieces[j].lo + pieces[j].hi) / 2; }
    int size() const { return static_cast<int>(pieces.size()); }
};

// Minimal cover of supp Xi by maximal closed intervals on whose interiors Xi
// keeps one sign. Throws invariant_violation if the count exceeds n.
Decomposition decompose_support(const StepFunction& xi, int n,
                                std::optional<DissectionMeta> meta = std::nullopt);

// Pads a decomposition to exactly n essentially disjoint closed intervals by
// splitting the longest piece into equal parts. With dissection metadata on a
// non-permutation family, the result keeps a piece of length >= (c0/n) R^{-1}.
Decomposition pad_to_n(const Decomposition& d, int n, double R, double c0);

// Exact reconstruction identity: sum_j eps_j |Xi| 1_{J_j} equals Xi at every
// midpoint of the refined breakpoint grid (piece boundaries of xi and of the
// decomposition combined).
bool reconstruction_holds(const StepFunction& xi, const Decomposition& d);

struct ThetaPermutationResult {
    bool theta_zero;
    bool is_permutation;
};

// Evaluates Theta = sum chi_[x_i, y_i) at midpoints between consecutive
// distinct endpoints (sufficient for a step function) and compares the sorted
// lists. Asserts the two verdicts coincide.
ThetaPermutationResult theta_permutation_test(const std::vector<Rational>& x,
                                              const std::vector<Rational>& y);

}  // namespace vindec
