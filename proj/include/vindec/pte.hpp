#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "vindec/numeric.hpp"

namespace vindec {

// A solution of the n-equation power-sum system whose halves are NOT
// rearrangements of each other. Construction re-verifies both facts exactly.
struct OffDiagonalSolution {
    std::vector<i64> x;  // 2s entries: first side then second side
    int n = 0, s = 0;
    i64 bound = 0;  // max entry

    OffDiagonalSolution(std::vector<i64> tuple, int n_, int s_);
    std::vector<i64> side(int which) const;  // 0 or 1, sorted
};

struct PteSearchResult {
    std::optional<OffDiagonalSolution> found;
    bool exhausted;            // true: the whole range was enumerated (proven none)
    i64 multisets_examined;    // enumeration progress
};

// Enumerates s-multisets over {1..X_max} in colex order keyed by the exact
// power-sum vector; the first collision between distinct multisets is the
// witness. "No witness" distinguishes a completed enumeration from a budget
// stop.
PteSearchResult find_offdiagonal(int n, int s, i64 X_max, i64 budget = 10'000'000);

// All dilate-translates q*x + h of the base with entries still in [1, X]:
// q in [1, X / max x_i), h in [1, X - q * max x_i]. Every emitted tuple is
// re-verified on construction.
std::vector<OffDiagonalSolution> amplify(const OffDiagonalSolution& base, i64 X);

/// Visitor form of amplify, for streaming (q, h) pairs without materializing.
i64 amplify_visit(const OffDiagonalSolution& base, i64 X,
                  const std::function<void(i64 q, i64 h, const OffDiagonalSolution&)>& visit);

/// Closed-form count of amplify yields: sum_q max(0, X - q * max x_i).
i64 amplify_count_closed_form(i64 max_entry, i64 X);

/// Least-squares slope of log(count) against log(X). Needs >= 3 points.
double growth_exponent(const std::vector<std::pair<i64, i64>>& counts);

}  // namespace vindec
