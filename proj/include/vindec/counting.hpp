#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vindec/numeric.hpp"

namespace vindec {

enum class PhiKind { MomentPowers, Custom };

// The system map phi: {1..N} -> Z^n defining the n-equation power-sum system.
// Values are exact big integers; an int64 mirror is kept when every entry
// (and every s-fold sum the engines will form) fits comfortably.
class PhiMap {
public:
    static PhiMap moment_powers(i64 N, int n);
    static PhiMap custom(i64 N, int n, std::vector<BigInt> flat_values);  // row j-1, coord i

    i64 N() const { return N_; }
    int n() const { return n_; }
    PhiKind kind() const { return kind_; }
    const BigInt& value(i64 j, int i) const { return values_[(j - 1) * n_ + i]; }
    const BigInt& max_abs() const { return max_abs_; }

    bool has_i64_view() const { return !v64_.empty(); }
    const i64* row64(i64 j) const { return v64_.data() + (j - 1) * n_; }

private:
    PhiMap(PhiKind k, i64 N, int n, std::vector<BigInt> vals);
    PhiKind kind_;
    i64 N_;
    int n_;
    std::vector<BigInt> values_;
    std::vector<i64> v64_;
    BigInt max_abs_;
};

struct SolutionTally {
    BigInt J, diagonal, off_diagonal;
    int s = 0;
    std::string subset_desc;
    std::string engine;
};

struct CountOptions {
    double brute_budget = 1e8;   // max tuple evaluations |S|^{2s}
    double table_budget = 3e7;   // max s-tuple table entries |S|^s
    int workers = 0;             // 0 = library default
};

/// Exact diagonal count: 2s-tuples over a k-element set whose halves are
/// multiset-equal, summed over multisets as (s!/prod mult_i!)^2.
BigInt diagonal_count(i64 k, int s);

/// Full 2s-fold enumeration. Exceeding the budget raises budget_error with the
/// required budget.
SolutionTally count_solutions_bruteforce(const PhiMap& phi, const std::vector<i64>& S, int s,
                                         const CountOptions& opts = {});
SolutionTally count_solutions_bruteforce_serial(const PhiMap& phi, const std::vector<i64>& S,
                                                int s, const CountOptions& opts = {});

/// Meet-in-the-middle: J = sum over sum-vectors v of m_v^2 from the s-fold table.
SolutionTally count_solutions_mitm(const PhiMap& phi, const std::vector<i64>& S, int s,
                                   const CountOptions& opts = {});
SolutionTally count_solutions_mitm_serial(const PhiMap& phi, const std::vector<i64>& S, int s,
                                          const CountOptions& opts = {});

/// Brute force at tiny scale (|S|^{2s} <= 1e6), meet-in-the-middle otherwise.
SolutionTally count_solutions(const PhiMap& phi, const std::vector<i64>& S, int s,
                              const CountOptions& opts = {});

/// S_1..S_n from power sums p_1..p_n via j S_j = sum (-1)^{i-1} S_{j-i} p_i.
std::vector<Rational> newton_girard_elementary(const std::vector<Rational>& p);

// Whether the halves of a 2s-tuple are rearrangements of each other, decided
// both by sorted comparison and through elementary symmetric functions; the
// tuple must solve the n-equation moment-powers system or a domain_error is
// thrown.
bool certify_diagonal(const std::vector<i64>& x, int n);

/// True iff J_{s,n}(X) equals the diagonal count exactly.
bool verify_diagonal_only(int n, int s, i64 X, const CountOptions& opts = {});

enum class WeightSource { Indicator, Coefficients };

// s-fold sum table: canonical byte-encoded keys (fixed-width two's complement
// per coordinate) sorted ascending, one combined weight per distinct key.
// Weight combination order is the enumeration order, so floating results are
// reproducible for any worker count.
template <typename W>
struct WeightedSumTable {
    int n = 0, s = 0;
    int bytes_per_coord = 0;
    bool packed = false;              // key fits one u64
    std::vector<u64> keys64;          // packed path
    std::vector<std::string> keysb;   // generic path
    std::vector<W> weights;
    WeightSource source = WeightSource::Indicator;

    std::size_t distinct() const { return weights.size(); }
    W total() const {
        W t{};
        for (const auto& w : weights) t += w;
        return t;
    }
};

/// Indicator-weight table over a subset; weights are exact multiplicities.
WeightedSumTable<BigInt> build_indicator_table(const PhiMap& phi, const std::vector<i64>& S,
                                               int s, const CountOptions& opts = {});

/// Complex-coefficient table over all of {1..N}.
WeightedSumTable<cplx> build_coefficient_table(const PhiMap& phi, const std::vector<cplx>& a,
                                               int s, const CountOptions& opts = {});

/// Exact-rational-coefficient table over all of {1..N}.
WeightedSumTable<RationalComplex> build_exact_table(const PhiMap& phi,
                                                    const std::vector<RationalComplex>& a, int s,
                                                    const CountOptions& opts = {});

// Even moment of the exponential sum with coefficients a: the exact value of
// the 2s-th power integral, computed as sum_v |W_s(v)|^2 from the table.
double weighted_moment(const PhiMap& phi, const std::vector<cplx>& a, int s,
                       const CountOptions& opts = {});
Rational weighted_moment_exact(const PhiMap& phi, const std::vector<RationalComplex>& a, int s,
                               const CountOptions& opts = {});

}  // namespace vindec
