#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vindec/counting.hpp"
#include "vindec/numeric.hpp"

namespace vindec {

struct CoefficientVector {
    std::vector<cplx> a;

    CoefficientVector() = default;
    explicit CoefficientVector(std::vector<cplx> v);
    static CoefficientVector indicator(i64 N, const std::vector<i64>& S);

    i64 N() const { return static_cast<i64>(a.size()); }
};

/// lambda_a(s) = #{ j : |a_j| > s }, exact count.
i64 distribution_function(const CoefficientVector& a, double s);

/// (sum |a_j|^p)^{1/p}.
double lp_norm(const CoefficientVector& a, double p);

// The layer-cake integral of lambda_a^{1/p}: with moduli sorted descending,
// sum_k k^{1/p} (a*_k - a*_{k+1}).
double lorentz_p1_norm(const CoefficientVector& a, double p);

struct Lemma32Check {
    double lhs, rhs;
    bool holds;
};

/// lhs = Lorentz(p,1) norm, rhs = (1 + p^{-1} (log N)^{1/p'}) * lp norm.
Lemma32Check lemma32_check(const CoefficientVector& a, double p);

struct FourPartSplit {
    // non-negative real vectors with disjoint supports pairwise within each part
    std::vector<double> re_pos, re_neg, im_pos, im_neg;
    cplx reconstruct(std::size_t j) const {
        return {re_pos[j] - re_neg[j], im_pos[j] - im_neg[j]};
    }
};

FourPartSplit four_part_split(const CoefficientVector& a);

// Parameters of the counting hypothesis J <= c |S|^theta and everything the
// resulting inequality needs: p = 2s/theta in (1,2], its conjugate, and the
// explicit constant c' = 2^{1/p} 4^{1/p'} c^{1/(2s)}.
struct DecouplingCheckConfig {
    int s;
    double theta, c;
    double p, p_conj, c_prime;

    static DecouplingCheckConfig make(int s, double theta, double c);
};

struct DecouplingCheck {
    double lhs, rhs, ratio;
    bool holds;
};

// lhs = (exact even moment)^{1/(2s)}; rhs = c' (1 + p^{-1}(log N)^{1/p'}) ||a||_p.
DecouplingCheck decoupling_check(const PhiMap& phi, const CoefficientVector& a,
                                 const DecouplingCheckConfig& cfg, const CountOptions& opts = {});

}  // namespace vindec
