#include "vindec/counting.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "vindec/errors.hpp"
#include "vindec/reduce.hpp"

namespace vindec {

namespace {

int default_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

std::string describe_subset(const std::vector<i64>& S) {
    bool contiguous = !S.empty() && S.front() == 1;
    for (std::size_t i = 0; contiguous && i < S.size(); ++i)
        if (S[i] != static_cast<i64>(i) + 1) contiguous = false;
    if (contiguous) return "1.." + std::to_string(S.back());
    std::string d = "{";
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (i) d += ",";
        d += std::to_string(S[i]);
    }
    return d + "}";
}

std::vector<i64> checked_subset(const PhiMap& phi, std::vector<i64> S) {
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    if (S.empty()) throw std::domain_error("subset must be non-empty");
    if (S.front() < 1 || S.back() > phi.N())
        throw std::domain_error("subset entries must lie in 1..N");
    return S;
}

// Canonical key layout: per coordinate, the low 8*bytes bits of the sum in
// two's complement, concatenated big-endian coordinate-major.
struct Codec {
    int n, s;
    int bytes;      // per coordinate
    bool packed;    // n * bytes <= 8: key fits a u64
    bool sums_i64;  // every s-fold coordinate sum fits int64
};

Codec make_codec(const PhiMap& phi, int s) {
    BigInt bound = phi.max_abs() * s;
    unsigned bits = 1;
    if (bound > 0) bits = static_cast<unsigned>(msb(bound)) + 2;  // value bits + sign
    int bytes = static_cast<int>((bits + 7) / 8);
    bool packed = phi.n() * bytes <= 8;
    bool sums_i64 = phi.has_i64_view() && bound < (BigInt(1) << 62);
    return {phi.n(), s, bytes, packed, sums_i64};
}

u64 pack_sums(const i64* sums, const Codec& c) {
    u64 key = 0;
    const int shift = 8 * c.bytes;
    const u64 mask = shift >= 64 ? ~0ULL : ((1ULL << shift) - 1);
    for (int i = 0; i < c.n; ++i) {
        if (i) key <<= shift;
        key |= static_cast<u64>(sums[i]) & mask;
    }
    return key;
}

std::string encode_sums_big(const std::vector<BigInt>& sums, const Codec& c) {
    std::string out(static_cast<std::size_t>(c.n) * c.bytes, '\0');
    const BigInt modulus = BigInt(1) << (8 * c.bytes);
    for (int i = 0; i < c.n; ++i) {
        BigInt v = sums[i] >= 0 ? sums[i] : modulus + sums[i];  // two's complement
        for (int b = c.bytes - 1; b >= 0; --b) {
            out[static_cast<std::size_t>(i) * c.bytes + b] =
                static_cast<char>(static_cast<unsigned char>((v & 0xff).convert_to<unsigned>()));
            v >>= 8;
        }
    }
    return out;
}

i64 ipow(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// All s-tuple sum keys over S in lexicographic tuple order (packed path).
// Thread t fills the contiguous slab of tuples with first index in its range,
// so the output is identical for every worker count.
void gen_keys_u64(const PhiMap& phi, const std::vector<i64>& S, int s, const Codec& c,
                  std::vector<u64>& out, int workers) {
    const i64 k = static_cast<i64>(S.size());
    const i64 total = ipow(k, s);
    const i64 inner = ipow(k, s - 1);
    const int n = c.n;
    out.resize(static_cast<std::size_t>(total));
    int nw = default_workers(workers);
#pragma omp parallel for schedule(static) num_threads(nw)
    for (i64 first = 0; first < k; ++first) {
        std::vector<i64> idx(static_cast<std::size_t>(s), 0);
        std::vector<i64> partial(static_cast<std::size_t>(s) * n, 0);
        idx[0] = first;
        // partial[d] = sums of rows idx[0..d]
        for (int d = 0; d < s; ++d) {
            const i64* row = phi.row64(S[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])]);
            for (int i = 0; i < n; ++i)
                partial[static_cast<std::size_t>(d) * n + i] =
                    (d ? partial[static_cast<std::size_t>(d - 1) * n + i] : 0) + row[i];
        }
        u64* slab = out.data() + first * inner;
        for (i64 t = 0;; ++t) {
            slab[t] = pack_sums(&partial[static_cast<std::size_t>(s - 1) * n], c);
            int d = s - 1;
            while (d >= 1 && idx[static_cast<std::size_t>(d)] == k - 1) --d;
            if (d < 1) break;
            ++idx[static_cast<std::size_t>(d)];
            for (int e = d; e < s; ++e) {
                if (e > d) idx[static_cast<std::size_t>(e)] = 0;
                const i64* row = phi.row64(S[static_cast<std::size_t>(idx[static_cast<std::size_t>(e)])]);
                for (int i = 0; i < n; ++i)
                    partial[static_cast<std::size_t>(e) * n + i] =
                        partial[static_cast<std::size_t>(e - 1) * n + i] + row[i];
            }
        }
    }
}

// Generic big-integer path, serial (used only when values overflow the packed
// encoding; desk-scale workloads never get here).
void gen_keys_bytes(const PhiMap& phi, const std::vector<i64>& S, int s, const Codec& c,
                    std::vector<std::string>& out) {
    const i64 k = static_cast<i64>(S.size());
    const int n = c.n;
    std::vector<i64> idx(static_cast<std::size_t>(s), 0);
    std::vector<BigInt> sums(static_cast<std::size_t>(n));
    out.reserve(static_cast<std::size_t>(ipow(k, s)));
    while (true) {
        for (int i = 0; i < n; ++i) sums[static_cast<std::size_t>(i)] = 0;
        for (int d = 0; d < s; ++d)
            for (int i = 0; i < n; ++i)
                sums[static_cast<std::size_t>(i)] += phi.value(S[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])], i);
        out.push_back(encode_sums_big(sums, c));
        int d = s - 1;
        while (d >= 0 && idx[static_cast<std::size_t>(d)] == k - 1) --d;
        if (d < 0) break;
        ++idx[static_cast<std::size_t>(d)];
        for (int e = d + 1; e < s; ++e) idx[static_cast<std::size_t>(e)] = 0;
    }
}

// LSD radix sort by 16-bit digits; passes where every key shares the digit
// are skipped, so narrow keys cost ~1 pass per occupied 16-bit lane.
void radix_sort_u64(std::vector<u64>& v) {
    if (v.size() < 2048) {
        std::sort(v.begin(), v.end());
        return;
    }
    std::vector<u64> buf(v.size());
    std::vector<std::size_t> count(1 << 16);
    u64* src = v.data();
    u64* dst = buf.data();
    bool swapped = false;
    for (int shift = 0; shift < 64; shift += 16) {
        std::fill(count.begin(), count.end(), 0);
        for (std::size_t i = 0; i < v.size(); ++i) ++count[(src[i] >> shift) & 0xffff];
        if (count[(src[0] >> shift) & 0xffff] == v.size()) continue;
        std::size_t run = 0;
        for (std::size_t d = 0; d < count.size(); ++d) {
            std::size_t c = count[d];
            count[d] = run;
            run += c;
        }
        for (std::size_t i = 0; i < v.size(); ++i) dst[count[(src[i] >> shift) & 0xffff]++] = src[i];
        std::swap(src, dst);
        swapped = !swapped;
    }
    if (swapped) v.swap(buf);
}

void sort_keys(std::vector<u64>& keys) { radix_sort_u64(keys); }
void sort_keys(std::vector<std::string>& keys) { std::sort(keys.begin(), keys.end()); }

template <typename Key>
BigInt sum_of_squared_multiplicities(std::vector<Key>& keys) {
    sort_keys(keys);
    unsigned __int128 acc = 0;
    std::size_t i = 0;
    while (i < keys.size()) {
        std::size_t j = i + 1;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        unsigned __int128 m = j - i;
        acc += m * m;
        i = j;
    }
    BigInt J = static_cast<u64>(acc >> 64);
    J <<= 64;
    J += static_cast<u64>(acc);
    return J;
}

}  // namespace

PhiMap::PhiMap(PhiKind k, i64 N, int n, std::vector<BigInt> vals)
    : kind_(k), N_(N), n_(n), values_(std::move(vals)) {
    if (N_ < 1) throw std::domain_error("PhiMap: N must be >= 1");
    if (n_ < 1) throw std::domain_error("PhiMap: n must be >= 1");
    if (values_.size() != static_cast<std::size_t>(N_) * n_)
        throw std::domain_error("PhiMap: value table size mismatch");
    max_abs_ = 0;
    for (const auto& v : values_) max_abs_ = std::max(max_abs_, BigInt(abs(v)));
    if (max_abs_ < (BigInt(1) << 52)) {
        v64_.resize(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) v64_[i] = values_[i].convert_to<i64>();
    }
}

PhiMap PhiMap::moment_powers(i64 N, int n) {
    std::vector<BigInt> vals(static_cast<std::size_t>(N) * n);
    for (i64 j = 1; j <= N; ++j) {
        BigInt p = 1;
        for (int i = 0; i < n; ++i) {
            p *= j;
            vals[static_cast<std::size_t>(j - 1) * n + i] = p;
        }
    }
    return PhiMap(PhiKind::MomentPowers, N, n, std::move(vals));
}

PhiMap PhiMap::custom(i64 N, int n, std::vector<BigInt> flat_values) {
    return PhiMap(PhiKind::Custom, N, n, std::move(flat_values));
}

BigInt diagonal_count(i64 k, int s) {
    if (k < 1 || s < 1) throw std::domain_error("diagonal_count: k, s must be >= 1");
    // ordered s-tuples grouped by multiset: each multiset M contributes perm(M)^2
    std::vector<i64> fact(static_cast<std::size_t>(s) + 1, 1);
    for (int i = 2; i <= s; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;

    std::vector<i64> c(static_cast<std::size_t>(s), 0);  // sorted tuple over 0..k-1
    unsigned __int128 acc = 0;
    BigInt spill = 0;
    const bool fast = s <= 12;
    while (true) {
        i64 perm = fact[static_cast<std::size_t>(s)];
        std::size_t i = 0;
        while (i < c.size()) {
            std::size_t j = i + 1;
            while (j < c.size() && c[j] == c[i]) ++j;
            perm /= fact[j - i];
            i = j;
        }
        if (fast) {
            acc += static_cast<unsigned __int128>(perm) * static_cast<unsigned __int128>(perm);
        } else {
            spill += BigInt(perm) * perm;
        }
        int d = s - 1;
        while (d >= 0 && c[static_cast<std::size_t>(d)] == k - 1) --d;
        if (d < 0) break;
        i64 v = c[static_cast<std::size_t>(d)] + 1;
        for (int e = d; e < s; ++e) c[static_cast<std::size_t>(e)] = v;
    }
    BigInt hi = static_cast<u64>(acc >> 64);
    hi <<= 64;
    hi += static_cast<u64>(acc);
    return hi + spill;
}

namespace {

SolutionTally brute_core(const PhiMap& phi, std::vector<i64> S, int s, const CountOptions& opts,
                         bool parallel) {
    if (s < 1) throw std::domain_error("count_solutions: s must be >= 1");
    S = checked_subset(phi, S);
    const i64 k = static_cast<i64>(S.size());
    double work = std::pow(static_cast<double>(k), 2.0 * s);
    if (work > opts.brute_budget)
        throw budget_error("bruteforce: |S|^(2s) exceeds budget", work);

    const i64 T = ipow(k, s);
    const int n = phi.n();
    Codec c = make_codec(phi, s);

    SolutionTally tally;
    tally.s = s;
    tally.subset_desc = describe_subset(S);
    tally.engine = "bruteforce";

    // half-tuple sums and sorted signatures, indexed by tuple number
    std::vector<i64> idx(static_cast<std::size_t>(s), 0);
    std::vector<i64> sig(static_cast<std::size_t>(s));
    i64 J = 0, D = 0;

    if (c.sums_i64) {
        std::vector<i64> sums(static_cast<std::size_t>(T) * n);
        std::vector<i64> sigs(static_cast<std::size_t>(T) * s);
        for (i64 t = 0; t < T; ++t) {
            i64 rem = t;
            for (int d = s - 1; d >= 0; --d) {
                idx[static_cast<std::size_t>(d)] = rem % k;
                rem /= k;
            }
            for (int i = 0; i < n; ++i) sums[static_cast<std::size_t>(t) * n + i] = 0;
            for (int d = 0; d < s; ++d) {
                const i64* row = phi.row64(S[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])]);
                for (int i = 0; i < n; ++i) sums[static_cast<std::size_t>(t) * n + i] += row[i];
                sig[static_cast<std::size_t>(d)] = S[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
            }
            std::sort(sig.begin(), sig.end());
            std::copy(sig.begin(), sig.end(), sigs.begin() + static_cast<std::size_t>(t) * s);
        }
        int nw = parallel ? default_workers(opts.workers) : 1;
#pragma omp parallel for schedule(static) reduction(+ : J, D) num_threads(nw)
        for (i64 L = 0; L < T; ++L) {
            const i64* ls = sums.data() + L * n;
            const i64* lg = sigs.data() + L * s;
            for (i64 Rt = 0; Rt < T; ++Rt) {
                const i64* rs = sums.data() + Rt * n;
                bool eq = true;
                for (int i = 0; i < n; ++i)
                    if (ls[i] != rs[i]) {
                        eq = false;
                        break;
                    }
                if (!eq) continue;
                ++J;
                if (std::memcmp(lg, sigs.data() + Rt * s, sizeof(i64) * static_cast<std::size_t>(s)) == 0) ++D;
            }
        }
    } else {
        // big-value fallback; budget still bounds the work
        std::vector<std::vector<BigInt>> sums(static_cast<std::size_t>(T));
        std::vector<std::vector<i64>> sigs(static_cast<std::size_t>(T));
        for (i64 t = 0; t < T; ++t) {
            i64 rem = t;
            std::vector<BigInt> sv(static_cast<std::size_t>(n), BigInt(0));
            std::vector<i64> sg;
            for (int d = s - 1; d >= 0; --d) {
                i64 x = S[static_cast<std::size_t>(rem % k)];
                rem /= k;
                sg.push_back(x);
                for (int i = 0; i < n; ++i) sv[static_cast<std::size_t>(i)] += phi.value(x, i);
            }
            std::sort(sg.begin(), sg.end());
            sums[static_cast<std::size_t>(t)] = std::move(sv);
            sigs[static_cast<std::size_t>(t)] = std::move(sg);
        }
        for (i64 L = 0; L < T; ++L)
            for (i64 Rt = 0; Rt < T; ++Rt)
                if (sums[static_cast<std::size_t>(L)] == sums[static_cast<std::size_t>(Rt)]) {
                    ++J;
                    if (sigs[static_cast<std::size_t>(L)] == sigs[static_cast<std::size_t>(Rt)]) ++D;
                }
    }
    tally.J = J;
    tally.diagonal = D;
    tally.off_diagonal = tally.J - tally.diagonal;
    return tally;
}

SolutionTally mitm_core(const PhiMap& phi, std::vector<i64> S, int s, const CountOptions& opts,
                        bool parallel) {
    if (s < 1) throw std::domain_error("count_solutions: s must be >= 1");
    S = checked_subset(phi, S);
    const i64 k = static_cast<i64>(S.size());
    double entries = std::pow(static_cast<double>(k), static_cast<double>(s));
    if (entries > opts.table_budget)
        throw budget_error("mitm: |S|^s table entries exceed budget", entries);

    Codec c = make_codec(phi, s);
    SolutionTally tally;
    tally.s = s;
    tally.subset_desc = describe_subset(S);
    tally.engine = "mitm";

    if (c.packed && c.sums_i64) {
        std::vector<u64> keys;
        gen_keys_u64(phi, S, s, c, keys, parallel ? opts.workers : 1);
        tally.J = sum_of_squared_multiplicities(keys);
    } else {
        std::vector<std::string> keys;
        gen_keys_bytes(phi, S, s, c, keys);
        tally.J = sum_of_squared_multiplicities(keys);
    }
    tally.diagonal = diagonal_count(k, s);
    tally.off_diagonal = tally.J - tally.diagonal;
    if (tally.off_diagonal < 0)
        throw invariant_violation("mitm: J below the diagonal count");
    return tally;
}

}  // namespace

SolutionTally count_solutions_bruteforce(const PhiMap& phi, const std::vector<i64>& S, int s,
                                         const CountOptions& opts) {
    return brute_core(phi, S, s, opts, true);
}
SolutionTally count_solutions_bruteforce_serial(const PhiMap& phi, const std::vector<i64>& S,
                                                int s, const CountOptions& opts) {
    return brute_core(phi, S, s, opts, false);
}
SolutionTally count_solutions_mitm(const PhiMap& phi, const std::vector<i64>& S, int s,
                                   const CountOptions& opts) {
    return mitm_core(phi, S, s, opts, true);
}
SolutionTally count_solutions_mitm_serial(const PhiMap& phi, const std::vector<i64>& S, int s,
                                          const CountOptions& opts) {
    return mitm_core(phi, S, s, opts, false);
}

SolutionTally count_solutions(const PhiMap& phi, const std::vector<i64>& S, int s,
                              const CountOptions& opts) {
    double work = std::pow(static_cast<double>(S.size()), 2.0 * s);
    if (work <= 1e6) return count_solutions_bruteforce(phi, S, s, opts);
    return count_solutions_mitm(phi, S, s, opts);
}

std::vector<Rational> newton_girard_elementary(const std::vector<Rational>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<Rational> S(static_cast<std::size_t>(n) + 1);
    S[0] = 1;
    for (int j = 1; j <= n; ++j) {
        Rational acc = 0;
        for (int i = 1; i <= j; ++i) {
            Rational term = S[static_cast<std::size_t>(j - i)] * p[static_cast<std::size_t>(i - 1)];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        S[static_cast<std::size_t>(j)] = acc / j;
    }
    return {S.begin() + 1, S.end()};
}

bool certify_diagonal(const std::vector<i64>& x, int n) {
    if (x.size() % 2 != 0 || x.empty())
        throw std::domain_error("certify_diagonal: need a 2s-tuple");
    const int s = static_cast<int>(x.size()) / 2;
    // the tuple must solve the moment-powers system first
    for (int j = 1; j <= n; ++j) {
        BigInt lhs = 0, rhs = 0;
        for (int i = 0; i < s; ++i) lhs += big_pow(BigInt(x[static_cast<std::size_t>(i)]), static_cast<unsigned>(j));
        for (int i = s; i < 2 * s; ++i) rhs += big_pow(BigInt(x[static_cast<std::size_t>(i)]), static_cast<unsigned>(j));
        if (lhs != rhs) throw std::domain_error("certify_diagonal: tuple is not a solution");
    }
    std::vector<i64> a(x.begin(), x.begin() + s), b(x.begin() + s, x.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    bool by_sort = a == b;

    auto elem_syms = [&](const std::vector<i64>& half) {
        std::vector<Rational> p(static_cast<std::size_t>(s));
        for (int j = 1; j <= s; ++j) {
            BigInt acc = 0;
            for (i64 v : half) acc += big_pow(BigInt(v), static_cast<unsigned>(j));
            p[static_cast<std::size_t>(j - 1)] = Rational(acc);
        }
        return newton_girard_elementary(p);
    };
    bool by_symmetric = elem_syms(a) == elem_syms(b);
    if (by_sort != by_symmetric)
        throw invariant_violation("certify_diagonal: the two routes disagree");
    return by_sort;
}

bool verify_diagonal_only(int n, int s, i64 X, const CountOptions& opts) {
    PhiMap phi = PhiMap::moment_powers(X, n);
    std::vector<i64> S(static_cast<std::size_t>(X));
    std::iota(S.begin(), S.end(), 1);
    SolutionTally t = count_solutions(phi, S, s, opts);
    return t.J == diagonal_count(X, s);
}

namespace {

// Builds the (key, weight) lists in lexicographic tuple order and folds equal
// keys in that order, so floating weights combine identically on every run.
template <typename W, typename Provider>
WeightedSumTable<W> build_table(const PhiMap& phi, const std::vector<i64>& S, int s,
                                const Provider& weight_of, WeightSource source,
                                const CountOptions& opts) {
    if (s < 1) throw std::domain_error("weighted table: s must be >= 1");
    const i64 k = static_cast<i64>(S.size());
    double entries = std::pow(static_cast<double>(k), static_cast<double>(s));
    if (entries > opts.table_budget)
        throw budget_error("weighted table: |S|^s entries exceed budget", entries);
    Codec c = make_codec(phi, s);

    WeightedSumTable<W> table;
    table.n = phi.n();
    table.s = s;
    table.bytes_per_coord = c.bytes;
    table.packed = c.packed && c.sums_i64;
    table.source = source;

    const i64 T = ipow(k, s);
    std::vector<i64> idx(static_cast<std::size_t>(s), 0);

    if (table.packed) {
        std::vector<u64> keys(static_cast<std::size_t>(T));
        std::vector<W> weights(static_cast<std::size_t>(T));
        std::vector<i64> sums(static_cast<std::size_t>(phi.n()));
        for (i64 t = 0; t < T; ++t) {
            i64 rem = t;
            std::fill(sums.begin(), sums.end(), 0);
            W w = weight_of(S[static_cast<std::size_t>(rem % k)]);
            for (int d = s - 1; d >= 0; --d) {
                i64 x = S[static_cast<std::size_t>(rem % k)];
                rem /= k;
                const i64* row = phi.row64(x);
                for (int i = 0; i < phi.n(); ++i) sums[static_cast<std::size_t>(i)] += row[i];
                if (d != s - 1) w = w * weight_of(x);
            }
            keys[static_cast<std::size_t>(t)] = pack_sums(sums.data(), c);
            weights[static_cast<std::size_t>(t)] = w;
        }
        std::vector<i64> order(static_cast<std::size_t>(T));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](i64 a, i64 b) {
            return keys[static_cast<std::size_t>(a)] != keys[static_cast<std::size_t>(b)]
                       ? keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)]
                       : a < b;
        });
        for (i64 t = 0; t < T; ++t) {
            u64 key = keys[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
            const W& w = weights[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
            if (!table.keys64.empty() && table.keys64.back() == key)
                table.weights.back() += w;
            else {
                table.keys64.push_back(key);
                table.weights.push_back(w);
            }
        }
    } else {
        std::vector<std::string> keys(static_cast<std::size_t>(T));
        std::vector<W> weights(static_cast<std::size_t>(T));
        std::vector<BigInt> sums(static_cast<std::size_t>(phi.n()));
        for (i64 t = 0; t < T; ++t) {
            i64 rem = t;
            for (auto& v : sums) v = 0;
            W w{};
            bool first = true;
            for (int d = s - 1; d >= 0; --d) {
                i64 x = S[static_cast<std::size_t>(rem % k)];
                rem /= k;
                for (int i = 0; i < phi.n(); ++i) sums[static_cast<std::size_t>(i)] += phi.value(x, i);
                if (first) {
                    w = weight_of(x);
                    first = false;
                } else {
                    w = w * weight_of(x);
                }
            }
            keys[static_cast<std::size_t>(t)] = encode_sums_big(sums, c);
            weights[static_cast<std::size_t>(t)] = w;
        }
        std::vector<i64> order(static_cast<std::size_t>(T));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](i64 a, i64 b) {
            int cmp = keys[static_cast<std::size_t>(a)].compare(keys[static_cast<std::size_t>(b)]);
            return cmp != 0 ? cmp < 0 : a < b;
        });
        for (i64 t = 0; t < T; ++t) {
            const std::string& key = keys[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
            const W& w = weights[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
            if (!table.keysb.empty() && table.keysb.back() == key)
                table.weights.back() += w;
            else {
                table.keysb.push_back(key);
                table.weights.push_back(w);
            }
        }
    }
    return table;
}

std::vector<i64> full_range(i64 N) {
    std::vector<i64> S(static_cast<std::size_t>(N));
    std::iota(S.begin(), S.end(), 1);
    return S;
}

}  // namespace

WeightedSumTable<BigInt> build_indicator_table(const PhiMap& phi, const std::vector<i64>& S,
                                               int s, const CountOptions& opts) {
    auto subset = checked_subset(phi, S);
    return build_table<BigInt>(
        phi, subset, s, [](i64) { return BigInt(1); }, WeightSource::Indicator, opts);
}

WeightedSumTable<cplx> build_coefficient_table(const PhiMap& phi, const std::vector<cplx>& a,
                                               int s, const CountOptions& opts) {
    if (static_cast<i64>(a.size()) != phi.N())
        throw std::domain_error("coefficient vector length must equal N");
    return build_table<cplx>(
        phi, full_range(phi.N()), s, [&](i64 j) { return a[static_cast<std::size_t>(j - 1)]; },
        WeightSource::Coefficients, opts);
}

WeightedSumTable<RationalComplex> build_exact_table(const PhiMap& phi,
                                                    const std::vector<RationalComplex>& a, int s,
                                                    const CountOptions& opts) {
    if (static_cast<i64>(a.size()) != phi.N())
        throw std::domain_error("coefficient vector length must equal N");
    return build_table<RationalComplex>(
        phi, full_range(phi.N()), s, [&](i64 j) { return a[static_cast<std::size_t>(j - 1)]; },
        WeightSource::Coefficients, opts);
}

double weighted_moment(const PhiMap& phi, const std::vector<cplx>& a, int s,
                       const CountOptions& opts) {
    auto table = build_coefficient_table(phi, a, s, opts);
    std::vector<double> sq(table.weights.size());
    for (std::size_t i = 0; i < table.weights.size(); ++i) sq[i] = std::norm(table.weights[i]);
    return pairwise_sum(sq);
}

Rational weighted_moment_exact(const PhiMap& phi, const std::vector<RationalComplex>& a, int s,
                               const CountOptions& opts) {
    auto table = build_exact_table(phi, a, s, opts);
    Rational acc = 0;
    for (const auto& w : table.weights) acc += w.abs2();
    return acc;
}

}  // namespace vindec
