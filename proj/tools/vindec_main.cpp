// Command-line front end: every verification and search as a subcommand with
// reproducible seeds and machine-readable output. Exit codes: 0 all checks
// passed, 1 an assertion failed, 2 configuration or budget refusal.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>

#include "vindec/acceptance.hpp"
#include "vindec/averaged.hpp"
#include "vindec/counting.hpp"
#include "vindec/curve.hpp"
#include "vindec/errors.hpp"
#include "vindec/extension.hpp"
#include "vindec/harness.hpp"
#include "vindec/intervals.hpp"
#include "vindec/io.hpp"
#include "vindec/norms.hpp"
#include "vindec/pte.hpp"
#include "vindec/rng.hpp"
#include "vindec/sigma.hpp"

using namespace vindec;

namespace {

struct Common {
    std::uint64_t seed = 12345;
    int workers = 0;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "RNG seed");
    cmd->add_option("--workers", c.workers, "worker threads (0 = all)");
    cmd->add_option("--format", c.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", c.out, "output path (default: stdout)");
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(c.out);
        if (!f) throw config_error("cannot open output path: " + c.out);
        f << text << "\n";
    }
}

Curve make_curve(const std::string& kind, int n, const std::string& curve_file) {
    if (!curve_file.empty()) return load_curve_file(curve_file);
    if (kind == "normalized-moment") return Curve::normalized_moment(n);
    if (kind == "standard-moment") return Curve::standard_moment(n);
    throw config_error("unknown curve kind '" + kind + "' (use a curve file for polynomial)");
}

std::vector<cplx> random_coeffs(i64 N, std::uint64_t seed) {
    std::vector<cplx> a(static_cast<std::size_t>(N));
    for (i64 j = 0; j < N; ++j) {
        Rng rng(seed, static_cast<std::uint64_t>(j));
        a[static_cast<std::size_t>(j)] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
    return a;
}

std::vector<i64> parse_side_list(const std::string& text, std::vector<i64>& other) {
    // "a,b,c;d,e,f" -> first side returned, second side into `other`
    auto semi = text.find(';');
    if (semi == std::string::npos) throw config_error("sides: expected 'a,b,..;c,d,..'");
    auto parse_ints = [](const std::string& part) {
        std::vector<i64> v;
        std::size_t pos = 0;
        while (pos < part.size()) {
            auto comma = part.find(',', pos);
            if (comma == std::string::npos) comma = part.size();
            v.push_back(std::stoll(part.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return v;
    };
    other = parse_ints(text.substr(semi + 1));
    return parse_ints(text.substr(0, semi));
}

Json tally_json(const SolutionTally& t, int n, double elapsed_ms) {
    Json j;
    j["n"] = n;
    j["s"] = t.s;
    j["X_or_subset"] = t.subset_desc;
    j["J"] = json_bigint(t.J);
    j["diagonal"] = json_bigint(t.diagonal);
    j["off_diagonal"] = json_bigint(t.off_diagonal);
    j["engine"] = t.engine;
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact power-sum counting, exponential-sum moments, and decoupling checks"};
    app.set_config("--config", "", "optional config file with flag defaults");
    app.require_subcommand(1);

    // ---- count ----
    auto* count = app.add_subcommand("count", "exact solution tally for the power-sum system");
    Common count_c;
    int count_n = 2, count_s = 2;
    i64 count_X = 0;
    std::string count_subset, count_phi, count_engine = "auto";
    double count_budget = 1e8, count_table_budget = 3e7;
    count->add_option("--n", count_n, "number of equations");
    count->add_option("--s", count_s, "variables per side");
    count->add_option("--X", count_X, "subset 1..X");
    count->add_option("--subset", count_subset, "subset file (one integer per line)");
    count->add_option("--phi", count_phi, "custom phi table file");
    count->add_option("--engine", count_engine, "auto|bruteforce|mitm")
        ->check(CLI::IsMember({"auto", "bruteforce", "mitm"}));
    count->add_option("--budget", count_budget, "bruteforce tuple budget");
    count->add_option("--table-budget", count_table_budget, "mitm table entry budget");
    add_common(count, count_c);

    // ---- diagonal-check ----
    auto* diag = app.add_subcommand("diagonal-check", "J equals the diagonal count for s <= n");
    Common diag_c;
    int diag_n = 2, diag_s = 0;
    i64 diag_X = 12;
    diag->add_option("--n", diag_n, "number of equations");
    diag->add_option("--s", diag_s, "specific s (default: sweep 1..n)");
    diag->add_option("--X", diag_X, "range 1..X");
    add_common(diag, diag_c);

    // ---- pte-search ----
    auto* pte = app.add_subcommand("pte-search", "search for an off-diagonal witness");
    Common pte_c;
    int pte_n = 2, pte_s = 3;
    i64 pte_X = 12, pte_budget = 10'000'000;
    pte->add_option("--n", pte_n, "number of equations");
    pte->add_option("--s", pte_s, "multiset size");
    pte->add_option("--X", pte_X, "entries bounded by X");
    pte->add_option("--budget", pte_budget, "max multisets examined");
    add_common(pte, pte_c);

    // ---- amplify ----
    auto* amp = app.add_subcommand("amplify", "dilate-translate a base witness");
    Common amp_c;
    int amp_n = 2;
    i64 amp_X = 100;
    std::string amp_sides = "1,5,6;2,3,7";
    amp->add_option("--n", amp_n, "number of equations");
    amp->add_option("--X", amp_X, "entry bound for generated solutions");
    amp->add_option("--sides", amp_sides, "base witness 'a,b,..;c,d,..'");
    add_common(amp, amp_c);

    // ---- moment ----
    auto* mom = app.add_subcommand("moment", "exact even moment of an exponential sum");
    Common mom_c;
    int mom_n = 2, mom_s = 2;
    i64 mom_N = 10;
    bool mom_indicator = false;
    mom->add_option("--n", mom_n, "number of equations");
    mom->add_option("--s", mom_s, "half the moment order");
    mom->add_option("--N", mom_N, "coefficient vector length");
    mom->add_flag("--indicator", mom_indicator, "use all-ones coefficients instead of random");
    add_common(mom, mom_c);

    // ---- decouple-check ----
    auto* dec = app.add_subcommand("decouple-check", "lp decoupling inequality sweep");
    Common dec_c;
    int dec_n = 2, dec_s = 2;
    i64 dec_N = 100, dec_trials = 100;
    double dec_theta = 2.0, dec_cconst = 2.0;
    dec->add_option("--n", dec_n, "number of equations");
    dec->add_option("--s", dec_s, "half the moment order");
    dec->add_option("--N", dec_N, "max vector length");
    dec->add_option("--theta", dec_theta, "counting exponent theta in [s,2s)");
    dec->add_option("--c", dec_cconst, "counting constant c");
    dec->add_option("--trials", dec_trials, "random vectors tested");
    add_common(dec, dec_c);

    // ---- lorentz-check ----
    auto* lor = app.add_subcommand("lorentz-check", "Lorentz (p,1) vs lp comparison sweep");
    Common lor_c;
    double lor_p = 2.0;
    i64 lor_N = 1000, lor_trials = 100;
    lor->add_option("--p", lor_p, "exponent p > 1");
    lor->add_option("--N", lor_N, "max vector length");
    lor->add_option("--trials", lor_trials, "random vectors tested");
    add_common(lor, lor_c);

    // ---- det-scan ----
    auto* det = app.add_subcommand("det-scan", "determinant / Vandermonde ratio extremes");
    Common det_c;
    std::string det_kind = "normalized-moment", det_curve_file;
    int det_n = 3;
    double det_delta = 1.0;
    i64 det_samples = 10000;
    det->add_option("--curve", det_kind, "normalized-moment|standard-moment");
    det->add_option("--curve-file", det_curve_file, "curve config file");
    det->add_option("--n", det_n, "curve dimension");
    det->add_option("--delta", det_delta, "max tuple span");
    det->add_option("--samples", det_samples, "sample count");
    add_common(det, det_c);

    // ---- sigma-check ----
    auto* sig = app.add_subcommand("sigma-check", "simplex measure mass identities");
    Common sig_c;
    int sig_m = 3;
    i64 sig_trials = 100;
    sig->add_option("--m", sig_m, "measure order (recursive mode needs m <= 4)");
    sig->add_option("--trials", sig_trials, "random knot sets");
    add_common(sig, sig_c);

    // ---- sign-decomp ----
    auto* sd = app.add_subcommand("sign-decomp", "sign-constant decomposition of a family");
    Common sd_c;
    std::string sd_family;
    int sd_n = 0;
    sd->add_option("--family", sd_family, "file of 's_i t_i' rational pairs")->required();
    sd->add_option("--n", sd_n, "family size (default: line count)");
    add_common(sd, sd_c);

    // ---- perm-lemma ----
    auto* pl = app.add_subcommand("perm-lemma", "exhaustive step-sum permutation equivalence");
    Common pl_c;
    int pl_n = 3, pl_grid = 5;
    pl->add_option("--n", pl_n, "tuple length");
    pl->add_option("--grid", pl_grid, "endpoint grid 0..grid-1");
    add_common(pl, pl_c);

    // ---- separation ----
    auto* sep = app.add_subcommand("separation", "scaled gap harness on dissection tuples");
    Common sep_c;
    std::string sep_kind = "normalized-moment", sep_curve_file;
    int sep_n = 2;
    double sep_R = 16.0, sep_c0 = 10.0, sep_delta0 = 1.0;
    i64 sep_trials = 10000;
    bool sep_calibrate = false;
    sep->add_option("--curve", sep_kind, "normalized-moment|standard-moment");
    sep->add_option("--curve-file", sep_curve_file, "curve config file");
    sep->add_option("--n", sep_n, "curve dimension");
    sep->add_option("--R", sep_R, "dissection scale");
    sep->add_option("--c0", sep_c0, "separation constant");
    sep->add_option("--delta0", sep_delta0, "diameter bound");
    sep->add_option("--trials", sep_trials, "trials");
    sep->add_flag("--calibrate", sep_calibrate, "double c0 until the harness passes");
    add_common(sep, sep_c);

    // ---- sqfn-probe ----
    auto* sq = app.add_subcommand("sqfn-probe", "square-function / decoupling ratio probe");
    Common sq_c;
    int sq_R = 4, sq_m = 0, sq_p = 0, sq_densities = 1;
    double sq_ball = 0.0, sq_E = 3.0;
    sq->add_option("--R", sq_R, "dissection count (<= 8 at desk scale)");
    sq->add_option("--m", sq_m, "square-function exponent (L^{2m})");
    sq->add_option("--p", sq_p, "decoupling exponent (even, <= 4)");
    sq->add_option("--densities", sq_densities, "number of random densities");
    sq->add_option("--ball-radius", sq_ball, "ball radius (default R^n)");
    sq->add_option("--E", sq_E, "weight decay exponent (> n)");
    add_common(sq, sq_c);

    // ---- suite ----
    auto* suite = app.add_subcommand("suite", "full acceptance suite (run twice, compared)");
    Common suite_c;
    add_common(suite, suite_c);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*count) {
            PhiMap phi = count_phi.empty()
                             ? PhiMap::moment_powers(count_X > 0 ? count_X : 1, count_n)
                             : load_phi_table_file(count_phi);
            std::vector<i64> S;
            if (!count_subset.empty())
                S = load_subset_file(count_subset);
            else if (count_X > 0)
                S = [&] {
                    std::vector<i64> v(static_cast<std::size_t>(count_X));
                    std::iota(v.begin(), v.end(), 1);
                    return v;
                }();
            else
                throw config_error("count: need --X or --subset");
            if (!count_phi.empty() && count_X > 0 && phi.N() < count_X)
                throw config_error("count: phi table shorter than X");
            CountOptions opts;
            opts.brute_budget = count_budget;
            opts.table_budget = count_table_budget;
            opts.workers = count_c.workers;
            auto t0 = std::chrono::steady_clock::now();
            SolutionTally t;
            if (count_engine == "bruteforce")
                t = count_solutions_bruteforce(phi, S, count_s, opts);
            else if (count_engine == "mitm")
                t = count_solutions_mitm(phi, S, count_s, opts);
            else
                t = count_solutions(phi, S, count_s, opts);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            emit(count_c, tally_json(t, count_n, ms).dump(2));
            return 0;
        }

        if (*diag) {
            Json j;
            j["n"] = diag_n;
            j["X"] = diag_X;
            bool all = true;
            Json rows = Json::array();
            int s_lo = diag_s > 0 ? diag_s : 1, s_hi = diag_s > 0 ? diag_s : diag_n;
            for (int s = s_lo; s <= s_hi; ++s) {
                CountOptions opts;
                opts.workers = diag_c.workers;
                bool okv = verify_diagonal_only(diag_n, s, diag_X, opts);
                Json r;
                r["s"] = s;
                r["diagonal_only"] = okv;
                rows.push_back(r);
                all = all && okv;
            }
            j["results"] = rows;
            j["all_diagonal"] = all;
            emit(diag_c, j.dump(2));
            return all ? 0 : 1;
        }

        if (*pte) {
            PteSearchResult r = find_offdiagonal(pte_n, pte_s, pte_X, pte_budget);
            Json j;
            j["n"] = pte_n;
            j["s"] = pte_s;
            j["X_max"] = pte_X;
            if (r.found) {
                Json sides = Json::array();
                Json s0 = Json::array(), s1 = Json::array();
                for (i64 v : r.found->side(0)) s0.push_back(v);
                for (i64 v : r.found->side(1)) s1.push_back(v);
                sides.push_back(s0);
                sides.push_back(s1);
                j["sides"] = sides;
            } else {
                j["sides"] = nullptr;
                j["status"] = r.exhausted ? "proven-none" : "none-within-budget";
            }
            j["multisets_examined"] = r.multisets_examined;
            emit(pte_c, j.dump(2));
            return 0;
        }

        if (*amp) {
            std::vector<i64> side2;
            std::vector<i64> side1 = parse_side_list(amp_sides, side2);
            std::vector<i64> tuple = side1;
            tuple.insert(tuple.end(), side2.begin(), side2.end());
            OffDiagonalSolution base(tuple, amp_n, static_cast<int>(side1.size()));
            std::string csv = "q,h\n";
            i64 cnt = amplify_visit(base, amp_X, [&](i64 q, i64 h, const OffDiagonalSolution&) {
                csv += std::to_string(q) + "," + std::to_string(h) + "\n";
            });
            if (amp_c.format == "csv") {
                emit(amp_c, csv + "# count," + std::to_string(cnt));
            } else {
                Json j;
                j["n"] = amp_n;
                j["X"] = amp_X;
                j["count"] = cnt;
                j["closed_form"] = amplify_count_closed_form(base.bound, amp_X);
                emit(amp_c, j.dump(2));
            }
            return 0;
        }

        if (*mom) {
            PhiMap phi = PhiMap::moment_powers(mom_N, mom_n);
            std::vector<cplx> a = mom_indicator
                                      ? std::vector<cplx>(static_cast<std::size_t>(mom_N), cplx(1, 0))
                                      : random_coeffs(mom_N, mom_c.seed);
            CountOptions opts;
            opts.workers = mom_c.workers;
            double m = weighted_moment(phi, a, mom_s, opts);
            Json j;
            j["n"] = mom_n;
            j["s"] = mom_s;
            j["N"] = mom_N;
            j["moment"] = m;
            j["seed"] = mom_c.seed;
            emit(mom_c, j.dump(2));
            return 0;
        }

        if (*dec) {
            auto cfg = DecouplingCheckConfig::make(dec_s, dec_theta, dec_cconst);
            CountOptions opts;
            opts.workers = dec_c.workers;
            i64 violations = 0;
            double max_ratio = 0;
            std::string csv = "trial,N,lhs,rhs,ratio,holds\n";
            for (i64 t = 0; t < dec_trials; ++t) {
                Rng rng(dec_c.seed, static_cast<std::uint64_t>(t));
                i64 N = 1 + static_cast<i64>(rng.next_below(static_cast<u64>(dec_N)));
                std::vector<cplx> a(static_cast<std::size_t>(N));
                for (auto& z : a) z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
                PhiMap phi = PhiMap::moment_powers(N, dec_n);
                auto r = decoupling_check(phi, CoefficientVector(a), cfg, opts);
                if (!r.holds) ++violations;
                max_ratio = std::max(max_ratio, r.ratio);
                csv += std::to_string(t) + "," + std::to_string(N) + "," + std::to_string(r.lhs) +
                       "," + std::to_string(r.rhs) + "," + std::to_string(r.ratio) + "," +
                       (r.holds ? "1" : "0") + "\n";
            }
            if (dec_c.format == "csv") {
                emit(dec_c, csv);
            } else {
                Json j;
                j["n"] = dec_n;
                j["s"] = dec_s;
                j["theta"] = dec_theta;
                j["c"] = dec_cconst;
                j["c_prime"] = cfg.c_prime;
                j["p"] = cfg.p;
                j["trials"] = dec_trials;
                j["violations"] = violations;
                j["max_ratio"] = max_ratio;
                j["seed"] = dec_c.seed;
                emit(dec_c, j.dump(2));
            }
            return violations == 0 ? 0 : 1;
        }

        if (*lor) {
            i64 violations = 0;
            std::string csv = "trial,N,lhs,rhs,holds\n";
            for (i64 t = 0; t < lor_trials; ++t) {
                Rng rng(lor_c.seed, static_cast<std::uint64_t>(t));
                i64 N = 1 + static_cast<i64>(rng.next_below(static_cast<u64>(lor_N)));
                std::vector<cplx> a(static_cast<std::size_t>(N));
                for (auto& z : a) z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
                auto r = lemma32_check(CoefficientVector(a), lor_p);
                if (!r.holds) ++violations;
                csv += std::to_string(t) + "," + std::to_string(N) + "," + std::to_string(r.lhs) +
                       "," + std::to_string(r.rhs) + "," + (r.holds ? "1" : "0") + "\n";
            }
            if (lor_c.format == "csv") {
                emit(lor_c, csv);
            } else {
                Json j;
                j["p"] = lor_p;
                j["N"] = lor_N;
                j["trials"] = lor_trials;
                j["violations"] = violations;
                j["seed"] = lor_c.seed;
                emit(lor_c, j.dump(2));
            }
            return violations == 0 ? 0 : 1;
        }

        if (*det) {
            Curve curve = make_curve(det_kind, det_n, det_curve_file);
            DetRatioScan scan = det_ratio_scan(curve, det_delta, det_samples, det_c.seed,
                                               det_c.workers);
            Json j;
            j["ratio_min"] = scan.ratio_min;
            j["ratio_max"] = scan.ratio_max;
            j["samples"] = scan.samples;
            j["seed"] = scan.seed;
            j["skipped"] = scan.skipped;
            Json amin = Json::array(), amax = Json::array();
            for (double v : scan.argmin) amin.push_back(v);
            for (double v : scan.argmax) amax.push_back(v);
            j["argmin"] = amin;
            j["argmax"] = amax;
            emit(det_c, j.dump(2));
            return scan.ratio_min > 0 ? 0 : 1;
        }

        if (*sig) {
            Json j;
            Json cms = Json::array();
            for (int m = 1; m <= 4; ++m) cms.push_back(to_string(sigma_mass_constant(m)));
            j["c_m"] = cms;
            double max_rel = 0;
            for (i64 t = 0; t < sig_trials; ++t) {
                Rng rng(sig_c.seed, static_cast<std::uint64_t>(t));
                std::vector<double> knots(static_cast<std::size_t>(sig_m));
                for (auto& x : knots) x = rng.next_double();
                std::sort(knots.begin(), knots.end());
                bool distinct = true;
                for (int i = 0; i + 1 < sig_m; ++i)
                    if (knots[static_cast<std::size_t>(i + 1)] - knots[static_cast<std::size_t>(i)] < 1e-6)
                        distinct = false;
                if (!distinct) continue;
                SigmaSpec spec(knots);
                double closed = sigma_mass(spec, SigmaMode::ClosedForm);
                double rec = sigma_mass(spec, SigmaMode::RecursiveQuadrature, 2);
                max_rel = std::max(max_rel, std::abs(closed - rec) / (std::abs(closed) + 1e-300));
            }
            j["m"] = sig_m;
            j["trials"] = sig_trials;
            j["max_rel_err"] = max_rel;
            j["seed"] = sig_c.seed;
            emit(sig_c, j.dump(2));
            return max_rel <= 1e-6 ? 0 : 1;
        }

        if (*sd) {
            auto pairs = load_family_file(sd_family);
            int n = sd_n > 0 ? sd_n : static_cast<int>(pairs.size());
            SignedIntervalFamily family(pairs);
            StepFunction xi = build_xi(family);
            Decomposition d = decompose_support(xi, n);
            Json j;
            j["n"] = n;
            j["l0"] = d.size();
            Json pieces = Json::array();
            for (const auto& p : d.pieces) {
                Json e;
                e["lo"] = to_string(p.lo);
                e["hi"] = to_string(p.hi);
                e["sign"] = p.sign;
                pieces.push_back(e);
            }
            j["pieces"] = pieces;
            j["reconstruction"] = reconstruction_holds(xi, d);
            emit(sd_c, j.dump(2));
            return 0;
        }

        if (*pl) {
            i64 counterexamples = 0, cases = 0;
            std::vector<Rational> x(static_cast<std::size_t>(pl_n)), y(static_cast<std::size_t>(pl_n));
            i64 total = 1;
            for (int i = 0; i < 2 * pl_n; ++i) total *= pl_grid;
            for (i64 code = 0; code < total; ++code) {
                i64 rem = code;
                for (int i = 0; i < pl_n; ++i) {
                    x[static_cast<std::size_t>(i)] = Rational(rem % pl_grid);
                    rem /= pl_grid;
                }
                for (int i = 0; i < pl_n; ++i) {
                    y[static_cast<std::size_t>(i)] = Rational(rem % pl_grid);
                    rem /= pl_grid;
                }
                try {
                    theta_permutation_test(x, y);
                } catch (const invariant_violation&) {
                    ++counterexamples;
                }
                ++cases;
            }
            Json j;
            j["n"] = pl_n;
            j["grid"] = pl_grid;
            j["cases"] = cases;
            j["counterexamples"] = counterexamples;
            emit(pl_c, j.dump(2));
            return counterexamples == 0 ? 0 : 1;
        }

        if (*sep) {
            Curve curve = make_curve(sep_kind, sep_n, sep_curve_file);
            double c0 = sep_c0;
            if (sep_calibrate)
                c0 = calibrate_c0(curve, sep_R, sep_delta0, sep_trials, sep_c.seed, sep_c0, 40.0);
            SeparationReport r = separation_harness(curve, sep_R, c0, sep_delta0, sep_trials,
                                                    sep_c.seed, sep_c.workers);
            Json j;
            j["curve"] = r.curve;
            j["n"] = r.n;
            j["R"] = r.R;
            j["c0"] = r.c0;
            j["delta0"] = r.delta0;
            j["trials"] = r.trials;
            j["min_scaled_gap"] = r.min_scaled_gap;
            j["violations"] = r.violations;
            j["decomposition_failures"] = r.decomposition_failures;
            j["seed"] = r.seed;
            j["workers"] = r.workers;
            emit(sep_c, j.dump(2));
            return r.violations == 0 ? 0 : 1;
        }

        if (*sq) {
            Curve curve = Curve::normalized_moment(2);
            ProbeConfig pc;
            pc.workers = sq_c.workers;
            if (sq_ball > 0) pc.ball_radius = sq_ball;
            pc.ball_exponent = sq_E;
            std::string csv = "R,density,lhs,rhs,ratio\n";
            Json probes = Json::array();
            bool minkowski_ok = true;
            for (int d = 0; d < sq_densities; ++d) {
                Rng rng(sq_c.seed, static_cast<std::uint64_t>(d));
                DensityFunction f = DensityFunction::random(33, rng.next_u64());
                ProbeReport rep = run_probe(curve, f, sq_R, pc);
                double lhs, rhs;
                if (sq_p > 0) {
                    lhs = sq_p == 2 ? rep.lhs_m1 : rep.lhs_m2;
                    rhs = sq_p == 2 ? rep.dec_rhs_p2 : rep.dec_rhs_p4;
                    double sqr = sq_p == 2 ? rep.sq_rhs_m1 : rep.sq_rhs_m2;
                    if (sqr > rhs * (1 + 1e-9)) minkowski_ok = false;
                } else {
                    int m = sq_m > 0 ? sq_m : 2;
                    lhs = m == 1 ? rep.lhs_m1 : rep.lhs_m2;
                    rhs = m == 1 ? rep.sq_rhs_m1 : rep.sq_rhs_m2;
                }
                Json e;
                e["n"] = 2;
                if (sq_p > 0)
                    e["p"] = sq_p;
                else
                    e["m"] = sq_m > 0 ? sq_m : 2;
                e["R"] = sq_R;
                e["ball"] = rep.ball_radius;
                e["grid"] = rep.grid_axis_points;
                e["lhs"] = lhs;
                e["rhs"] = rhs;
                e["ratio"] = rhs > 0 ? lhs / rhs : 0.0;
                e["tail_estimate"] = rep.tail_weight_mass;
                probes.push_back(e);
                csv += std::to_string(sq_R) + "," + std::to_string(d) + "," + std::to_string(lhs) +
                       "," + std::to_string(rhs) + "," + std::to_string(rhs > 0 ? lhs / rhs : 0.0) +
                       "\n";
            }
            if (sq_c.format == "csv") {
                emit(sq_c, csv);
            } else {
                Json j;
                j["probes"] = probes;
                j["seed"] = sq_c.seed;
                emit(sq_c, j.dump(2));
            }
            return minkowski_ok ? 0 : 1;
        }

        if (*suite) {
            SuiteConfig scfg;
            scfg.seed = suite_c.seed;
            scfg.workers = suite_c.workers;
            FullSuiteResult r = run_suite(scfg);
            emit(suite_c, r.json.dump(2));
            bool pass = r.report.all_pass() && r.determinism.pass;
            return pass ? 0 : 1;
        }
    } catch (const budget_error& e) {
        std::cerr << "budget refusal: " << e.what() << " (required ~" << e.required << ")\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
