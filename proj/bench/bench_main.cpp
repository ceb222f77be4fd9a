// Serial vs OpenMP timings for the hot kernels. Each case also asserts the
// parallel kernel reproduces the serial reference exactly.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <numeric>

#include "vindec/counting.hpp"
#include "vindec/curve.hpp"
#include "vindec/extension.hpp"
#include "vindec/harness.hpp"

using namespace vindec;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(F&& f) {
    double t0 = now_ms();
    f();
    return now_ms() - t0;
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    int threads = omp_get_max_threads();
    std::printf("threads: %d%s\n", threads, quick ? " (quick mode)" : "");
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");
    bool all_equal = true;

    {
        i64 X = quick ? 9 : 12;
        PhiMap phi = PhiMap::moment_powers(X, 4);
        std::vector<i64> S(static_cast<std::size_t>(X));
        std::iota(S.begin(), S.end(), 1);
        CountOptions opts;
        opts.brute_budget = 1e9;
        SolutionTally a, b;
        double ts = timed([&] { a = count_solutions_bruteforce_serial(phi, S, 4, opts); });
        double tp = timed([&] { b = count_solutions_bruteforce(phi, S, 4, opts); });
        bool eq = a.J == b.J && a.diagonal == b.diagonal;
        all_equal = all_equal && eq;
        row("bruteforce n=4 s=4", ts, tp, eq);
    }
    {
        i64 X = quick ? 300 : 1000;
        PhiMap phi = PhiMap::moment_powers(X, 2);
        std::vector<i64> S(static_cast<std::size_t>(X));
        std::iota(S.begin(), S.end(), 1);
        CountOptions opts;
        SolutionTally a, b;
        double ts = timed([&] { a = count_solutions_mitm_serial(phi, S, 2, opts); });
        double tp = timed([&] { b = count_solutions_mitm(phi, S, 2, opts); });
        bool eq = a.J == b.J;
        all_equal = all_equal && eq;
        row("mitm n=2 s=2", ts, tp, eq);
    }
    {
        Curve curve = Curve::normalized_moment(4);
        i64 samples = quick ? 20000 : 200000;
        DetRatioScan a, b;
        double ts = timed([&] { a = det_ratio_scan_serial(curve, 0.5, samples, 42); });
        double tp = timed([&] { b = det_ratio_scan(curve, 0.5, samples, 42); });
        bool eq = a.ratio_min == b.ratio_min && a.ratio_max == b.ratio_max &&
                  a.argmin == b.argmin && a.argmax == b.argmax;
        all_equal = all_equal && eq;
        row("det_ratio_scan n=4", ts, tp, eq);
    }
    {
        Curve curve = Curve::normalized_moment(2);
        i64 trials = quick ? 2000 : 20000;
        SeparationReport a, b;
        double ts = timed([&] { a = separation_harness_serial(curve, 16, 10, 1, trials, 42); });
        double tp = timed([&] { b = separation_harness(curve, 16, 10, 1, trials, 42); });
        bool eq = a.min_scaled_gap == b.min_scaled_gap && a.violations == b.violations;
        all_equal = all_equal && eq;
        row("separation_harness n=2", ts, tp, eq);
    }
    {
        Curve curve = Curve::normalized_moment(2);
        DensityFunction f = DensityFunction::random(33, 7);
        int R = quick ? 4 : 8;
        ProbeConfig serial_cfg, par_cfg;
        serial_cfg.workers = 1;
        ProbeReport a, b;
        double ts = timed([&] { a = run_probe(curve, f, R, serial_cfg); });
        double tp = timed([&] { b = run_probe(curve, f, R, par_cfg); });
        bool eq = a.lhs_m2 == b.lhs_m2 && a.sq_rhs_m2 == b.sq_rhs_m2 &&
                  a.dec_rhs_p4 == b.dec_rhs_p4;
        all_equal = all_equal && eq;
        row("extension grid probe", ts, tp, eq);
    }

    std::printf("%s\n", all_equal ? "all kernels match serial reference" : "KERNEL MISMATCH");
    return all_equal ? 0 : 1;
}
