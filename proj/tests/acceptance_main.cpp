// Acceptance gate: runs every criterion at its stated scale and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>

#include "vindec/acceptance.hpp"

int main() {
    vindec::SuiteConfig cfg;  // fixed default seed, all workers
    vindec::FullSuiteResult result = vindec::run_suite(cfg);

    bool all = true;
    for (const auto& c : result.report.criteria) {
        std::printf("criterion %2d %s  %s  [%s]\n", c.id, c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.detail.c_str());
        all = all && c.pass;
    }
    const auto& d = result.determinism;
    std::printf("criterion %2d %s  %s  [%s]\n", d.id, d.pass ? "PASS" : "FAIL", d.name.c_str(),
                d.detail.c_str());
    all = all && d.pass;
    std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return all ? 0 : 1;
}
