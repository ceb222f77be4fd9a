#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vindec/io.hpp"

namespace vindec {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;  // deterministic summary (no timings)
};

struct SuiteConfig {
    std::uint64_t seed = 12345;
    int workers = 0;  // 0 = all available
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<CriterionResult> criteria;
    bool all_pass() const;
};

/// Criteria 1-15, one pass.
SuiteReport run_suite_once(const SuiteConfig& cfg);

/// Serialization compared byte-for-byte by the determinism criterion.
Json suite_report_json(const SuiteReport& rep);

struct FullSuiteResult {
    SuiteReport report;          // first pass
    CriterionResult determinism; // criterion 16: two passes byte-identical
    Json json;                   // final report including criterion 16
};

/// Runs the suite twice and compares serialized reports.
FullSuiteResult run_suite(const SuiteConfig& cfg);

}  // namespace vindec
