#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "qme/rng.hpp"

namespace qme {

// One randomized property check per entropy result. Checks are independent,
// and every trial derives its RNG stream from (seed, check id, trial index),
// so reports are bit-identical no matter how trials are scheduled.

struct SuiteConfig {
    RngSeed seed = 20240915;
    std::uint64_t trials = 0;     // 0 = per-check default
    std::vector<int> dims = {2, 3, 4, 5};
    double tolerance = 0.0;       // 0 = per-check default
    bool parallel = true;
};

struct CheckReport {
    std::string id;
    bool passed = false;
    double worst_margin = 0.0;    // signed slack, minimum over trials; negative = violation
    std::uint64_t trials = 0;
    double elapsed_seconds = 0.0;
    nlohmann::json counterexample;  // null iff passed

    nlohmann::json to_json() const;
};

// Deliberately false claim used to prove the harness detects violations.
// Registered (runnable by id) but excluded from run_all.
inline constexpr const char* kCanaryId = "canary";

const std::vector<std::string>& registry_ids();  // canonical order, canary excluded
bool is_registered(const std::string& id);       // registry or canary
std::string check_description(const std::string& id);

CheckReport run_check(const std::string& id, const SuiteConfig& config);
std::vector<CheckReport> run_checks(const std::vector<std::string>& ids, const SuiteConfig& config);
std::vector<CheckReport> run_all(const SuiteConfig& config);

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports);

}  // namespace qme
