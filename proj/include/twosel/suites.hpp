#pragma once

// Seeded randomized invariant suites: parity, duality, isotropy, ramhv, babo.

#include "twosel/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace twosel {

struct CorpusCurve {
    std::string input;
    FullTwoTorsionModel model;
};

/// Roots (-1,0,1), (0,1,2), (0,5,1).
const std::vector<CorpusCurve>& corpus();

const std::vector<std::string>& suite_names();

struct SuiteOutcome {
    std::string suite;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::optional<report::json> counterexample;  // first failing instance

    bool ok() const { return passed == trials; }
    report::json to_json() const;
};

/// Trials are spread round-robin over the curves. Throws std::invalid_argument for unknown suites.
SuiteOutcome run_suite(const std::string& name, const std::vector<CorpusCurve>& curves, std::size_t trials,
                       std::uint64_t seed, const SamplingOptions& opts = {});

}  // namespace twosel
