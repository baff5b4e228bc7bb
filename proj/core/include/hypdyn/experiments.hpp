#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypdyn/config.hpp"
#include "hypdyn/json_io.hpp"

namespace hypdyn {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0;
    std::string detail;
};

struct ExperimentReport {
    std::string name;
    std::vector<CheckResult> checks;
    json summary;                                            // thresholds + per-run values
    std::vector<std::pair<std::string, std::string>> csvs;   // filename -> content

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Exponents, orbit-count partition, eigen-splitting domination and the
// q <= classes_q_max intersection classes of the cat map.
ExperimentReport run_catmap_experiment(const CatmapExperimentConfig& cfg);

// Blow-up structure checks, near-fiber occupation ratios along the
// (1/q, 0) orbit family, and the {p1, p2} classes.
ExperimentReport run_blowup_experiment(const BlowupExperimentConfig& cfg);

// Level-curve weak* distances to (delta_p1 + delta_p2)/2, finite-time
// exponents, energy-drift and symplecticity checks. Level-curve runs for
// different eps values execute concurrently.
ExperimentReport run_figure8_experiment(const Figure8ExperimentConfig& cfg);

}  // namespace hypdyn
