#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypdyn/errors.hpp"

namespace hypdyn {

// Minimal TOML-style config: [section] headers, key = value lines, # or ;
// comments, values either bare scalars, "quoted strings", or [v1, v2, ...]
// lists. Flag overrides use "section.key=value".
class ConfigFile {
  public:
    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const;

    void set_override(const std::string& dotted_key_equals_value);

    const std::map<std::string, std::map<std::string, std::string>>& sections() const { return sections_; }

  private:
    const std::string* find(const std::string& section, const std::string& key) const;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Typed experiment configurations with the paper-derived defaults. All
// parameter orderings are validated at load time.

struct CatmapExperimentConfig {
    long long mat_a = 2, mat_b = 1, mat_c = 1, mat_d = 1;
    long long q_max = 30;           // exponent sweep over all orbits with denominator <= q_max
    long long classes_q_max = 5;    // saddle denominators entering the class computation
    double exponent_tol = 1e-10;
    double budget = 50.0;
    double angle_min = 1e-3;
    double angle_evidence_tol = 1e-6;
    int domination_N_max = 20;
    unsigned seed = 20240901;

    void validate() const;
};

struct BlowupExperimentConfig {
    long long mat_a = 2, mat_b = 1, mat_c = 1, mat_d = 1;
    std::vector<long long> q_list{5, 11, 23, 47, 97};
    double radius = 0.1;
    double ratio_lo = 0.8, ratio_hi = 1.25;
    double direction_tol = 1e-10;    // fixed directions against the closed form
    double eigen_tol = 1e-9;         // eigenvalues against the numerical chart Jacobian
    double conjugacy_tol = 1e-12;
    int conjugacy_samples = 10000;
    double budget = 50.0;
    double angle_min = 1e-3;
    unsigned seed = 20240902;

    void validate() const;
};

struct Figure8ExperimentConfig {
    int substeps_M = 64;
    long long T = 100000;
    std::vector<double> eps_list{1e-2, 1e-3, 1e-4};
    std::string family = "cylinder-windowed";
    std::size_t family_K = 0;  // 0: whole family
    double D_max_at_finest = 0.05;
    double exponent_eps = 1e-3;
    double exponent_max = 0.1;
    double drift_max = 1e-8;   // secular drift rate per unit time
    double det_tol = 1e-10;
    int det_samples = 1000;
    int domination_N_max = 20;
    int domination_segment = 256;
    unsigned seed = 20240903;

    void validate() const;
};

CatmapExperimentConfig catmap_config_from(const ConfigFile& f);
BlowupExperimentConfig blowup_config_from(const ConfigFile& f);
Figure8ExperimentConfig figure8_config_from(const ConfigFile& f);

}  // namespace hypdyn
