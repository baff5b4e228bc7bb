#pragma once

#include "hypdyn/measure.hpp"
#include "hypdyn/test_functions.hpp"

namespace hypdyn {

struct DistanceReport {
    double value = 0;       // D_K(mu, nu)
    double tail_bound = 0;  // |D - D_K| <= 2^{1-K}
    std::size_t K = 0;
    std::string family;
};

// D_K(mu,nu) = sum_{n=1..K} (2^n ||phi_n||_inf)^{-1} |int phi_n dmu - int phi_n dnu|.
DistanceReport wstar_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                              const TestFunctionFamily& family);

struct SimplexProjection {
    double dist = 0;
    ConvexWeights best_weights;
};

// Minimizes D_K(nu, sum_j s_j mu_j) over the barycentric grid with
// denominator grid_m. Refining grid_m along divisibility chains never
// increases the minimum.
SimplexProjection distance_to_simplex(const EmpiricalMeasure& nu, const std::vector<EmpiricalMeasure>& vertices,
                                      const TestFunctionFamily& family, int grid_m);

}  // namespace hypdyn
