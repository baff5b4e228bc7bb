#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hypdyn/orbit.hpp"
#include "hypdyn/pliss.hpp"

namespace hypdyn::cocycle {

enum class Bundle { E, F };

// psi_n at the base point:
//   Bundle::E -> log ||df^n restricted to E||            (largest singular value)
//   Bundle::F -> log ||(df^n restricted to F)^{-1}||     (reciprocal smallest singular value)
// Long products are stabilized by QR re-orthonormalization with a running
// log scale. Throws on range violations for non-periodic segments.
double bundle_log_norm(const OrbitSegment& orbit, const SplittingFrame& frame, Bundle bundle, std::size_t n,
                       std::size_t base = 0);

// log sigma_max and log sigma_min of the n-step product restricted to the bundle.
std::pair<double, double> restricted_log_singular_values(const OrbitSegment& orbit, const SplittingFrame& frame,
                                                         Bundle bundle, std::size_t n, std::size_t base = 0);

struct ExponentResult {
    std::vector<double> exponents;  // ascending
    bool defective_flagged = false; // near-defective return product; singular-value fallback used
};

// Lyapunov exponents chi_i = (1/pi) log |eigenvalue_i| of the one-period
// product. For d = 2 the values come from the characteristic polynomial of
// the rescaled product (log|lambda_-| recovered through the exactly
// accumulated log-determinant), which stays accurate up to huge pi*log(lambda).
ExponentResult periodic_exponents(const OrbitSegment& orbit);

struct WeightedOrbit {
    const OrbitSegment* orbit;
    const SplittingFrame* frame;
    double weight;
};

// Ensemble average of (1/n) psi_n: the finite-N Kingman estimator. For a
// periodic orbit the base point runs over the whole orbit; for segments over
// every base with base + n in range. Compensated summation keeps the result
// independent of reduction order.
double subadditive_average(const std::vector<WeightedOrbit>& ensemble, std::size_t n, Bundle bundle);

struct CFunctionValue {
    double log_value = 0;          // log C^{*,N}_{-lambda}
    std::size_t argmax_k = 0;
    bool divergence_flag = false;  // non-periodic segment and the last term was the max

    double value() const;
};

// C^{E,N}_{-lambda}(x) = sup_k e^{k N lambda} prod_{l<k} ||df^N_{/E_{f^{lN}(x)}}||
// (k = 0 term is 1, so the value is always >= 1). On a periodic orbit the
// sup is attained within k <= pi(p) provided the one-period product is
// < e^{-pi N lambda}; otherwise the sup is infinite and a "not
// lambda-contracting" error is thrown. Bundle::F is the backward variant.
CFunctionValue c_function(const OrbitSegment& orbit, const SplittingFrame& frame, int N, double lambda,
                          Bundle bundle, std::size_t base = 0);

struct NotContracting : Error {
    using Error::Error;
};

// L* = delta / C.
double manifold_size(double c_value, double delta);
double manifold_size_from_log(double log_c_value, double delta);

// Smallest N <= N_max with ||df^N v|| <= 1/2 ||df^N w|| for unit v in E,
// w in F at every sampled base point, i.e. opnorm(df^N|_E) <= conorm(df^N|_F)/2.
std::optional<int> domination_check(const OrbitSegment& orbit, const SplittingFrame& frame, int N_max);

struct HyperbolicTimes {
    pliss::IndexSet pliss_indices;          // i in {1..pi}: ultimate Pliss times of (a_i)
    std::vector<std::size_t> orbit_positions;  // orbit index of f^{-iN}(x_0) per returned i
    pliss::PeriodicSequence<double> sequence;  // a_i = -log ||df^N_{/E_{f^{-iN}(x_0)}}||
    double bound_A = 0;                        // N * Cf
};

// Hyperbolic times of a periodic orbit: ultimate c1-Pliss times of the
// backward N-block sequence. Every returned index marks a point x with
// prod_{l<k} ||df^N_{/E_{f^{lN}(x)}}|| <= e^{-k c1} for all k >= 1.
HyperbolicTimes hyperbolic_times(const OrbitSegment& orbit, const SplittingFrame& frame,
                                 const HyperbolicityEstimate& est, double c1, double tie_tol = 0.0);

// Fraction of l in {0..pi-1} with f^{lN}(x_0) inside the region.
double occupation_frequency(const OrbitSegment& orbit, int N,
                            const std::function<bool(const Eigen::VectorXd&)>& region);

struct CfConstant {
    double raw = 0;      // max over orbit points of max(log||df||, log||df^{-1}||)
    double clamped = 1;  // max(raw, 1 + 1e-9), matching the convention Cf > 1
};

CfConstant cf_constant(const OrbitSegment& orbit);

}  // namespace hypdyn::cocycle
