#pragma once

#include <Eigen/Core>
#include <array>
#include <utility>
#include <vector>

#include "hypdyn/map.hpp"
#include "hypdyn/measure.hpp"
#include "hypdyn/orbit.hpp"

namespace hypdyn {

// Rational torus point i/q, j/q held in integer arithmetic.
struct RationalPoint {
    long long i = 0, j = 0, q = 1;

    Eigen::Vector2d to_double() const { return {double(i) / double(q), double(j) / double(q)}; }
    // coordinates centered to [-1/2, 1/2)
    Eigen::Vector2d to_centered() const;
};

// Hyperbolic linear automorphism A in SL(2,Z), |trace| > 2, acting on T^2.
struct CatMap {
    long long a = 2, b = 1, c = 1, d = 1;

    CatMap() = default;
    CatMap(long long a_, long long b_, long long c_, long long d_);

    long long trace() const { return a + d; }
    double lambda() const;  // eigenvalue > 1
    Eigen::Matrix2d matrix() const;
    Eigen::Matrix2d inverse_matrix() const;  // [[d,-b],[-c,a]] for det 1

    double unstable_slope() const;  // (lambda - a) / b
    double stable_slope() const;    // (1/lambda - a) / b
    Eigen::Vector2d unstable_direction() const;
    Eigen::Vector2d stable_direction() const;

    Eigen::Vector2d apply(const Eigen::Vector2d& x) const;  // mod 1
    RationalPoint apply(const RationalPoint& x) const;      // exact
};

struct PeriodicOrbitRecord {
    RationalPoint representative;
    std::size_t period = 1;
    std::array<double, 2> exponents{};  // (-log lambda, +log lambda)
    std::vector<RationalPoint> points;  // the whole orbit, in iteration order
    EmpiricalMeasure measure;           // uniform on the orbit points

    OrbitSegment to_orbit_segment(const CatMap& m) const;
};

// Partition of the q x q rational grid into orbits of the mod-q action.
// Sum of periods over the records is exactly q^2.
std::vector<PeriodicOrbitRecord> cat_periodic_orbits(const CatMap& m, long long q);

// The orbit through (1/q, 0).
PeriodicOrbitRecord cat_orbit_through(const CatMap& m, long long q);

// PlaneMap adapter: linear action on the universal cover.
class CatPlaneMap final : public PlaneMap {
  public:
    explicit CatPlaneMap(const CatMap& m) : m_(m) {}
    Eigen::Vector2d apply(const Eigen::Vector2d& p) const override { return m_.matrix() * p; }
    Eigen::Vector2d apply_inverse(const Eigen::Vector2d& p) const override { return m_.inverse_matrix() * p; }
    Eigen::Matrix2d jacobian(const Eigen::Vector2d&) const override { return m_.matrix(); }
    PhaseSpace topology() const override { return PhaseSpace::Torus2; }
    const CatMap& base() const { return m_; }

  private:
    CatMap m_;
};

}  // namespace hypdyn
