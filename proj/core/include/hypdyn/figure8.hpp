#pragma once

#include <Eigen/Core>

#include "hypdyn/map.hpp"
#include "hypdyn/measure.hpp"
#include "hypdyn/orbit.hpp"

namespace hypdyn {

// Time-1 map of the Hamiltonian flow of H(x,y) = y^2 - cos(4 pi x) on the
// cylinder S^1 x R, discretized by M Stoermer-Verlet (kick-drift-kick)
// substeps of size 1/M. The discrete map is symplectic; the energy error is
// O(M^{-2}) and oscillatory rather than secular.
class Figure8System final : public PlaneMap {
  public:
    explicit Figure8System(int substeps_M = 64);

    int substeps() const { return M_; }
    double step() const { return 1.0 / M_; }

    static double hamiltonian(const Eigen::Vector2d& p);
    static Eigen::Vector2d saddle_p1() { return {0.25, 0.0}; }
    static Eigen::Vector2d saddle_p2() { return {0.75, 0.0}; }
    // |eigen-exponent| of the flow linearization at the saddles: sqrt(32) pi
    static double saddle_exponent();

    struct Time1Result {
        Eigen::Vector2d point;
        Eigen::Matrix2d jacobian;
        double energy_drift;  // |H(f(p)) - H(p)| for this call
    };
    Time1Result time1(const Eigen::Vector2d& p) const;

    Eigen::Vector2d apply(const Eigen::Vector2d& p) const override;
    Eigen::Vector2d apply_inverse(const Eigen::Vector2d& p) const override;
    Eigen::Matrix2d jacobian(const Eigen::Vector2d& p) const override;
    PhaseSpace topology() const override { return PhaseSpace::Cylinder; }

  private:
    int M_;
};

// Finds the point on {H = 1 - eps} with y = 0 and x in (1/4, 1/2) by
// bisection on H.
Eigen::Vector2d level_curve_start(double eps);

struct LevelCurveRun {
    EmpiricalMeasure measure;          // uniform on the T+1 trajectory points
    double finite_time_exponent = 0;   // (1/T) log of the tangent-vector growth
    double drift_slope = 0;            // least-squares d/dt of H along the run (secular drift rate)
    double drift_endpoint = 0;         // |H(x_T) - H(x_0)| / T
    double max_level_deviation = 0;    // max |H - (1-eps)| along the run
    double max_step_drift = 0;         // max per-call |H(f(p)) - H(p)|
    Eigen::Vector2d start;
};

// Iterates the time-1 map T times from the level-curve start point and
// returns the empirical measure together with the run diagnostics.
LevelCurveRun run_level_curve(const Figure8System& sys, double eps, long long T);

// Short orbit segment on the level curve with the tangent/normal splitting
// (E = normalized flow direction, F = unit normal), for domination probes.
std::pair<OrbitSegment, SplittingFrame> level_curve_segment(const Figure8System& sys, double eps, int length);

}  // namespace hypdyn
