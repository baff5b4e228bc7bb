#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <variant>
#include <vector>

#include "hypdyn/cat_map.hpp"

namespace hypdyn {

// Point of the surface obtained by blowing up the fixed point (0,0) of a cat
// map: either an ordinary torus point (coordinates centered to [-1/2,1/2),
// never exactly the origin) or a point of the exceptional fiber C = RP^1,
// held as an affine chart coordinate. Chart 1 carries u = y/x (directions
// with |u| <= 1 in canonical form), chart 2 carries v = x/y.
struct BlowupPoint {
    struct Exceptional {
        int chart = 1;     // 1 or 2
        double coord = 0;  // u or v
    };
    std::variant<Eigen::Vector2d, Exceptional> rep;

    bool on_fiber() const { return std::holds_alternative<Exceptional>(rep); }
    const Eigen::Vector2d& torus_point() const { return std::get<Eigen::Vector2d>(rep); }
    const Exceptional& fiber_point() const { return std::get<Exceptional>(rep); }

    static BlowupPoint torus(const Eigen::Vector2d& centered);
    static BlowupPoint fiber(int chart, double coord);

    // RP^1 coordinate in [0, pi): the direction of a fiber point, or of the
    // ray from the origin through a torus point.
    double direction_angle() const;
};

// Fixed point of the lift on the exceptional fiber, with its eigen-data.
struct BlowupFixedPoint {
    int chart = 1;
    double coord = 0;                     // fixed direction in its canonical chart
    double angle = 0;                     // RP^1 angle of the direction
    std::array<double, 2> eigenvalues{};  // (transverse multiplier, along-fiber multiplier)
};

// The continuous lift f_A of the cat map to the blown-up surface.
class BlowupMap {
  public:
    explicit BlowupMap(const CatMap& m) : m_(m) {}
    const CatMap& base() const { return m_; }

    BlowupPoint apply(const BlowupPoint& p) const;
    BlowupPoint apply_inverse(const BlowupPoint& p) const;

    // Full 2D chart transition: chart-1 coordinates (t, u) represent the
    // torus point (t, u t) (the fiber at t = 0); chart 2 is (t, v) for
    // (v t, t). Returns the image in whichever chart keeps |second| <= 1.
    struct ChartPoint {
        int chart;
        Eigen::Vector2d tc;  // (t, u) or (t, v)
    };
    ChartPoint chart_apply(const ChartPoint& p) const;

    // Mobius action on the fiber in chart 1: u -> (c + d u) / (a + b u).
    double fiber_apply_chart1(double u) const;

    // 5-point central-difference Jacobian of chart_apply at p, mapped back
    // to the source chart of the image (h is the stencil width).
    Eigen::Matrix2d chart_jacobian_numeric(const ChartPoint& p, double h = 2e-4) const;

  private:
    CatMap m_;
};

// Fixed directions solve b u^2 + (a - d) u - c = 0; p1 carries the unstable
// eigendirection (eigenvalues (lambda, lambda^{-2})), p2 the stable one
// (eigenvalues (lambda^{-1}, lambda^2)).
std::pair<BlowupFixedPoint, BlowupFixedPoint> blowup_fixed_points(const CatMap& m);

// Distance on the blown-up surface used for occupation counts: the hypot of
// the Euclidean distance to the origin and the RP^1 angle distance to the
// fixed direction. Rotation-invariant and chart-compatible.
double blowup_fixed_point_distance(const BlowupPoint& p, const BlowupFixedPoint& fp);

struct NearFiberOccupation {
    long long count_p1 = 0;
    long long count_p2 = 0;
    double radius = 0;
    double ratio = 0;      // count_p1 / count_p2 (inf when count_p2 = 0, nan when both 0)
    double deviation = 0;  // max(ratio, 1/ratio); +inf when either count is 0
    std::string metric = "euclid+rp1-angle";
};

struct LiftedOrbit {
    std::vector<BlowupPoint> points;
    NearFiberOccupation occupation;
    std::array<double, 2> exponents{};  // unchanged by the lift off the fiber
};

// Lifts a torus periodic orbit avoiding (0,0) and summarizes its visits to
// the radius-r balls around p1 and p2.
LiftedOrbit blowup_lift_orbit(const CatMap& m, const PeriodicOrbitRecord& orbit, double radius);

// max over sample points of the torus distance between pi(f_A(x)) computed
// through chart coordinates and A(pi(x)) computed directly.
double blowup_conjugacy_residual(const CatMap& m, int samples, unsigned seed);

}  // namespace hypdyn

#include "hypdyn/manifolds.hpp"

namespace hypdyn {

// Invariant manifolds of the two fiber fixed points. The lifted unstable
// line of p1 and stable line of p2 are ordinary torus curves (they do not
// contain the blown-up point, so their polylines start at the seed, not at
// the origin); W^s(p1) and W^u(p2) are arcs of the exceptional fiber.
struct BlowupManifolds {
    ManifoldCurve wu_p1_pos, wu_p1_neg;
    ManifoldCurve ws_p2_pos, ws_p2_neg;
    ManifoldCurve ws_p1, wu_p2;  // fiber arcs, polyline holds (angle, 0)
};

BlowupManifolds blowup_grow_manifolds(const CatMap& m, const GrowOptions& opts);

struct BlowupClassReport {
    std::vector<std::string> labels{"p1", "p2"};
    std::vector<std::vector<std::size_t>> classes;  // partition of {0, 1}
    RelationEvidence relation;                      // p1 ~ p2 evidence, both directions
};

// Intersection classes of {p1, p2}: the lifted lines meet transversely off
// the fiber, but the reverse direction pairs two fiber arcs, which meet only
// tangentially, so the relation is reported as not found within budget.
BlowupClassReport blowup_intersection_classes(const CatMap& m, const GrowOptions& opts, double angle_min);

}  // namespace hypdyn
