#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "hypdyn/map.hpp"
#include "hypdyn/measure.hpp"

namespace hypdyn {

// Hyperbolic periodic point of a 2D map with its return-map eigen-data.
struct SaddleRecord {
    Eigen::Vector2d point;
    std::size_t period = 1;
    double eig_s = 0, eig_u = 0;       // |eig_s| < 1 < |eig_u|
    Eigen::Vector2d vec_s, vec_u;      // unit eigenvectors
    std::string label;

    // residual of (return Jacobian) * v - lambda * v, both eigenpairs
    double eigen_residual(const PlaneMap& map) const;
    void validate(const PlaneMap& map, double tol = 1e-9) const;

    static SaddleRecord from_periodic_point(const PlaneMap& map, const Eigen::Vector2d& p, std::size_t period,
                                            std::string label = {});
};

enum class Branch { Unstable, Stable };

struct GrowOptions {
    double arclength_budget = 10.0;
    double tol = 1e-9;       // sagitta tolerance for the flatness test
    double h_min = 1e-5;     // stop refining below this spacing; crossing merge radius
    double h_max = 0.02;     // maximal spacing between consecutive vertices
    double max_turn = 0.2;   // radians; per-segment turn bound driving refinement
    double seed_scale = 1e-6;
    int max_depth = 48;
};

struct ManifoldCurve {
    Branch branch = Branch::Unstable;
    int sign = +1;                       // which side of the eigenvector
    std::vector<Eigen::Vector2d> polyline;  // universal-cover coordinates; first point is the saddle
    double arclength = 0;
    bool partial = false;                // budget exhausted before reaching resolution
    PhaseSpace space = PhaseSpace::Torus2;
    bool on_fiber = false;               // blow-up fiber arcs: polyline holds (angle, 0)
};

// Fundamental-domain continuation: seeds on the eigenvector within
// seed length delta = seed_scale * (multiplier - 1) (clamped to
// [1e-9, 1e-5]), deeper points evaluated as g^k(seed) with adaptive
// insertion until the arclength budget. Seed offset error is O(delta^2).
ManifoldCurve grow_manifold(const PlaneMap& map, const SaddleRecord& saddle, Branch branch, int sign,
                            const GrowOptions& opts);

struct Crossing {
    Eigen::Vector2d point;  // reduced coordinates
    double angle = 0;       // crossing angle in (0, pi/2]
};

// All transverse polyline crossings with angle >= angle_min, computed after
// reduction by the space's identifications (uniform spatial hash over
// segments). Duplicates within h_min are merged. Fiber arcs never cross
// transversely (fiber x fiber pairs are tangential, fiber x surface pairs
// are disjoint off the exceptional set), so such pairs yield no crossings.
std::vector<Crossing> transverse_intersections(const ManifoldCurve& c1, const ManifoldCurve& c2, double angle_min,
                                               double merge_dist = 1e-5);

struct RelationEvidence {
    bool related = false;
    std::string reason;                  // "ok" or why the relation was not established
    std::vector<Crossing> uv_crossings;  // W^u(p) with W^s(q)
    std::vector<Crossing> vu_crossings;  // W^u(q) with W^s(p)
};

// Cyclic transversality test: true iff both crossing sets are nonempty
// within the budgets. A false result means "not found within budget".
RelationEvidence homoclinically_related(const PlaneMap& map, const SaddleRecord& p, const SaddleRecord& q,
                                        const GrowOptions& budgets, double angle_min);

struct IntersectionClassPartition {
    std::vector<SaddleRecord> saddles;
    std::vector<std::size_t> parent;  // union-find forest over saddle indices

    struct MergeEvidence {
        std::size_t i = 0, j = 0;
        bool direct = false;  // direct pairwise evidence vs transitive closure
        RelationEvidence relation;
    };
    std::vector<MergeEvidence> evidence;

    std::size_t find(std::size_t i) const;
    std::vector<std::vector<std::size_t>> classes() const;
};

// Union-find over pairwise homoclinically_related results; merges carry the
// recorded crossing evidence.
IntersectionClassPartition intersection_classes(const PlaneMap& map, std::vector<SaddleRecord> saddles,
                                                const GrowOptions& budgets, double angle_min);

struct ManifoldSizes {
    double stable = 0, unstable = 0;
};

// Numerical surrogate of the proximity criterion: both points must carry
// stable/unstable manifold-size estimates >= delta (checked), and the test
// returns d(x, y) <= eta. Predictions are meant to be cross-checked against
// homoclinically_related.
bool proximity_intersection_test(PhaseSpace space, const Eigen::Vector2d& x, const ManifoldSizes& sx,
                                 const Eigen::Vector2d& y, const ManifoldSizes& sy, double eta, double delta);

}  // namespace hypdyn
