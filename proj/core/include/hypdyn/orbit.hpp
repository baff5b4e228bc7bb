#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "hypdyn/errors.hpp"

namespace hypdyn {

// Orbit segment x_0..x_n with the derivative J_i of the map at x_i,
// i = 0..n-1. A periodic orbit stores exactly one period: points.size() ==
// jacobians.size() == pi and indices wrap. Non-periodic segments store one
// more point than Jacobians.
struct OrbitSegment {
    std::vector<Eigen::VectorXd> points;
    std::vector<Eigen::MatrixXd> jacobians;
    std::optional<std::size_t> period;

    std::size_t dim() const { return points.empty() ? 0 : static_cast<std::size_t>(points.front().size()); }
    std::size_t steps() const { return jacobians.size(); }
    bool periodic() const { return period.has_value(); }

    const Eigen::VectorXd& point(std::size_t i) const {
        return periodic() ? points[i % points.size()] : points[i];
    }
    const Eigen::MatrixXd& jac(std::size_t i) const {
        return periodic() ? jacobians[i % jacobians.size()] : jacobians[i];
    }

    // Jacobians invertible (|det| > det_tol), sizes consistent, period wiring.
    void validate(double det_tol = 1e-12) const;
};

// Per-point orthonormal bases of the two subbundles E (dim_E columns) and
// F. frames are indexed like orbit points.
struct SplittingFrame {
    std::vector<Eigen::MatrixXd> E, F;

    std::size_t dim_E() const { return E.empty() ? 0 : static_cast<std::size_t>(E.front().cols()); }
    std::size_t dim_F() const { return F.empty() ? 0 : static_cast<std::size_t>(F.front().cols()); }

    const Eigen::MatrixXd& basis(bool want_E, std::size_t i, bool periodic) const {
        const auto& v = want_E ? E : F;
        return periodic ? v[i % v.size()] : v[i];
    }

    // max over points of the subspace distance between df(E_x) and E_{f(x)}
    // (same for F); the df-equivariance residual of the frame.
    double equivariance_residual(const OrbitSegment& orbit) const;

    // Constant splitting from fixed subspace bases.
    static SplittingFrame constant(std::size_t n_points, const Eigen::MatrixXd& E0, const Eigen::MatrixXd& F0);

    // d = 2 periodic orbits: eigenvectors of the one-period return product
    // (E = contracting, F = expanding), transported by df along the orbit.
    static SplittingFrame from_periodic_eigenvectors(const OrbitSegment& orbit);

    // d = 2 non-periodic segments: forward/backward power iteration with
    // warm-up steps (F from pushing a generic vector forward, E backward).
    static SplittingFrame from_power_iteration(const OrbitSegment& orbit, int warmup = 200);
};

// chi, gamma, N, Cf of the hyperbolic-time machinery; gamma < chi, Cf >= 1.
struct HyperbolicityEstimate {
    double chi = 0;
    double gamma = 0;
    int N = 1;
    double Cf = 1;

    void validate() const {
        if (!(chi > 0 && gamma > 0 && gamma < chi)) throw ParameterError("HyperbolicityEstimate: need 0 < gamma < chi");
        if (N < 1) throw ParameterError("HyperbolicityEstimate: N >= 1 required");
        if (!(Cf >= 1)) throw ParameterError("HyperbolicityEstimate: Cf >= 1 required");
    }
};

}  // namespace hypdyn
