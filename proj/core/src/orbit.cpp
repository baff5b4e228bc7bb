#include "hypdyn/orbit.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hypdyn {

void OrbitSegment::validate(double det_tol) const {
    if (points.empty()) throw PreconditionError("OrbitSegment: no points");
    const auto d = points.front().size();
    for (const auto& p : points)
        if (p.size() != d) throw PreconditionError("OrbitSegment: inconsistent point dimension");
    for (const auto& J : jacobians) {
        if (J.rows() != d || J.cols() != d) throw PreconditionError("OrbitSegment: Jacobian shape mismatch");
        if (std::fabs(J.determinant()) <= det_tol) throw PreconditionError("OrbitSegment: singular Jacobian");
    }
    if (periodic()) {
        if (*period != jacobians.size() || points.size() != jacobians.size())
            throw PreconditionError("OrbitSegment: periodic orbit must store exactly one period");
    } else if (points.size() != jacobians.size() + 1) {
        throw PreconditionError("OrbitSegment: segment needs points = jacobians + 1");
    }
}

namespace {

// Largest principal angle (as a distance) between the column spans.
double subspace_distance(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd QA = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ() *
                         Eigen::MatrixXd::Identity(A.rows(), A.cols());
    Eigen::MatrixXd QB = Eigen::HouseholderQR<Eigen::MatrixXd>(B).householderQ() *
                         Eigen::MatrixXd::Identity(B.rows(), B.cols());
    // distance = || QA QA^T - QB QB^T ||_2
    Eigen::MatrixXd D = QA * QA.transpose() - QB * QB.transpose();
    return D.operatorNorm();
}

Eigen::MatrixXd orthonormalized(const Eigen::MatrixXd& A) {
    return Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ() *
           Eigen::MatrixXd::Identity(A.rows(), A.cols());
}

}  // namespace

double SplittingFrame::equivariance_residual(const OrbitSegment& orbit) const {
    double worst = 0;
    const std::size_t n = orbit.steps();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = orbit.periodic() ? (i + 1) % n : i + 1;
        worst = std::max(worst, subspace_distance(orbit.jac(i) * basis(true, i, orbit.periodic()),
                                                  basis(true, next, orbit.periodic())));
        worst = std::max(worst, subspace_distance(orbit.jac(i) * basis(false, i, orbit.periodic()),
                                                  basis(false, next, orbit.periodic())));
    }
    return worst;
}

SplittingFrame SplittingFrame::constant(std::size_t n_points, const Eigen::MatrixXd& E0, const Eigen::MatrixXd& F0) {
    SplittingFrame f;
    f.E.assign(n_points, orthonormalized(E0));
    f.F.assign(n_points, orthonormalized(F0));
    return f;
}

SplittingFrame SplittingFrame::from_periodic_eigenvectors(const OrbitSegment& orbit) {
    if (!orbit.periodic()) throw ParameterError("from_periodic_eigenvectors: orbit not periodic");
    if (orbit.dim() != 2) throw ParameterError("from_periodic_eigenvectors: implemented for d = 2");
    const std::size_t pi = *orbit.period;

    // one-period product, rescaled to avoid overflow (directions only matter)
    Eigen::Matrix2d P = Eigen::Matrix2d::Identity();
    for (std::size_t i = 0; i < pi; ++i) {
        P = orbit.jac(i) * P;
        P /= P.cwiseAbs().maxCoeff();
    }
    Eigen::EigenSolver<Eigen::Matrix2d> es(P);
    if (es.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-9 * es.eigenvalues().real().cwiseAbs().maxCoeff())
        throw PreconditionError("from_periodic_eigenvectors: complex return-map eigenvalues");
    int stable = std::fabs(es.eigenvalues()(0).real()) < std::fabs(es.eigenvalues()(1).real()) ? 0 : 1;
    Eigen::Vector2d e0 = es.eigenvectors().col(stable).real().normalized();
    Eigen::Vector2d f0 = es.eigenvectors().col(1 - stable).real().normalized();

    SplittingFrame fr;
    fr.E.resize(pi);
    fr.F.resize(pi);
    fr.E[0] = e0;
    fr.F[0] = f0;
    for (std::size_t i = 1; i < pi; ++i) {
        fr.E[i] = (orbit.jac(i - 1) * fr.E[i - 1]).normalized();
        fr.F[i] = (orbit.jac(i - 1) * fr.F[i - 1]).normalized();
    }
    return fr;
}

SplittingFrame SplittingFrame::from_power_iteration(const OrbitSegment& orbit, int warmup) {
    if (orbit.dim() != 2) throw ParameterError("from_power_iteration: implemented for d = 2");
    const std::size_t n = orbit.steps();
    const std::size_t npts = orbit.points.size();
    SplittingFrame fr;
    fr.E.resize(npts);
    fr.F.resize(npts);

    // F_x: push a generic vector forward from warmup steps in the past
    // (wrapping for periodic orbits, clamping for segments).
    auto jac_at = [&](long i) -> Eigen::Matrix2d {
        if (orbit.periodic()) {
            long m = static_cast<long>(n);
            return orbit.jacobians[((i % m) + m) % m];
        }
        return orbit.jacobians[std::clamp<long>(i, 0, static_cast<long>(n) - 1)];
    };

    for (std::size_t idx = 0; idx < npts; ++idx) {
        Eigen::Vector2d v(1.0, 0.37215);  // generic direction
        for (long s = static_cast<long>(idx) - warmup; s < static_cast<long>(idx); ++s) v = (jac_at(s) * v).normalized();
        fr.F[idx] = v;
        Eigen::Vector2d w(0.21931, 1.0);
        for (long s = static_cast<long>(idx) + warmup - 1; s >= static_cast<long>(idx); --s)
            w = (jac_at(s).inverse() * w).normalized();
        fr.E[idx] = w;
    }
    return fr;
}

}  // namespace hypdyn
