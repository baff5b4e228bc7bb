#pragma once

#include <Eigen/Core>

#include "hypdyn/measure.hpp"

namespace hypdyn {

// Invertible 2D map with derivative, as consumed by the manifold machinery.
// apply/apply_inverse act on universal-cover coordinates (no mod-1
// reduction); topology() says which coordinates are to be identified when
// curves are reduced for crossing detection.
class PlaneMap {
  public:
    virtual ~PlaneMap() = default;
    virtual Eigen::Vector2d apply(const Eigen::Vector2d& p) const = 0;
    virtual Eigen::Vector2d apply_inverse(const Eigen::Vector2d& p) const = 0;
    virtual Eigen::Matrix2d jacobian(const Eigen::Vector2d& p) const = 0;
    virtual PhaseSpace topology() const = 0;
};

}  // namespace hypdyn
