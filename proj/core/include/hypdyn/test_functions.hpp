#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "hypdyn/measure.hpp"

namespace hypdyn {

// Ordered family {phi_1, ..., phi_K} with certified sup norms, defining the
// truncated weak* metric D_K. Distances are family-relative; reports carry
// the family name and the 2^{1-K} tail bound.
struct TestFunctionFamily {
    struct Fn {
        std::function<double(const Eigen::Vector2d&)> f;
        double sup_norm;
        std::string label;
    };

    PhaseSpace space = PhaseSpace::Torus2;
    std::string name;
    std::vector<Fn> functions;
    std::size_t truncation_K = 0;  // number of leading functions used by D_K

    double tail_bound() const;  // 2^{1-K}
    void validate() const;
};

// Real Fourier modes cos/sin(2 pi (k1 x + k2 y)) over frequency pairs with
// |k1|, |k2| <= kmax (one representative per +-(k1,k2)), ordered by
// |k1|+|k2| then lexicographically, cos before sin. Sup norms are exactly 1.
// kmax = 3 gives K = 48.
TestFunctionFamily torus_default_family(int kmax = 3);

// Modes trig(2 pi k x) * y^j * exp(-y^2 / (2 w^2)) on the cylinder, ordered
// by k + j then (k, j), cos before sin. Sup norms are estimated on a 400x400
// grid over [0,1) x [-y_extent, y_extent] with a 1.05 safety factor.
// Defaults kmax = 3, jmax = 4 give K = 35.
TestFunctionFamily cylinder_default_family(int kmax = 3, int jmax = 4, double window_w = 3.0,
                                           double y_extent = 3.0);

// Family lookup by config name ("torus-fourier" / "cylinder-windowed").
TestFunctionFamily make_family(const std::string& name, std::size_t K = 0);

}  // namespace hypdyn
