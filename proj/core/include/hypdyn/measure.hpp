#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "hypdyn/errors.hpp"

namespace hypdyn {

// Phase spaces the atomic measures live on. Torus2 reduces both coordinates
// mod 1 into [0,1); Cylinder (S^1 x R) reduces only x.
enum class PhaseSpace { Torus2, Cylinder };

std::string phase_space_name(PhaseSpace s);
PhaseSpace phase_space_from_name(const std::string& name);

double reduce_mod1(double x);

// Distance respecting the identifications of the space.
double phase_distance(PhaseSpace s, const Eigen::Vector2d& a, const Eigen::Vector2d& b);

struct EmpiricalMeasure {
    struct Atom {
        Eigen::Vector2d point;
        double weight;
    };

    PhaseSpace space = PhaseSpace::Torus2;
    std::vector<Atom> atoms;

    static EmpiricalMeasure dirac(PhaseSpace s, const Eigen::Vector2d& p);
    static EmpiricalMeasure uniform(PhaseSpace s, const std::vector<Eigen::Vector2d>& pts);

    double total_weight() const;
    // weights nonnegative and summing to 1 within 1e-12; coordinates reduced
    void validate() const;
    void reduce_coordinates();
};

struct ConvexWeights {
    std::vector<double> s;
    void validate() const;  // entries in [0,1], sum 1 within 1e-12
};

// Exact weighted sum  sum_i w_i phi(x_i).
double integrate(const EmpiricalMeasure& mu, const std::function<double(const Eigen::Vector2d&)>& phi);

// Atom union with weights scaled by s_j.
EmpiricalMeasure convex_combine(const std::vector<EmpiricalMeasure>& measures, const ConvexWeights& s);

// CSV: header "weight,x,y", one atom per row. JSON: {"space":..., "atoms":[[w,x,y],...]}.
std::string measure_to_csv(const EmpiricalMeasure& mu);
EmpiricalMeasure measure_from_csv(const std::string& text, PhaseSpace space);

}  // namespace hypdyn
