#include "hypdyn/measure.hpp"

#include <cmath>
#include <sstream>

namespace hypdyn {

std::string phase_space_name(PhaseSpace s) {
    return s == PhaseSpace::Torus2 ? "torus2" : "cylinder";
}

PhaseSpace phase_space_from_name(const std::string& name) {
    if (name == "torus2" || name == "torus") return PhaseSpace::Torus2;
    if (name == "cylinder") return PhaseSpace::Cylinder;
    throw ParameterError("unknown phase space: " + name);
}

double reduce_mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;  // floor rounding at exact integers
    return r;
}

static double circle_dist(double a, double b) {
    double d = std::fabs(reduce_mod1(a) - reduce_mod1(b));
    return std::min(d, 1.0 - d);
}

double phase_distance(PhaseSpace s, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    double dx = circle_dist(a.x(), b.x());
    double dy = s == PhaseSpace::Torus2 ? circle_dist(a.y(), b.y()) : std::fabs(a.y() - b.y());
    return std::hypot(dx, dy);
}

EmpiricalMeasure EmpiricalMeasure::dirac(PhaseSpace s, const Eigen::Vector2d& p) {
    EmpiricalMeasure mu;
    mu.space = s;
    mu.atoms.push_back({p, 1.0});
    mu.reduce_coordinates();
    return mu;
}

EmpiricalMeasure EmpiricalMeasure::uniform(PhaseSpace s, const std::vector<Eigen::Vector2d>& pts) {
    if (pts.empty()) throw ParameterError("uniform measure on empty point set");
    EmpiricalMeasure mu;
    mu.space = s;
    const double w = 1.0 / static_cast<double>(pts.size());
    for (const auto& p : pts) mu.atoms.push_back({p, w});
    mu.reduce_coordinates();
    return mu;
}

double EmpiricalMeasure::total_weight() const {
    double s = 0, c = 0;  // Kahan
    for (const auto& a : atoms) {
        double y = a.weight - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

void EmpiricalMeasure::validate() const {
    for (const auto& a : atoms) {
        if (!(a.weight >= 0)) throw PreconditionError("EmpiricalMeasure: negative weight");
        if (a.point.x() < 0 || a.point.x() >= 1) throw PreconditionError("EmpiricalMeasure: x not reduced to [0,1)");
        if (space == PhaseSpace::Torus2 && (a.point.y() < 0 || a.point.y() >= 1))
            throw PreconditionError("EmpiricalMeasure: y not reduced to [0,1)");
    }
    if (std::fabs(total_weight() - 1.0) > 1e-12) throw PreconditionError("EmpiricalMeasure: weights do not sum to 1");
}

void EmpiricalMeasure::reduce_coordinates() {
    for (auto& a : atoms) {
        a.point.x() = reduce_mod1(a.point.x());
        if (space == PhaseSpace::Torus2) a.point.y() = reduce_mod1(a.point.y());
    }
}

void ConvexWeights::validate() const {
    double sum = 0;
    for (double v : s) {
        if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError("ConvexWeights: entry outside [0,1]");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw PreconditionError("ConvexWeights: sum != 1");
}

double integrate(const EmpiricalMeasure& mu, const std::function<double(const Eigen::Vector2d&)>& phi) {
    double s = 0, c = 0;
    for (const auto& a : mu.atoms) {
        double y = a.weight * phi(a.point) - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

EmpiricalMeasure convex_combine(const std::vector<EmpiricalMeasure>& measures, const ConvexWeights& w) {
    if (measures.empty()) throw ParameterError("convex_combine: no measures");
    if (measures.size() != w.s.size()) throw ParameterError("convex_combine: weight/measure count mismatch");
    w.validate();
    EmpiricalMeasure out;
    out.space = measures.front().space;
    for (std::size_t j = 0; j < measures.size(); ++j) {
        if (measures[j].space != out.space) throw ParameterError("convex_combine: phase space mismatch");
        for (const auto& a : measures[j].atoms) out.atoms.push_back({a.point, w.s[j] * a.weight});
    }
    return out;
}

std::string measure_to_csv(const EmpiricalMeasure& mu) {
    std::ostringstream os;
    os.precision(17);
    os << "weight,x,y\n";
    for (const auto& a : mu.atoms) os << a.weight << "," << a.point.x() << "," << a.point.y() << "\n";
    return os.str();
}

EmpiricalMeasure measure_from_csv(const std::string& text, PhaseSpace space) {
    EmpiricalMeasure mu;
    mu.space = space;
    std::istringstream is(text);
    std::string line;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && line.rfind("weight", 0) == 0) continue;
        std::istringstream ls(line);
        std::string f1, f2, f3;
        if (!std::getline(ls, f1, ',') || !std::getline(ls, f2, ',') || !std::getline(ls, f3, ','))
            throw ParseError("measure CSV: expected weight,x,y", lineno);
        try {
            mu.atoms.push_back({Eigen::Vector2d(std::stod(f2), std::stod(f3)), std::stod(f1)});
        } catch (const std::exception&) {
            throw ParseError("measure CSV: malformed number", lineno);
        }
    }
    mu.reduce_coordinates();
    return mu;
}

}  // namespace hypdyn
