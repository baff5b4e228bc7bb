#include "hypdyn/figure8.hpp"

#include <cmath>

namespace hypdyn {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPi = 4 * kPi;

inline double force(double x) { return -kFourPi * std::sin(kFourPi * x); }         // -dH/dx
inline double force_deriv(double x) { return -kFourPi * kFourPi * std::cos(kFourPi * x); }
}  // namespace

Figure8System::Figure8System(int substeps_M) : M_(substeps_M) {
    if (substeps_M < 1) throw ParameterError("Figure8System: substeps_M >= 1 required");
}

double Figure8System::hamiltonian(const Eigen::Vector2d& p) {
    return p.y() * p.y() - std::cos(kFourPi * p.x());
}

double Figure8System::saddle_exponent() { return std::sqrt(32.0) * kPi; }

Figure8System::Time1Result Figure8System::time1(const Eigen::Vector2d& p) const {
    const double h = step();
    double x = p.x(), y = p.y();
    Eigen::Matrix2d J = Eigen::Matrix2d::Identity();
    const double H0 = hamiltonian(p);
    for (int s = 0; s < M_; ++s) {
        // kick: y += (h/2) force(x); tangent row-op is an exact shear
        double k = 0.5 * h * force_deriv(x);
        J.row(1) += k * J.row(0);
        y += 0.5 * h * force(x);
        // drift: x += h * 2y
        J.row(0) += (2 * h) * J.row(1);
        x += h * 2 * y;
        // kick
        k = 0.5 * h * force_deriv(x);
        J.row(1) += k * J.row(0);
        y += 0.5 * h * force(x);
    }
    Eigen::Vector2d q(x, y);
    return {q, J, std::fabs(hamiltonian(q) - H0)};
}

Eigen::Vector2d Figure8System::apply(const Eigen::Vector2d& p) const {
    const double h = step();
    double x = p.x(), y = p.y();
    for (int s = 0; s < M_; ++s) {
        y += 0.5 * h * force(x);
        x += h * 2 * y;
        y += 0.5 * h * force(x);
    }
    return {x, y};
}

Eigen::Vector2d Figure8System::apply_inverse(const Eigen::Vector2d& p) const {
    // kick-drift-kick with step -h inverts the forward composition factor by factor
    const double h = -step();
    double x = p.x(), y = p.y();
    for (int s = 0; s < M_; ++s) {
        y += 0.5 * h * force(x);
        x += h * 2 * y;
        y += 0.5 * h * force(x);
    }
    return {x, y};
}

Eigen::Matrix2d Figure8System::jacobian(const Eigen::Vector2d& p) const { return time1(p).jacobian; }

Eigen::Vector2d level_curve_start(double eps) {
    if (!(eps > 0 && eps < 1)) throw ParameterError("level_curve_start: eps in (0,1) required");
    // H(x,0) = -cos(4 pi x); positive at 1/4+, negative at 1/2
    double lo = 0.25 + 1e-15, hi = 0.5;
    auto g = [eps](double x) { return -std::cos(kFourPi * x) - (1 - eps); };
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0 ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), 0.0};
}

LevelCurveRun run_level_curve(const Figure8System& sys, double eps, long long T) {
    if (T < 1) throw ParameterError("run_level_curve: T >= 1 required");
    LevelCurveRun out;
    out.start = level_curve_start(eps);
    const double target = 1.0 - eps;

    std::vector<Eigen::Vector2d> pts;
    pts.reserve(static_cast<std::size_t>(T) + 1);
    pts.push_back(out.start);

    // tangent growth, rescaled to avoid overflow
    Eigen::Vector2d v(1.0, 0.0);
    double log_growth = 0;

    // least-squares slope of H(t) accumulated in one pass:
    // slope = (sum t H - n tbar Hbar) / (sum t^2 - n tbar^2), with Kahan sums
    double sH = 0, cH = 0, stH = 0, ctH = 0;
    auto kadd = [](double& s, double& c, double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    };

    Eigen::Vector2d p = out.start;
    double H0 = Figure8System::hamiltonian(p);
    kadd(sH, cH, H0);
    out.max_level_deviation = std::fabs(H0 - target);
    for (long long t = 1; t <= T; ++t) {
        auto r = sys.time1(p);
        p = r.point;
        pts.push_back(p);
        v = r.jacobian * v;
        const double nv = v.norm();
        log_growth += std::log(nv);
        v /= nv;
        const double Ht = Figure8System::hamiltonian(p);
        kadd(sH, cH, Ht);
        kadd(stH, ctH, double(t) * Ht);
        out.max_level_deviation = std::max(out.max_level_deviation, std::fabs(Ht - target));
        out.max_step_drift = std::max(out.max_step_drift, r.energy_drift);
    }
    const double n = double(T) + 1;
    const double tbar = double(T) / 2.0;
    const double sum_t2 = double(T) * (double(T) + 1) * (2.0 * double(T) + 1) / 6.0;
    out.drift_slope = (stH - n * tbar * (sH / n)) / (sum_t2 - n * tbar * tbar);
    out.drift_endpoint = std::fabs(Figure8System::hamiltonian(p) - H0) / double(T);
    out.finite_time_exponent = log_growth / double(T);
    out.measure = EmpiricalMeasure::uniform(PhaseSpace::Cylinder, pts);
    return out;
}

std::pair<OrbitSegment, SplittingFrame> level_curve_segment(const Figure8System& sys, double eps, int length) {
    OrbitSegment seg;
    SplittingFrame frame;
    Eigen::Vector2d p = level_curve_start(eps);
    for (int i = 0; i <= length; ++i) {
        seg.points.push_back(p);
        // E = flow direction, F = its normal (not df-invariant; the
        // level-curve probe only feeds the domination check)
        Eigen::Vector2d tangent(2 * p.y(), force(p.x()));
        if (tangent.norm() < 1e-12) tangent = Eigen::Vector2d(1, 0);
        tangent.normalize();
        frame.E.push_back(tangent);
        frame.F.push_back(Eigen::Vector2d(-tangent.y(), tangent.x()));
        if (i < length) {
            auto r = sys.time1(p);
            seg.jacobians.push_back(r.jacobian);
            p = r.point;
        }
    }
    return {std::move(seg), std::move(frame)};
}

}  // namespace hypdyn
