#include "hypdyn/cat_map.hpp"

#include <cmath>

namespace hypdyn {

Eigen::Vector2d RationalPoint::to_centered() const {
    auto center = [this](long long n) {
        long long r = ((n % q) + q) % q;
        double x = double(r) / double(q);
        return x >= 0.5 ? x - 1.0 : x;
    };
    return {center(i), center(j)};
}

CatMap::CatMap(long long a_, long long b_, long long c_, long long d_) : a(a_), b(b_), c(c_), d(d_) {
    if (a * d - b * c != 1) throw ParameterError("CatMap: determinant must be exactly 1");
    if (std::llabs(a + d) <= 2) throw ParameterError("CatMap: |trace| > 2 required (hyperbolic)");
    if (b == 0) throw ParameterError("CatMap: b != 0 required for the slope conventions");
}

double CatMap::lambda() const {
    const double t = double(trace());
    return (std::fabs(t) + std::sqrt(t * t - 4)) / 2;
}

Eigen::Matrix2d CatMap::matrix() const {
    Eigen::Matrix2d M;
    M << double(a), double(b), double(c), double(d);
    return M;
}

Eigen::Matrix2d CatMap::inverse_matrix() const {
    Eigen::Matrix2d M;
    M << double(d), double(-b), double(-c), double(a);
    return M;
}

double CatMap::unstable_slope() const { return (lambda() - double(a)) / double(b); }
double CatMap::stable_slope() const { return (1.0 / lambda() - double(a)) / double(b); }

Eigen::Vector2d CatMap::unstable_direction() const {
    return Eigen::Vector2d(1.0, unstable_slope()).normalized();
}
Eigen::Vector2d CatMap::stable_direction() const {
    return Eigen::Vector2d(1.0, stable_slope()).normalized();
}

Eigen::Vector2d CatMap::apply(const Eigen::Vector2d& x) const {
    Eigen::Vector2d y = matrix() * x;
    return {reduce_mod1(y.x()), reduce_mod1(y.y())};
}

RationalPoint CatMap::apply(const RationalPoint& x) const {
    auto mod = [&](long long n) { return ((n % x.q) + x.q) % x.q; };
    return {mod(a * x.i + b * x.j), mod(c * x.i + d * x.j), x.q};
}

OrbitSegment PeriodicOrbitRecord::to_orbit_segment(const CatMap& m) const {
    OrbitSegment seg;
    seg.period = period;
    for (const auto& p : points) seg.points.push_back(p.to_double());
    seg.jacobians.assign(period, m.matrix());
    return seg;
}

static PeriodicOrbitRecord make_record(const CatMap& m, std::vector<RationalPoint> pts) {
    PeriodicOrbitRecord rec;
    rec.representative = pts.front();
    rec.period = pts.size();
    const double ll = std::log(m.lambda());
    rec.exponents = {-ll, ll};  // constant derivative A along the orbit
    std::vector<Eigen::Vector2d> dp;
    dp.reserve(pts.size());
    for (const auto& p : pts) dp.push_back(p.to_double());
    rec.measure = EmpiricalMeasure::uniform(PhaseSpace::Torus2, dp);
    rec.points = std::move(pts);
    return rec;
}

std::vector<PeriodicOrbitRecord> cat_periodic_orbits(const CatMap& m, long long q) {
    if (q < 1) throw ParameterError("cat_periodic_orbits: q >= 1 required");
    std::vector<char> visited(static_cast<std::size_t>(q * q), 0);
    std::vector<PeriodicOrbitRecord> out;
    for (long long i = 0; i < q; ++i) {
        for (long long j = 0; j < q; ++j) {
            if (visited[static_cast<std::size_t>(i * q + j)]) continue;
            std::vector<RationalPoint> orbit;
            RationalPoint p{i, j, q};
            while (!visited[static_cast<std::size_t>(p.i * q + p.j)]) {
                visited[static_cast<std::size_t>(p.i * q + p.j)] = 1;
                orbit.push_back(p);
                p = m.apply(p);
            }
            out.push_back(make_record(m, std::move(orbit)));
        }
    }
    return out;
}

PeriodicOrbitRecord cat_orbit_through(const CatMap& m, long long q) {
    if (q < 1) throw ParameterError("cat_orbit_through: q >= 1 required");
    std::vector<RationalPoint> orbit;
    RationalPoint start{1 % q, 0, q};
    RationalPoint p = start;
    do {
        orbit.push_back(p);
        p = m.apply(p);
    } while (!(p.i == start.i && p.j == start.j));
    return make_record(m, std::move(orbit));
}

}  // namespace hypdyn
