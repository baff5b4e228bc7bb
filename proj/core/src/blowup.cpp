#include "hypdyn/blowup.hpp"

#include <cmath>
#include <random>

namespace hypdyn {

namespace {
constexpr double kPi = 3.14159265358979323846;

double angle_dist_rp1(double a, double b) {
    double d = std::fabs(a - b);
    d = std::fmod(d, kPi);
    return std::min(d, kPi - d);
}

Eigen::Vector2d center(const Eigen::Vector2d& p) {
    auto c = [](double x) {
        double r = reduce_mod1(x);
        return r >= 0.5 ? r - 1.0 : r;
    };
    return {c(p.x()), c(p.y())};
}
}  // namespace

BlowupPoint BlowupPoint::torus(const Eigen::Vector2d& centered) {
    if (centered.x() == 0.0 && centered.y() == 0.0)
        throw ParameterError("BlowupPoint: the origin is not a point of the blown-up surface");
    BlowupPoint p;
    p.rep = center(centered);
    return p;
}

BlowupPoint BlowupPoint::fiber(int chart, double coord) {
    if (chart != 1 && chart != 2) throw ParameterError("BlowupPoint: chart must be 1 or 2");
    BlowupPoint p;
    // canonical form: |coord| <= 1 (switch chart via coord -> 1/coord)
    if (std::fabs(coord) > 1.0) {
        chart = chart == 1 ? 2 : 1;
        coord = 1.0 / coord;
    }
    p.rep = Exceptional{chart, coord};
    return p;
}

double BlowupPoint::direction_angle() const {
    if (on_fiber()) {
        const auto& e = fiber_point();
        double ang = e.chart == 1 ? std::atan(e.coord) : std::atan2(1.0, e.coord);
        ang = std::fmod(ang, kPi);
        return ang < 0 ? ang + kPi : ang;
    }
    const auto& xy = torus_point();
    double ang = std::atan2(xy.y(), xy.x());
    ang = std::fmod(ang, kPi);
    return ang < 0 ? ang + kPi : ang;
}

double BlowupMap::fiber_apply_chart1(double u) const {
    return (double(m_.c) + double(m_.d) * u) / (double(m_.a) + double(m_.b) * u);
}

BlowupMap::ChartPoint BlowupMap::chart_apply(const ChartPoint& p) const {
    const double a = double(m_.a), b = double(m_.b), c = double(m_.c), d = double(m_.d);
    double t = p.tc.x(), w = p.tc.y();
    // image of the underlying point in (x', y') split through the chart factor
    double fx, fy;  // x' = fx * t, y' = fy * t
    if (p.chart == 1) {  // point (t, w t)
        fx = a + b * w;
        fy = c + d * w;
    } else {  // point (w t, t)
        fx = a * w + b;
        fy = c * w + d;
    }
    // pick the image chart by the dominant component (poles switch charts)
    if (std::fabs(fx) >= std::fabs(fy)) {
        return {1, {t * fx, fy / fx}};
    }
    return {2, {t * fy, fx / fy}};
}

Eigen::Matrix2d BlowupMap::chart_jacobian_numeric(const ChartPoint& p, double h) const {
    // map images into the chart of chart_apply(p) so differences are smooth
    const ChartPoint base = chart_apply(p);
    auto eval = [&](double dt, double dw) {
        ChartPoint q{p.chart, {p.tc.x() + dt, p.tc.y() + dw}};
        ChartPoint im = chart_apply(q);
        if (im.chart != base.chart) {  // convert (t,w) -> (t*w, 1/w) into the other chart
            im = {base.chart, {im.tc.x() * im.tc.y(), 1.0 / im.tc.y()}};
        }
        return im.tc;
    };
    Eigen::Matrix2d J;
    for (int var = 0; var < 2; ++var) {
        auto at = [&](double s) { return var == 0 ? eval(s, 0.0) : eval(0.0, s); };
        Eigen::Vector2d der = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
        J.col(var) = der;
    }
    return J;
}

BlowupPoint BlowupMap::apply(const BlowupPoint& p) const {
    if (!p.on_fiber()) return BlowupPoint::torus(m_.apply(p.torus_point()));
    const auto& e = p.fiber_point();
    ChartPoint im = chart_apply({e.chart, {0.0, e.coord}});
    return BlowupPoint::fiber(im.chart, im.tc.y());
}

BlowupPoint BlowupMap::apply_inverse(const BlowupPoint& p) const {
    CatMap inv;
    inv.a = m_.d;
    inv.b = -m_.b;
    inv.c = -m_.c;
    inv.d = m_.a;
    BlowupMap bi(inv);
    return bi.apply(p);
}

std::pair<BlowupFixedPoint, BlowupFixedPoint> blowup_fixed_points(const CatMap& m) {
    // b u^2 + (a-d) u - c = 0
    const double a = double(m.a), b = double(m.b), c = double(m.c), d = double(m.d);
    const double disc = (a - d) * (a - d) + 4 * b * c;
    const double sq = std::sqrt(disc);
    const double lam = m.lambda();

    auto make = [&](double u, bool unstable) {
        BlowupFixedPoint fp;
        BlowupPoint bp = BlowupPoint::fiber(1, u);
        fp.chart = bp.fiber_point().chart;
        fp.coord = bp.fiber_point().coord;
        fp.angle = bp.direction_angle();
        // transverse multiplier a + b u; along the fiber det / (a + b u)^2
        const double transv = a + b * u;
        fp.eigenvalues = {transv, 1.0 / (transv * transv)};
        (void)unstable;
        (void)lam;
        return fp;
    };

    const double u_plus = ((d - a) + sq) / (2 * b);
    const double u_minus = ((d - a) - sq) / (2 * b);
    // the unstable eigendirection satisfies a + b u = lambda
    const bool plus_is_unstable = std::fabs((a + b * u_plus) - lam) < std::fabs((a + b * u_minus) - lam);
    BlowupFixedPoint p1 = make(plus_is_unstable ? u_plus : u_minus, true);
    BlowupFixedPoint p2 = make(plus_is_unstable ? u_minus : u_plus, false);
    return {p1, p2};
}

double blowup_fixed_point_distance(const BlowupPoint& p, const BlowupFixedPoint& fp) {
    const double dang = angle_dist_rp1(p.direction_angle(), fp.angle);
    if (p.on_fiber()) return dang;
    return std::hypot(p.torus_point().norm(), dang);
}

LiftedOrbit blowup_lift_orbit(const CatMap& m, const PeriodicOrbitRecord& orbit, double radius) {
    LiftedOrbit out;
    out.exponents = orbit.exponents;
    auto [p1, p2] = blowup_fixed_points(m);
    out.occupation.radius = radius;
    for (const auto& rp : orbit.points) {
        if (rp.i % rp.q == 0 && rp.j % rp.q == 0)
            throw ParameterError("blowup_lift_orbit: orbit passes through the blown-up fixed point");
        BlowupPoint bp = BlowupPoint::torus(rp.to_centered());
        if (blowup_fixed_point_distance(bp, p1) <= radius) ++out.occupation.count_p1;
        if (blowup_fixed_point_distance(bp, p2) <= radius) ++out.occupation.count_p2;
        out.points.push_back(std::move(bp));
    }
    const double c1 = double(out.occupation.count_p1), c2 = double(out.occupation.count_p2);
    out.occupation.ratio = c2 > 0 ? c1 / c2 : (c1 > 0 ? std::numeric_limits<double>::infinity()
                                                      : std::numeric_limits<double>::quiet_NaN());
    out.occupation.deviation = (c1 > 0 && c2 > 0) ? std::max(c1 / c2, c2 / c1)
                                                  : std::numeric_limits<double>::infinity();
    return out;
}

namespace {

// Arc of the exceptional fiber swept by iterating a fiber point from near
// `from` toward `towards` (exclusive); angles accumulate monotonically.
ManifoldCurve grow_fiber_arc(const BlowupMap& f, bool backward, const BlowupFixedPoint& from,
                             const BlowupFixedPoint& towards, double seed_angle) {
    ManifoldCurve arc;
    arc.on_fiber = true;
    arc.branch = backward ? Branch::Stable : Branch::Unstable;
    arc.polyline.emplace_back(from.angle, 0.0);
    for (double side : {+1.0, -1.0}) {
        BlowupPoint p = BlowupPoint::fiber(1, std::tan(from.angle + side * seed_angle));
        for (int it = 0; it < 512; ++it) {
            p = backward ? f.apply_inverse(p) : f.apply(p);
            arc.polyline.emplace_back(p.direction_angle(), 0.0);
            if (angle_dist_rp1(p.direction_angle(), towards.angle) < 1e-12) break;
        }
    }
    arc.arclength = 0;
    for (std::size_t i = 0; i + 1 < arc.polyline.size(); ++i)
        arc.arclength += angle_dist_rp1(arc.polyline[i].x(), arc.polyline[i + 1].x());
    return arc;
}

}  // namespace

BlowupManifolds blowup_grow_manifolds(const CatMap& m, const GrowOptions& opts) {
    CatPlaneMap plane(m);
    SaddleRecord origin = SaddleRecord::from_periodic_point(plane, {0.0, 0.0}, 1, "torus-fixed-point");
    auto [p1, p2] = blowup_fixed_points(m);
    BlowupMap f(m);

    auto lifted = [&](Branch b, int sign) {
        ManifoldCurve c = grow_manifold(plane, origin, b, sign, opts);
        // the blown-up point is not on the surface: drop the origin vertex
        if (!c.polyline.empty() && c.polyline.front().norm() == 0.0) c.polyline.erase(c.polyline.begin());
        return c;
    };

    BlowupManifolds out;
    out.wu_p1_pos = lifted(Branch::Unstable, +1);
    out.wu_p1_neg = lifted(Branch::Unstable, -1);
    out.ws_p2_pos = lifted(Branch::Stable, +1);
    out.ws_p2_neg = lifted(Branch::Stable, -1);
    out.ws_p1 = grow_fiber_arc(f, true, p1, p2, 1e-6);
    out.wu_p2 = grow_fiber_arc(f, false, p2, p1, 1e-6);
    return out;
}

BlowupClassReport blowup_intersection_classes(const CatMap& m, const GrowOptions& opts, double angle_min) {
    BlowupClassReport rep;
    BlowupManifolds mf = blowup_grow_manifolds(m, opts);

    // W^u(p1) vs W^s(p2): torus curves, genuine transverse crossings
    for (const auto* cu : {&mf.wu_p1_pos, &mf.wu_p1_neg})
        for (const auto* cs : {&mf.ws_p2_pos, &mf.ws_p2_neg}) {
            auto cr = transverse_intersections(*cu, *cs, angle_min, opts.h_min);
            rep.relation.uv_crossings.insert(rep.relation.uv_crossings.end(), cr.begin(), cr.end());
        }
    // W^u(p2) vs W^s(p1): two fiber arcs, tangential along C
    for (const auto* cu : {&mf.wu_p2})
        for (const auto* cs : {&mf.ws_p1}) {
            auto cr = transverse_intersections(*cu, *cs, angle_min, opts.h_min);
            rep.relation.vu_crossings.insert(rep.relation.vu_crossings.end(), cr.begin(), cr.end());
        }
    rep.relation.related = !rep.relation.uv_crossings.empty() && !rep.relation.vu_crossings.empty();
    rep.relation.reason = rep.relation.related
                              ? "ok"
                              : "no transverse crossing above threshold found within budget (W^u(p2) and W^s(p1) "
                                "are fiber arcs, meeting only tangentially)";
    if (rep.relation.related) {
        rep.classes = {{0, 1}};
    } else {
        rep.classes = {{0}, {1}};
    }
    return rep;
}

double blowup_conjugacy_residual(const CatMap& m, int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    BlowupMap f(m);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        Eigen::Vector2d x(unif(rng), unif(rng));
        if (x.norm() < 1e-6) continue;  // stay off the blown-up point itself
        // route 1: down on the torus
        Eigen::Vector2d direct = m.apply(x);
        // route 2: through chart coordinates
        BlowupMap::ChartPoint cp = std::fabs(x.x()) >= std::fabs(x.y())
                                       ? BlowupMap::ChartPoint{1, {x.x(), x.y() / x.x()}}
                                       : BlowupMap::ChartPoint{2, {x.y(), x.x() / x.y()}};
        BlowupMap::ChartPoint im = f.chart_apply(cp);
        Eigen::Vector2d lifted = im.chart == 1 ? Eigen::Vector2d(im.tc.x(), im.tc.y() * im.tc.x())
                                               : Eigen::Vector2d(im.tc.y() * im.tc.x(), im.tc.x());
        worst = std::max(worst, phase_distance(PhaseSpace::Torus2, direct, lifted));
    }
    return worst;
}

}  // namespace hypdyn
