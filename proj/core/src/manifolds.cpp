#include "hypdyn/manifolds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace hypdyn {

namespace {

Eigen::Matrix2d return_jacobian(const PlaneMap& map, const Eigen::Vector2d& p, std::size_t period) {
    Eigen::Matrix2d J = Eigen::Matrix2d::Identity();
    Eigen::Vector2d x = p;
    for (std::size_t i = 0; i < period; ++i) {
        J = map.jacobian(x) * J;
        x = map.apply(x);
    }
    return J;
}

}  // namespace

double SaddleRecord::eigen_residual(const PlaneMap& map) const {
    // relative to ||J||: the return Jacobian scales like eig_u^period
    Eigen::Matrix2d J = return_jacobian(map, point, period);
    double rs = (J * vec_s - eig_s * vec_s).norm();
    double ru = (J * vec_u - eig_u * vec_u).norm();
    return std::max(rs, ru) / J.norm();
}

void SaddleRecord::validate(const PlaneMap& map, double tol) const {
    if (!(std::fabs(eig_s) < 1 && std::fabs(eig_u) > 1))
        throw PreconditionError("SaddleRecord: eigenvalues not hyperbolic (|eig_s| < 1 < |eig_u|)");
    if (eigen_residual(map) > tol) throw PreconditionError("SaddleRecord: eigenvector residual above tolerance");
}

SaddleRecord SaddleRecord::from_periodic_point(const PlaneMap& map, const Eigen::Vector2d& p, std::size_t period,
                                               std::string label) {
    Eigen::Matrix2d J = return_jacobian(map, p, period);
    Eigen::EigenSolver<Eigen::Matrix2d> es(J);
    if (es.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-10 * (1 + es.eigenvalues().real().cwiseAbs().maxCoeff()))
        throw PreconditionError("SaddleRecord: complex return-map eigenvalues (not a saddle)");
    double l0 = es.eigenvalues()(0).real(), l1 = es.eigenvalues()(1).real();
    int s = std::fabs(l0) < std::fabs(l1) ? 0 : 1;
    SaddleRecord rec;
    rec.point = p;
    rec.period = period;
    rec.eig_s = s == 0 ? l0 : l1;
    rec.eig_u = s == 0 ? l1 : l0;
    rec.vec_s = es.eigenvectors().col(s).real().normalized();
    rec.vec_u = es.eigenvectors().col(1 - s).real().normalized();
    rec.label = std::move(label);
    if (!(std::fabs(rec.eig_s) < 1 && std::fabs(rec.eig_u) > 1))
        throw PreconditionError("SaddleRecord: point is not a saddle (|eig_s| < 1 < |eig_u| fails)");
    return rec;
}

namespace {

// Curve evaluation W(sigma): walk sigma back into the seed window
// [_, delta_loc] dividing by the multiplier, then push forward with the
// return map. Continuous in sigma up to the O(delta^2) seed offset.
struct BranchEvaluator {
    const PlaneMap* map;
    Eigen::Vector2d saddle;
    Eigen::Vector2d dir;     // unit eigenvector times sign
    double multiplier;       // growth rate of the working return map, > 1
    double delta_loc;        // seed window size
    std::size_t period;
    bool inverse;            // Stable branch: iterate the inverse map
    Eigen::Vector2d drift;   // deck translation of the return map at the saddle

    Eigen::Vector2d ret_raw(const Eigen::Vector2d& x) const {
        Eigen::Vector2d y = x;
        for (std::size_t i = 0; i < period; ++i) y = inverse ? map->apply_inverse(y) : map->apply(y);
        return y;
    }

    // Return map conjugated by the deck translation so the saddle is fixed
    // in cover coordinates and the grown curve is continuous across domains.
    Eigen::Vector2d ret(const Eigen::Vector2d& x) const { return ret_raw(x) - drift; }

    Eigen::Vector2d operator()(double sigma) const {
        int k = 0;
        while (sigma > delta_loc) {
            sigma /= multiplier;
            ++k;
        }
        Eigen::Vector2d x = saddle + sigma * dir;
        for (int i = 0; i < k; ++i) x = ret(x);
        return x;
    }
};

}  // namespace

ManifoldCurve grow_manifold(const PlaneMap& map, const SaddleRecord& saddle, Branch branch, int sign,
                            const GrowOptions& opts) {
    saddle.validate(map);
    BranchEvaluator ev;
    ev.map = &map;
    ev.saddle = saddle.point;
    ev.period = saddle.period;
    ev.inverse = branch == Branch::Stable;
    const double mult_raw = branch == Branch::Unstable ? saddle.eig_u : 1.0 / saddle.eig_s;
    ev.multiplier = std::fabs(mult_raw);
    if (mult_raw < 0) {  // orientation-reversing branch: work with the doubled return map
        ev.period *= 2;
        ev.multiplier *= ev.multiplier;
    }
    ev.dir = (branch == Branch::Unstable ? saddle.vec_u : saddle.vec_s) * (sign >= 0 ? 1.0 : -1.0);
    ev.delta_loc = std::clamp(opts.seed_scale * (ev.multiplier - 1.0), 1e-9, 1e-5);
    ev.drift = Eigen::Vector2d::Zero();
    ev.drift = ev.ret_raw(saddle.point) - saddle.point;

    ManifoldCurve curve;
    curve.branch = branch;
    curve.sign = sign >= 0 ? +1 : -1;
    curve.space = map.topology();
    curve.polyline.push_back(saddle.point);

    const double cos_turn = std::cos(opts.max_turn);
    auto emit = [&](const Eigen::Vector2d& p) {
        curve.arclength += (p - curve.polyline.back()).norm();
        curve.polyline.push_back(p);
    };

    // adaptive subdivision of [sa, sb] in log-sigma, depth-first
    struct Item {
        double sa, sb;
        Eigen::Vector2d Pa, Pb;
        int depth;
    };
    std::vector<Item> stack;
    double sigma = ev.delta_loc;
    Eigen::Vector2d P = ev(sigma);
    emit(P);

    const double block = 4.0;  // sigma blocks per outer step
    while (curve.arclength < opts.arclength_budget) {
        double s_next = sigma * block;
        stack.push_back({sigma, s_next, ev(sigma), ev(s_next), 0});
        while (!stack.empty() && curve.arclength < opts.arclength_budget) {
            Item it = stack.back();
            stack.pop_back();
            const double chord = (it.Pb - it.Pa).norm();
            bool flat = chord <= opts.h_max;
            if (flat && chord > opts.h_min && it.depth < opts.max_depth) {
                // sagitta / turn test at the geometric midpoint
                const double sm = std::sqrt(it.sa * it.sb);
                const Eigen::Vector2d Pm = ev(sm);
                const Eigen::Vector2d d1 = Pm - it.Pa, d2 = it.Pb - Pm;
                const double n1 = d1.norm(), n2 = d2.norm();
                if (n1 > 0 && n2 > 0 && d1.dot(d2) < cos_turn * n1 * n2) {
                    stack.push_back({sm, it.sb, Pm, it.Pb, it.depth + 1});
                    stack.push_back({it.sa, sm, it.Pa, Pm, it.depth + 1});
                    continue;
                }
                emit(it.Pb);
                continue;
            }
            if (!flat && it.depth < opts.max_depth && chord > opts.h_min) {
                const double sm = std::sqrt(it.sa * it.sb);
                const Eigen::Vector2d Pm = ev(sm);
                stack.push_back({sm, it.sb, Pm, it.Pb, it.depth + 1});
                stack.push_back({it.sa, sm, it.Pa, Pm, it.depth + 1});
                continue;
            }
            if (!flat) curve.partial = true;  // emitted without reaching resolution
            emit(it.Pb);
        }
        if (!stack.empty()) {  // budget hit mid-refinement
            curve.partial = true;
            break;
        }
        sigma = s_next;
    }
    return curve;
}

namespace {

double reduce01(double x) {
    double r = x - std::floor(x);
    return r >= 1.0 ? r - 1.0 : r;
}

struct Segment {
    Eigen::Vector2d a, d;  // a reduced into the fundamental domain, d = b - a
};

std::vector<Segment> reduced_segments(const ManifoldCurve& c) {
    std::vector<Segment> out;
    out.reserve(c.polyline.size());
    const bool wrap_y = c.space == PhaseSpace::Torus2;
    for (std::size_t i = 0; i + 1 < c.polyline.size(); ++i) {
        Eigen::Vector2d a = c.polyline[i];
        Eigen::Vector2d d = c.polyline[i + 1] - a;
        if (d.squaredNorm() == 0) continue;
        a.x() = reduce01(a.x());
        if (wrap_y) a.y() = reduce01(a.y());
        out.push_back({a, d});
    }
    return out;
}

double crossing_angle(const Eigen::Vector2d& d1, const Eigen::Vector2d& d2) {
    const double c = std::fabs(d1.normalized().dot(d2.normalized()));
    return std::acos(std::min(1.0, c));
}

}  // namespace

std::vector<Crossing> transverse_intersections(const ManifoldCurve& c1, const ManifoldCurve& c2, double angle_min,
                                               double merge_dist) {
    if (!(angle_min > 0)) throw ParameterError("transverse_intersections: angle_min > 0 required");
    if (c1.on_fiber || c2.on_fiber) return {};  // tangential or disjoint by construction

    const bool wrap_y = c1.space == PhaseSpace::Torus2;
    auto segs1 = reduced_segments(c1);
    auto segs2 = reduced_segments(c2);
    if (segs1.empty() || segs2.empty()) return {};

    // uniform spatial hash over segs2
    double cell = 0;
    for (const auto& s : segs2) cell = std::max(cell, s.d.cwiseAbs().maxCoeff());
    for (const auto& s : segs1) cell = std::max(cell, s.d.cwiseAbs().maxCoeff());
    cell = std::max(cell * 1.5, 1e-6);
    const int nc = std::max(1, static_cast<int>(std::floor(1.0 / cell)));
    auto cell_of = [&](double x) { return ((static_cast<int>(std::floor(x / cell)) % nc) + nc) % nc; };

    std::map<std::pair<int, int>, std::vector<std::size_t>> hash;
    for (std::size_t i = 0; i < segs2.size(); ++i) {
        const auto& s = segs2[i];
        hash[{cell_of(s.a.x()), cell_of(s.a.y())}].push_back(i);
    }

    std::vector<Crossing> found;
    const double y_offsets = wrap_y ? 1 : 0;
    for (const auto& s1 : segs1) {
        const int cx = cell_of(s1.a.x()), cy = cell_of(s1.a.y());
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                auto itc = hash.find({(cx + dx + nc) % nc, (cy + dy + nc) % nc});
                if (itc == hash.end()) continue;
                for (std::size_t j : itc->second) {
                    const auto& s2 = segs2[j];
                    for (int ox = -1; ox <= 1; ++ox) {
                        for (int oy = -static_cast<int>(y_offsets); oy <= static_cast<int>(y_offsets); ++oy) {
                            // s1.a + s*d1 = s2.a + (ox,oy) + t*d2
                            Eigen::Matrix2d M;
                            M.col(0) = s1.d;
                            M.col(1) = -s2.d;
                            const double det = M.determinant();
                            if (std::fabs(det) < 1e-14) continue;
                            Eigen::Vector2d rhs = s2.a + Eigen::Vector2d(ox, oy) - s1.a;
                            Eigen::Vector2d st = M.inverse() * rhs;
                            if (st.x() < 0 || st.x() > 1 || st.y() < 0 || st.y() > 1) continue;
                            const double ang = crossing_angle(s1.d, s2.d);
                            if (ang < angle_min) continue;
                            Eigen::Vector2d X = s1.a + st.x() * s1.d;
                            X.x() = reduce01(X.x());
                            if (wrap_y) X.y() = reduce01(X.y());
                            found.push_back({X, ang});
                        }
                    }
                }
            }
        }
    }

    // merge duplicates within merge_dist
    std::vector<Crossing> merged;
    const PhaseSpace space = c1.space;
    for (const auto& c : found) {
        bool dup = false;
        for (const auto& m : merged)
            if (phase_distance(space, c.point, m.point) < merge_dist) {
                dup = true;
                break;
            }
        if (!dup) merged.push_back(c);
    }
    return merged;
}

RelationEvidence homoclinically_related(const PlaneMap& map, const SaddleRecord& p, const SaddleRecord& q,
                                        const GrowOptions& budgets, double angle_min) {
    RelationEvidence ev;
    auto crossings_between = [&](const SaddleRecord& from, Branch bf, const SaddleRecord& to, Branch bt) {
        std::vector<Crossing> all;
        for (int s1 : {+1, -1}) {
            ManifoldCurve cu = grow_manifold(map, from, bf, s1, budgets);
            for (int s2 : {+1, -1}) {
                ManifoldCurve cs = grow_manifold(map, to, bt, s2, budgets);
                auto cr = transverse_intersections(cu, cs, angle_min, budgets.h_min);
                all.insert(all.end(), cr.begin(), cr.end());
            }
        }
        return all;
    };
    ev.uv_crossings = crossings_between(p, Branch::Unstable, q, Branch::Stable);
    ev.vu_crossings = crossings_between(q, Branch::Unstable, p, Branch::Stable);
    ev.related = !ev.uv_crossings.empty() && !ev.vu_crossings.empty();
    if (ev.related) {
        ev.reason = "ok";
    } else if (ev.uv_crossings.empty() && ev.vu_crossings.empty()) {
        ev.reason = "no transverse crossing above threshold found within budget (both directions)";
    } else {
        ev.reason = std::string("no transverse crossing above threshold found within budget (") +
                    (ev.uv_crossings.empty() ? "W^u(p) vs W^s(q)" : "W^u(q) vs W^s(p)") + ")";
    }
    return ev;
}

std::size_t IntersectionClassPartition::find(std::size_t i) const {
    while (parent[i] != i) i = parent[i];
    return i;
}

std::vector<std::vector<std::size_t>> IntersectionClassPartition::classes() const {
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < parent.size(); ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

IntersectionClassPartition intersection_classes(const PlaneMap& map, std::vector<SaddleRecord> saddles,
                                                const GrowOptions& budgets, double angle_min) {
    IntersectionClassPartition part;
    part.saddles = std::move(saddles);
    part.parent.resize(part.saddles.size());
    std::iota(part.parent.begin(), part.parent.end(), std::size_t{0});

    auto unite = [&](std::size_t i, std::size_t j) {
        std::size_t ri = part.find(i), rj = part.find(j);
        if (ri != rj) part.parent[ri] = rj;
    };

    for (std::size_t i = 0; i < part.saddles.size(); ++i) {
        for (std::size_t j = i + 1; j < part.saddles.size(); ++j) {
            const bool already = part.find(i) == part.find(j);
            RelationEvidence ev = homoclinically_related(map, part.saddles[i], part.saddles[j], budgets, angle_min);
            if (ev.related) {
                part.evidence.push_back({i, j, !already, std::move(ev)});
                unite(i, j);
            }
        }
    }
    return part;
}

bool proximity_intersection_test(PhaseSpace space, const Eigen::Vector2d& x, const ManifoldSizes& sx,
                                 const Eigen::Vector2d& y, const ManifoldSizes& sy, double eta, double delta) {
    if (!(eta > 0)) throw ParameterError("proximity_intersection_test: eta > 0 required");
    if (std::min({sx.stable, sx.unstable, sy.stable, sy.unstable}) < delta)
        throw PreconditionError("proximity_intersection_test: manifold size estimate below delta");
    return phase_distance(space, x, y) <= eta;
}

}  // namespace hypdyn
