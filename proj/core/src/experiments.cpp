#include "hypdyn/experiments.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <sstream>

#include "hypdyn/blowup.hpp"
#include "hypdyn/cat_map.hpp"
#include "hypdyn/cocycle.hpp"
#include "hypdyn/figure8.hpp"
#include "hypdyn/manifolds.hpp"
#include "hypdyn/wstar.hpp"

namespace hypdyn {

namespace {

void add_check(ExperimentReport& rep, const std::string& name, bool pass, double value,
               const std::string& detail = {}) {
    rep.checks.push_back({name, pass, value, detail});
    rep.summary["checks"][name] = {{"pass", pass}, {"value", value}, {"detail", detail}};
}

std::string csv_header(const std::vector<std::string>& cols) {
    std::string s;
    for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
    return s + "\n";
}

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// reduced fraction key for saddle deduplication across denominators
std::tuple<long long, long long, long long> reduced_key(const RationalPoint& p) {
    long long g = std::gcd(std::gcd(p.i, p.j), p.q);
    if (g == 0) g = p.q;
    return {p.i / g, p.j / g, p.q / g};
}

}  // namespace

ExperimentReport run_catmap_experiment(const CatmapExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport rep;
    rep.name = "catmap";
    rep.summary["config"] = {{"a", cfg.mat_a},          {"b", cfg.mat_b},
                             {"c", cfg.mat_c},          {"d", cfg.mat_d},
                             {"q_max", cfg.q_max},      {"classes_q_max", cfg.classes_q_max},
                             {"exponent_tol", cfg.exponent_tol}, {"budget", cfg.budget},
                             {"angle_min", cfg.angle_min}};
    CatMap m(cfg.mat_a, cfg.mat_b, cfg.mat_c, cfg.mat_d);
    const double loglam = std::log(m.lambda());

    // exponents of every orbit with denominator q <= q_max
    std::string csv = csv_header({"q", "orbits", "sum_period", "max_abs_exponent_error"});
    double worst_err = 0;
    bool partition_ok = true;
    for (long long q = 1; q <= cfg.q_max; ++q) {
        auto orbits = cat_periodic_orbits(m, q);
        long long total = 0;
        double qerr = 0;
        for (const auto& orb : orbits) {
            total += static_cast<long long>(orb.period);
            OrbitSegment seg = orb.to_orbit_segment(m);
            auto ex = cocycle::periodic_exponents(seg);
            qerr = std::max(qerr, std::fabs(ex.exponents.front() + loglam));
            qerr = std::max(qerr, std::fabs(ex.exponents.back() - loglam));
        }
        partition_ok = partition_ok && total == q * q;
        worst_err = std::max(worst_err, qerr);
        csv += std::to_string(q) + "," + std::to_string(orbits.size()) + "," + std::to_string(total) + "," +
               num17(qerr) + "\n";
    }
    rep.csvs.emplace_back("catmap_exponents.csv", csv);
    add_check(rep, "exponents_pm_log_lambda", worst_err <= cfg.exponent_tol, worst_err,
              "max |exponent -+ log lambda| over q <= " + std::to_string(cfg.q_max));
    add_check(rep, "orbit_partition_counts", partition_ok, partition_ok ? 1 : 0, "sum of periods equals q^2");

    // domination with the eigen-splitting
    {
        auto orb = cat_periodic_orbits(m, 2).back();  // any non-fixed orbit
        OrbitSegment seg = orb.to_orbit_segment(m);
        SplittingFrame frame = SplittingFrame::constant(seg.points.size(), m.stable_direction(),
                                                        m.unstable_direction());
        auto N = cocycle::domination_check(seg, frame, cfg.domination_N_max);
        add_check(rep, "domination_N", N.has_value() && *N == 1, N ? double(*N) : -1,
                  "smallest N with the 1/2-domination inequality");
    }

    // intersection classes over deduplicated saddles with q <= classes_q_max
    {
        CatPlaneMap plane(m);
        std::vector<SaddleRecord> saddles;
        std::map<std::tuple<long long, long long, long long>, bool> seen;
        for (long long q = 1; q <= cfg.classes_q_max; ++q) {
            for (const auto& orb : cat_periodic_orbits(m, q)) {
                auto key = reduced_key(orb.representative);
                if (seen[key]) continue;
                seen[key] = true;
                saddles.push_back(SaddleRecord::from_periodic_point(plane, orb.representative.to_double(), orb.period,
                                                                    "q=" + std::to_string(q)));
            }
        }
        GrowOptions opts;
        opts.arclength_budget = cfg.budget;
        auto part = intersection_classes(plane, saddles, opts, cfg.angle_min);
        const auto classes = part.classes();

        const double analytic = std::acos(std::fabs(m.unstable_direction().dot(m.stable_direction())));
        double angle_err = 0;
        std::size_t n_crossings = 0;
        for (const auto& ev : part.evidence)
            for (const auto* v : {&ev.relation.uv_crossings, &ev.relation.vu_crossings})
                for (const auto& c : *v) {
                    angle_err = std::max(angle_err, std::fabs(c.angle - analytic));
                    ++n_crossings;
                }
        add_check(rep, "classes_single", classes.size() == 1, double(classes.size()),
                  std::to_string(saddles.size()) + " saddles with q <= " + std::to_string(cfg.classes_q_max));
        add_check(rep, "evidence_angle", n_crossings > 0 && angle_err <= cfg.angle_evidence_tol, angle_err,
                  "crossing angles against the eigendirection angle " + num17(analytic));

        std::string ccsv = csv_header({"saddle", "label", "period", "class"});
        for (std::size_t i = 0; i < part.saddles.size(); ++i)
            ccsv += std::to_string(i) + "," + part.saddles[i].label + "," + std::to_string(part.saddles[i].period) +
                    "," + std::to_string(part.find(i)) + "\n";
        rep.csvs.emplace_back("catmap_classes.csv", ccsv);
        rep.summary["classes"] = classes.size();
        rep.summary["saddles"] = saddles.size();
        rep.summary["evidence_crossings"] = n_crossings;
    }
    return rep;
}

ExperimentReport run_blowup_experiment(const BlowupExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport rep;
    rep.name = "blowup";
    rep.summary["config"] = {{"a", cfg.mat_a},   {"b", cfg.mat_b},       {"c", cfg.mat_c},
                             {"d", cfg.mat_d},   {"radius", cfg.radius}, {"ratio_lo", cfg.ratio_lo},
                             {"ratio_hi", cfg.ratio_hi}, {"budget", cfg.budget}, {"angle_min", cfg.angle_min},
                             {"occupation_metric", "euclid+rp1-angle"}};
    CatMap m(cfg.mat_a, cfg.mat_b, cfg.mat_c, cfg.mat_d);
    BlowupMap f(m);
    const double lam = m.lambda();

    auto [p1, p2] = blowup_fixed_points(m);

    // fixed directions solve the chart quadratic
    {
        auto quad = [&](double u) { return double(m.b) * u * u + double(m.a - m.d) * u - double(m.c); };
        double r1 = std::fabs(quad(p1.chart == 1 ? p1.coord : 1.0 / p1.coord));
        double r2 = std::fabs(quad(p2.chart == 1 ? p2.coord : 1.0 / p2.coord));
        add_check(rep, "fixed_direction_residual", std::max(r1, r2) <= cfg.direction_tol, std::max(r1, r2),
                  "b u^2 + (a-d) u - c at the two fixed directions");
    }

    // eigenvalues against the numerical chart Jacobian
    {
        double worst = 0;
        for (const auto* fp : {&p1, &p2}) {
            BlowupMap::ChartPoint cp{fp->chart, {0.0, fp->coord}};
            Eigen::Matrix2d J = f.chart_jacobian_numeric(cp);
            Eigen::EigenSolver<Eigen::Matrix2d> es(J);
            std::vector<double> num{es.eigenvalues()(0).real(), es.eigenvalues()(1).real()};
            std::vector<double> expct{fp->eigenvalues[0], fp->eigenvalues[1]};
            std::sort(num.begin(), num.end());
            std::sort(expct.begin(), expct.end());
            worst = std::max({worst, std::fabs(num[0] - expct[0]), std::fabs(num[1] - expct[1])});
        }
        add_check(rep, "fiber_fixed_point_eigenvalues", worst <= cfg.eigen_tol, worst,
                  "(lambda, lambda^-2) at p1 and (lambda^-1, lambda^2) at p2; lambda = " + num17(lam));
    }

    // conjugacy off the exceptional fiber
    {
        double res = blowup_conjugacy_residual(m, cfg.conjugacy_samples, cfg.seed);
        add_check(rep, "conjugacy_residual", res <= cfg.conjugacy_tol, res,
                  std::to_string(cfg.conjugacy_samples) + " random points");
    }

    // occupation ratios along the (1/q, 0) orbits
    {
        std::string csv = csv_header(
            {"q", "period", "count_p1", "count_p2", "ratio", "deviation", "exponent_low", "exponent_high"});
        double prev_dev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        double last_ratio = 0;
        double exp_err = 0;
        for (long long q : cfg.q_list) {
            auto orbit = cat_orbit_through(m, q);
            auto lift = blowup_lift_orbit(m, orbit, cfg.radius);
            OrbitSegment seg = orbit.to_orbit_segment(m);
            auto ex = cocycle::periodic_exponents(seg);
            exp_err = std::max({exp_err, std::fabs(ex.exponents.front() + std::log(lam)),
                                std::fabs(ex.exponents.back() - std::log(lam))});
            const auto& occ = lift.occupation;
            if (occ.deviation > prev_dev + 1e-12) monotone = false;
            prev_dev = occ.deviation;
            last_ratio = occ.ratio;
            csv += std::to_string(q) + "," + std::to_string(orbit.period) + "," + std::to_string(occ.count_p1) +
                   "," + std::to_string(occ.count_p2) + "," + num17(occ.ratio) + "," + num17(occ.deviation) + "," +
                   num17(ex.exponents.front()) + "," + num17(ex.exponents.back()) + "\n";
        }
        rep.csvs.emplace_back("blowup_occupation.csv", csv);
        add_check(rep, "occupation_ratio_at_largest_q",
                  last_ratio >= cfg.ratio_lo && last_ratio <= cfg.ratio_hi, last_ratio,
                  "radius " + num17(cfg.radius) + ", q = " + std::to_string(cfg.q_list.back()));
        add_check(rep, "occupation_deviation_monotone", monotone, monotone ? 1 : 0,
                  "multiplicative deviation from 1, non-increasing in q");
        add_check(rep, "lifted_exponents", exp_err <= 1e-10, exp_err, "+- log lambda along the family");
    }

    // intersection classes of {p1, p2}
    {
        GrowOptions opts;
        opts.arclength_budget = cfg.budget;
        auto classes = blowup_intersection_classes(m, opts, cfg.angle_min);
        add_check(rep, "classes_two", classes.classes.size() == 2, double(classes.classes.size()),
                  classes.relation.reason);
        rep.summary["blowup_classes"] = classes.classes.size();
        rep.summary["relation_reason"] = classes.relation.reason;
        rep.summary["lifted_line_crossings"] = classes.relation.uv_crossings.size();
    }
    return rep;
}

ExperimentReport run_figure8_experiment(const Figure8ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport rep;
    rep.name = "figure8";
    rep.summary["config"] = {{"substeps_M", cfg.substeps_M}, {"T", cfg.T},
                             {"eps_list", cfg.eps_list},     {"family", cfg.family},
                             {"D_max_at_finest", cfg.D_max_at_finest}, {"exponent_max", cfg.exponent_max},
                             {"drift_max", cfg.drift_max},   {"det_tol", cfg.det_tol}};
    Figure8System sys(cfg.substeps_M);
    TestFunctionFamily family = make_family(cfg.family, cfg.family_K);
    rep.summary["family_K"] = family.truncation_K;
    rep.summary["tail_bound"] = family.tail_bound();

    EmpiricalMeasure nu_star = convex_combine(
        {EmpiricalMeasure::dirac(PhaseSpace::Cylinder, Figure8System::saddle_p1()),
         EmpiricalMeasure::dirac(PhaseSpace::Cylinder, Figure8System::saddle_p2())},
        ConvexWeights{{0.5, 0.5}});

    // level-curve runs fan out across eps values
    std::vector<std::future<LevelCurveRun>> jobs;
    for (double eps : cfg.eps_list)
        jobs.push_back(std::async(std::launch::async, [&sys, eps, &cfg] { return run_level_curve(sys, eps, cfg.T); }));

    std::string csv = csv_header({"eps", "D", "tail_bound", "finite_time_exponent", "drift_slope_per_unit_time",
                                  "drift_endpoint_per_unit_time", "max_step_drift", "max_level_deviation"});
    std::vector<double> Ds;
    double drift_worst = 0;
    double exponent_at_probe = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        LevelCurveRun run = jobs[i].get();
        const double eps = cfg.eps_list[i];
        DistanceReport D = wstar_distance(run.measure, nu_star, family);
        Ds.push_back(D.value);
        drift_worst = std::max(drift_worst, std::fabs(run.drift_slope));
        if (eps == cfg.exponent_eps) exponent_at_probe = run.finite_time_exponent;
        csv += num17(eps) + "," + num17(D.value) + "," + num17(D.tail_bound) + "," +
               num17(run.finite_time_exponent) + "," + num17(run.drift_slope) + "," + num17(run.drift_endpoint) +
               "," + num17(run.max_step_drift) + "," + num17(run.max_level_deviation) + "\n";
        rep.summary["runs"][num17(eps)] = {{"D", D.value},
                                           {"exponent", run.finite_time_exponent},
                                           {"drift_slope", run.drift_slope},
                                           {"max_level_deviation", run.max_level_deviation}};
    }
    rep.csvs.emplace_back("figure8_distances.csv", csv);

    bool strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < Ds.size(); ++i) strictly_decreasing = strictly_decreasing && Ds[i + 1] < Ds[i];
    add_check(rep, "D_strictly_decreasing", strictly_decreasing, Ds.empty() ? 0 : Ds.back(),
              "D over the eps list");
    add_check(rep, "D_below_threshold_at_finest", !Ds.empty() && Ds.back() < cfg.D_max_at_finest,
              Ds.empty() ? 0 : Ds.back(), "threshold " + num17(cfg.D_max_at_finest));
    add_check(rep, "exponent_small", std::fabs(exponent_at_probe) < cfg.exponent_max, exponent_at_probe,
              "finite-time exponent at eps = " + num17(cfg.exponent_eps));
    add_check(rep, "drift_secular_rate", drift_worst < cfg.drift_max, drift_worst,
              "least-squares dH/dt over each run");

    // symplecticity at random points
    {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> ux(0.0, 1.0), uy(-1.5, 1.5);
        double worst = 0;
        for (int i = 0; i < cfg.det_samples; ++i) {
            auto r = sys.time1({ux(rng), uy(rng)});
            worst = std::max(worst, std::fabs(r.jacobian.determinant() - 1.0));
        }
        add_check(rep, "symplecticity", worst <= cfg.det_tol, worst,
                  std::to_string(cfg.det_samples) + " random points");
    }

    // no domination along the level curve (zero exponents)
    {
        auto [seg, frame] = level_curve_segment(sys, cfg.exponent_eps, cfg.domination_segment);
        auto N = cocycle::domination_check(seg, frame, cfg.domination_N_max);
        add_check(rep, "domination_none", !N.has_value(), N ? double(*N) : -1,
                  "tangent/normal frames on the level curve, N_max = " + std::to_string(cfg.domination_N_max));
    }
    return rep;
}

}  // namespace hypdyn
