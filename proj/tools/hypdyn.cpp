// hypdyn CLI: Pliss-time reports, cocycle exponents, weak* distances,
// intersection classes, and the three reproduction experiments.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypdyn/blowup.hpp"
#include "hypdyn/cat_map.hpp"
#include "hypdyn/cocycle.hpp"
#include "hypdyn/experiments.hpp"
#include "hypdyn/figure8.hpp"
#include "hypdyn/json_io.hpp"
#include "hypdyn/manifolds.hpp"
#include "hypdyn/pliss.hpp"
#include "hypdyn/rational.hpp"
#include "hypdyn/wstar.hpp"

namespace fs = std::filesystem;
using namespace hypdyn;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

void emit_report(const json& report, const std::string& out_path) {
    const std::string text = dump_17(report);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

// Sequence CSV: one value per line, or comma-separated values; blank lines
// and # comments ignored. Values may be decimals or p/q fractions.
std::vector<std::string> read_sequence_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::string> tokens;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            // trim
            const auto a = tok.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            const auto b = tok.find_last_not_of(" \t\r");
            tok = tok.substr(a, b - a + 1);
            if (tok.empty()) continue;
            try {
                (void)rational_from_string(tok);
            } catch (const ParseError&) {
                throw ParseError("sequence CSV: malformed value '" + tok + "'", lineno);
            }
            tokens.push_back(tok);
        }
    }
    if (tokens.empty()) throw ParseError("sequence CSV: no values in " + path);
    return tokens;
}

json index_set_json(const pliss::IndexSet& s) {
    json arr = json::array();
    for (auto i : s) arr.push_back(i);
    return arr;
}

struct PlissArgs {
    std::string input, out;
    std::string c1, c0, c2, A;
    bool periodic = false, rational = false, verify = false;
    double tie = 0.0;
};

int cmd_pliss(const PlissArgs& a) {
    auto tokens = read_sequence_tokens(a.input);
    json rep;
    rep["input"] = a.input;
    rep["n"] = tokens.size();
    rep["mode"] = a.rational ? "rational" : "double";
    rep["tie_tol"] = a.tie;

    auto run = [&](auto zero, auto convert) {
        using T = decltype(zero);
        std::vector<T> values;
        for (const auto& t : tokens) values.push_back(convert(t));
        auto seq = pliss::RealSequence<T>::from_values(values);
        const T c1 = convert(a.c1);
        const T tie = a.rational ? T(0) : convert(std::to_string(a.tie));
        auto times = pliss::pliss_times(seq, c1, tie);
        rep["c1"] = a.c1;
        rep["pliss_times"] = index_set_json(times);
        rep["count"] = times.size();
        rep["count_from_two"] = times.size() - (times.empty() || times.front() != 1 ? 0 : 1);
        if (!a.A.empty() && !a.c2.empty()) {
            const T theta = pliss::pliss_theta(convert(a.A), c1, convert(a.c2));
            if constexpr (std::is_same_v<T, Rational>) {
                rep["theta"] = hypdyn::to_string(theta);
                rep["theta_value"] = to_double(theta);
            } else {
                rep["theta"] = theta;
            }
        }
        if (!a.c0.empty()) rep["c0"] = a.c0;
        if (a.periodic) {
            pliss::PeriodicSequence<T> per{seq};
            auto ult = pliss::ultimate_pliss_times(per, c1, tie);
            rep["period"] = per.period();
            rep["ultimate_pliss_times"] = index_set_json(ult);
        }
        if (a.verify) {
            auto oracle = pliss::pliss_times_oracle(seq.values, c1, tie);
            rep["oracle"] = oracle == times ? "match" : "MISMATCH";
            return oracle == times;
        }
        return true;
    };

    bool ok;
    if (a.rational) {
        ok = run(Rational(0), [](const std::string& s) { return rational_from_string(s); });
    } else {
        ok = run(0.0, [](const std::string& s) { return to_double(rational_from_string(s)); });
    }
    emit_report(rep, a.out);
    return ok ? 0 : 1;
}

int cmd_exponents(const std::string& input, const std::string& out) {
    OrbitSegment orbit = orbit_from_json(json::parse(slurp(input)));
    json rep;
    rep["input"] = input;
    rep["period"] = orbit.periodic() ? json(*orbit.period) : json(nullptr);
    if (orbit.periodic()) {
        auto ex = cocycle::periodic_exponents(orbit);
        rep["exponents"] = ex.exponents;
        rep["defective_flagged"] = ex.defective_flagged;
    } else {
        // finite-time singular-value exponents of the full product
        const auto d = orbit.dim();
        SplittingFrame full = SplittingFrame::constant(
            orbit.points.size(), Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Identity(d, d));
        auto [lmax, lmin] =
            cocycle::restricted_log_singular_values(orbit, full, cocycle::Bundle::E, orbit.steps(), 0);
        rep["finite_time_exponents"] = {lmin / double(orbit.steps()), lmax / double(orbit.steps())};
    }
    auto cf = cocycle::cf_constant(orbit);
    rep["Cf_raw"] = cf.raw;
    rep["Cf"] = cf.clamped;
    emit_report(rep, out);
    return 0;
}

EmpiricalMeasure load_measure(const std::string& path, PhaseSpace space) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return measure_from_json(json::parse(slurp(path)));
    return measure_from_csv(slurp(path), space);
}

int cmd_measure_dist(const std::string& a, const std::string& b, const std::string& family_name, long long K,
                     const std::string& out) {
    TestFunctionFamily fam = make_family(family_name, static_cast<std::size_t>(K));
    EmpiricalMeasure mu = load_measure(a, fam.space);
    EmpiricalMeasure nu = load_measure(b, fam.space);
    auto D = wstar_distance(mu, nu, fam);
    json rep;
    rep["family"] = D.family;
    rep["K"] = D.K;
    rep["distance"] = D.value;
    rep["tail_bound"] = D.tail_bound;
    emit_report(rep, out);
    return 0;
}

json crossing_json(const std::vector<Crossing>& cs) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back({{"point", {c.point.x(), c.point.y()}}, {"angle", c.angle}});
    return arr;
}

int cmd_classes(const std::string& system, long long q_max, double budget, double angle_min,
                const std::string& out) {
    json rep;
    rep["system"] = system;
    GrowOptions opts;
    opts.arclength_budget = budget;
    if (system == "catmap") {
        CatMap m;
        CatPlaneMap plane(m);
        std::vector<SaddleRecord> saddles;
        std::map<std::tuple<long long, long long, long long>, bool> seen;
        for (long long q = 1; q <= q_max; ++q) {
            for (const auto& orb : cat_periodic_orbits(m, q)) {
                long long g = std::gcd(std::gcd(orb.representative.i, orb.representative.j), q);
                if (g == 0) g = q;
                auto key = std::make_tuple(orb.representative.i / g, orb.representative.j / g, q / g);
                if (seen[key]) continue;
                seen[key] = true;
                saddles.push_back(
                    SaddleRecord::from_periodic_point(plane, orb.representative.to_double(), orb.period));
            }
        }
        auto part = intersection_classes(plane, saddles, opts, angle_min);
        rep["saddles"] = saddles.size();
        rep["classes"] = part.classes();
        json ev = json::array();
        for (const auto& e : part.evidence)
            ev.push_back({{"i", e.i},
                          {"j", e.j},
                          {"direct", e.direct},
                          {"uv_crossings", crossing_json(e.relation.uv_crossings)},
                          {"vu_crossings", crossing_json(e.relation.vu_crossings)}});
        rep["evidence"] = ev;
        emit_report(rep, out);
        return 0;
    }
    if (system == "blowup") {
        CatMap m;
        auto classes = blowup_intersection_classes(m, opts, angle_min);
        rep["labels"] = classes.labels;
        rep["classes"] = classes.classes;
        rep["relation"] = {{"related", classes.relation.related},
                           {"reason", classes.relation.reason},
                           {"uv_crossings", crossing_json(classes.relation.uv_crossings)},
                           {"vu_crossings", crossing_json(classes.relation.vu_crossings)}};
        emit_report(rep, out);
        return 0;
    }
    std::cerr << "unknown system for classes: " << system << "\n";
    return 2;
}

int cmd_experiment(const std::string& name, const std::string& config_path,
                   const std::vector<std::string>& overrides, const std::string& out_dir) {
    ConfigFile cfg = config_path.empty() ? ConfigFile::parse("") : ConfigFile::load(config_path);
    for (const auto& o : overrides) cfg.set_override(o);

    ExperimentReport rep;
    if (name == "catmap") {
        rep = run_catmap_experiment(catmap_config_from(cfg));
    } else if (name == "blowup") {
        rep = run_blowup_experiment(blowup_config_from(cfg));
    } else if (name == "figure8") {
        rep = run_figure8_experiment(figure8_config_from(cfg));
    } else {
        std::cerr << "unknown experiment: " << name << "\n";
        return 2;
    }

    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << rep.name << "." << c.name << " = " << c.value
                  << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (const auto& [file, content] : rep.csvs) write_file(fs::path(out_dir) / file, content);
        json summary = rep.summary;
        summary["experiment"] = rep.name;
        summary["all_pass"] = rep.all_pass();
        write_file(fs::path(out_dir) / (rep.name + "_summary.json"), dump_17(summary));
        std::cout << "reports written to " << out_dir << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-uniform hyperbolicity toolkit: Pliss times, weak* distances, cocycle analysis, "
                 "invariant manifolds and the reproduction experiments"};
    app.require_subcommand(1);

    PlissArgs pa;
    auto* pliss_cmd = app.add_subcommand("pliss", "Pliss-time report for a CSV sequence");
    pliss_cmd->add_option("input", pa.input, "sequence CSV")->required();
    pliss_cmd->add_option("--c1", pa.c1, "Pliss threshold c1")->required();
    pliss_cmd->add_option("--c0", pa.c0, "lowering constant (localized variant)");
    pliss_cmd->add_option("--c2", pa.c2, "average threshold c2 (for theta)");
    pliss_cmd->add_option("--A", pa.A, "bound A (for theta)");
    pliss_cmd->add_flag("--periodic", pa.periodic, "treat the file as one period");
    pliss_cmd->add_flag("--rational", pa.rational, "exact rational arithmetic");
    pliss_cmd->add_flag("--verify", pa.verify, "cross-check with the O(n^2) oracle");
    pliss_cmd->add_option("--tie", pa.tie, "tie tolerance in double mode");
    pliss_cmd->add_option("--out", pa.out, "write the JSON report here");

    std::string exp_input, exp_out;
    auto* exp_cmd = app.add_subcommand("exponents", "Lyapunov exponents of an orbit JSON");
    exp_cmd->add_option("input", exp_input, "orbit JSON")->required();
    exp_cmd->add_option("--out", exp_out, "write the JSON report here");

    std::string md_a, md_b, md_family = "torus-fourier", md_out;
    long long md_K = 0;
    auto* md_cmd = app.add_subcommand("measure-dist", "weak* distance between two measures");
    md_cmd->add_option("a", md_a, "measure (CSV or JSON)")->required();
    md_cmd->add_option("b", md_b, "measure (CSV or JSON)")->required();
    md_cmd->add_option("--family", md_family, "test-function family name");
    md_cmd->add_option("--K", md_K, "truncation (0 = whole family)");
    md_cmd->add_option("--out", md_out, "write the JSON report here");

    std::string cl_system = "catmap", cl_out;
    long long cl_qmax = 5;
    double cl_budget = 50.0, cl_angle = 1e-3;
    auto* cl_cmd = app.add_subcommand("classes", "intersection-class partition");
    cl_cmd->add_option("--system", cl_system, "catmap or blowup");
    cl_cmd->add_option("--q-max", cl_qmax, "saddle denominators (catmap)");
    cl_cmd->add_option("--budget", cl_budget, "arclength budget per branch");
    cl_cmd->add_option("--angle-min", cl_angle, "transversality threshold (radians)");
    cl_cmd->add_option("--out", cl_out, "write the JSON report here");

    std::string ex_name, ex_config, ex_out;
    std::vector<std::string> ex_sets;
    auto* ex_cmd = app.add_subcommand("experiment", "run a reproduction experiment");
    ex_cmd->add_option("name", ex_name, "catmap | blowup | figure8")->required();
    ex_cmd->add_option("--config", ex_config, "config file (TOML-style sections)");
    ex_cmd->add_option("--set", ex_sets, "override: section.key=value");
    ex_cmd->add_option("--out", ex_out, "directory for CSV tables and the JSON summary");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pliss_cmd->parsed()) return cmd_pliss(pa);
        if (exp_cmd->parsed()) return cmd_exponents(exp_input, exp_out);
        if (md_cmd->parsed()) return cmd_measure_dist(md_a, md_b, md_family, md_K, md_out);
        if (cl_cmd->parsed()) return cmd_classes(cl_system, cl_qmax, cl_budget, cl_angle, cl_out);
        if (ex_cmd->parsed()) return cmd_experiment(ex_name, ex_config, ex_sets, ex_out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
