#include "hypdyn/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace hypdyn {

json orbit_to_json(const OrbitSegment& orbit) {
    json j;
    j["points"] = json::array();
    for (const auto& p : orbit.points) {
        json row = json::array();
        for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(p(i));
        j["points"].push_back(std::move(row));
    }
    j["jacobians"] = json::array();
    for (const auto& J : orbit.jacobians) {
        json row = json::array();
        for (Eigen::Index r = 0; r < J.rows(); ++r)
            for (Eigen::Index c = 0; c < J.cols(); ++c) row.push_back(J(r, c));
        j["jacobians"].push_back(std::move(row));
    }
    j["period"] = orbit.periodic() ? json(*orbit.period) : json(nullptr);
    return j;
}

OrbitSegment orbit_from_json(const json& j) {
    OrbitSegment orbit;
    try {
        for (const auto& row : j.at("points")) {
            Eigen::VectorXd p(row.size());
            for (std::size_t i = 0; i < row.size(); ++i) p(static_cast<Eigen::Index>(i)) = row[i].get<double>();
            orbit.points.push_back(std::move(p));
        }
        const auto d = orbit.points.empty() ? 0 : orbit.points.front().size();
        for (const auto& row : j.at("jacobians")) {
            if (static_cast<Eigen::Index>(row.size()) != d * d)
                throw ParseError("orbit JSON: jacobian entry count is not d*d");
            Eigen::MatrixXd J(d, d);
            std::size_t k = 0;
            for (Eigen::Index r = 0; r < d; ++r)
                for (Eigen::Index c = 0; c < d; ++c) J(r, c) = row[k++].get<double>();
            orbit.jacobians.push_back(std::move(J));
        }
        if (j.contains("period") && !j.at("period").is_null()) orbit.period = j.at("period").get<std::size_t>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("orbit JSON: ") + e.what());
    }
    orbit.validate();
    return orbit;
}

json measure_to_json(const EmpiricalMeasure& mu) {
    json j;
    j["space"] = phase_space_name(mu.space);
    j["atoms"] = json::array();
    for (const auto& a : mu.atoms) j["atoms"].push_back({a.weight, a.point.x(), a.point.y()});
    return j;
}

EmpiricalMeasure measure_from_json(const json& j) {
    EmpiricalMeasure mu;
    try {
        mu.space = phase_space_from_name(j.at("space").get<std::string>());
        for (const auto& a : j.at("atoms")) {
            if (a.size() != 3) throw ParseError("measure JSON: atom must be [weight, x, y]");
            mu.atoms.push_back({{a[1].get<double>(), a[2].get<double>()}, a[0].get<double>()});
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("measure JSON: ") + e.what());
    }
    mu.reduce_coordinates();
    return mu;
}

namespace {

void dump_rec(const json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad1(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad1 + json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad1;
                dump_rec(v, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            if (std::isnan(v)) {
                out += "\"nan\"";
            } else if (std::isinf(v)) {
                out += v > 0 ? "\"inf\"" : "\"-inf\"";
            } else {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                out += buf;
            }
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_17(const json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

}  // namespace hypdyn
