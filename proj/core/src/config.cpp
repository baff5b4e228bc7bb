#include "hypdyn/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hypdyn {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream is(text);
    std::string line, section;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("config: unterminated section header", lineno);
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections_[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config: expected key = value", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("config: empty key", lineno);
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const std::string* ConfigFile::find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const { return find(section, key); }

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    const std::string* v = find(section, key);
    return v ? strip_quotes(*v) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key, double fallback) const {
    const std::string* v = find(section, key);
    if (!v) return fallback;
    try {
        return std::stod(*v);
    } catch (const std::exception&) {
        throw ParseError("config: " + section + "." + key + " is not a number: " + *v);
    }
}

long long ConfigFile::get_int(const std::string& section, const std::string& key, long long fallback) const {
    const std::string* v = find(section, key);
    if (!v) return fallback;
    try {
        return std::stoll(*v);
    } catch (const std::exception&) {
        throw ParseError("config: " + section + "." + key + " is not an integer: " + *v);
    }
}

std::vector<double> ConfigFile::get_list(const std::string& section, const std::string& key,
                                         const std::vector<double>& fallback) const {
    const std::string* v = find(section, key);
    if (!v) return fallback;
    std::string s = trim(*v);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("config: " + section + "." + key + " is not a [list]");
    s = s.substr(1, s.size() - 2);
    std::vector<double> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("config: bad list entry in " + section + "." + key + ": " + item);
        }
    }
    return out;
}

void ConfigFile::set_override(const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw ParseError("override: expected section.key=value: " + spec);
    std::string dotted = trim(spec.substr(0, eq));
    std::string value = trim(spec.substr(eq + 1));
    auto dot = dotted.rfind('.');
    std::string section = dot == std::string::npos ? "" : dotted.substr(0, dot);
    std::string key = dot == std::string::npos ? dotted : dotted.substr(dot + 1);
    if (key.empty()) throw ParseError("override: empty key: " + spec);
    sections_[section][key] = value;
}

void CatmapExperimentConfig::validate() const {
    if (mat_a * mat_d - mat_b * mat_c != 1) throw ParameterError("catmap config: matrix determinant must be 1");
    if (q_max < 1 || classes_q_max < 1) throw ParameterError("catmap config: q bounds must be >= 1");
    if (!(angle_min > 0)) throw ParameterError("catmap config: angle_min > 0");
    if (domination_N_max < 1) throw ParameterError("catmap config: domination_N_max >= 1");
}

void BlowupExperimentConfig::validate() const {
    if (mat_a * mat_d - mat_b * mat_c != 1) throw ParameterError("blowup config: matrix determinant must be 1");
    if (q_list.empty()) throw ParameterError("blowup config: q_list empty");
    for (auto q : q_list)
        if (q < 2) throw ParameterError("blowup config: q >= 2 required");
    if (!(radius > 0)) throw ParameterError("blowup config: radius > 0");
    if (!(ratio_lo > 0 && ratio_lo < 1 && ratio_hi > 1)) throw ParameterError("blowup config: need ratio_lo < 1 < ratio_hi");
}

void Figure8ExperimentConfig::validate() const {
    if (substeps_M < 1) throw ParameterError("figure8 config: substeps_M >= 1");
    if (T < 1) throw ParameterError("figure8 config: T >= 1");
    if (eps_list.empty()) throw ParameterError("figure8 config: eps_list empty");
    for (double e : eps_list)
        if (!(e > 0 && e < 1)) throw ParameterError("figure8 config: eps in (0,1) required");
    if (!(D_max_at_finest > 0 && exponent_max > 0 && drift_max > 0 && det_tol > 0))
        throw ParameterError("figure8 config: thresholds must be positive");
}

CatmapExperimentConfig catmap_config_from(const ConfigFile& f) {
    CatmapExperimentConfig c;
    c.mat_a = f.get_int("catmap", "a", c.mat_a);
    c.mat_b = f.get_int("catmap", "b", c.mat_b);
    c.mat_c = f.get_int("catmap", "c", c.mat_c);
    c.mat_d = f.get_int("catmap", "d", c.mat_d);
    c.q_max = f.get_int("catmap", "q_max", c.q_max);
    c.classes_q_max = f.get_int("catmap", "classes_q_max", c.classes_q_max);
    c.exponent_tol = f.get_double("catmap", "exponent_tol", c.exponent_tol);
    c.budget = f.get_double("catmap", "budget", c.budget);
    c.angle_min = f.get_double("catmap", "angle_min", c.angle_min);
    c.angle_evidence_tol = f.get_double("catmap", "angle_evidence_tol", c.angle_evidence_tol);
    c.domination_N_max = static_cast<int>(f.get_int("catmap", "domination_N_max", c.domination_N_max));
    c.seed = static_cast<unsigned>(f.get_int("catmap", "seed", c.seed));
    c.validate();
    return c;
}

BlowupExperimentConfig blowup_config_from(const ConfigFile& f) {
    BlowupExperimentConfig c;
    c.mat_a = f.get_int("blowup", "a", c.mat_a);
    c.mat_b = f.get_int("blowup", "b", c.mat_b);
    c.mat_c = f.get_int("blowup", "c", c.mat_c);
    c.mat_d = f.get_int("blowup", "d", c.mat_d);
    std::vector<double> qd(c.q_list.begin(), c.q_list.end());
    qd = f.get_list("blowup", "q_list", qd);
    c.q_list.assign(qd.begin(), qd.end());
    c.radius = f.get_double("blowup", "radius", c.radius);
    c.ratio_lo = f.get_double("blowup", "ratio_lo", c.ratio_lo);
    c.ratio_hi = f.get_double("blowup", "ratio_hi", c.ratio_hi);
    c.direction_tol = f.get_double("blowup", "direction_tol", c.direction_tol);
    c.eigen_tol = f.get_double("blowup", "eigen_tol", c.eigen_tol);
    c.conjugacy_tol = f.get_double("blowup", "conjugacy_tol", c.conjugacy_tol);
    c.conjugacy_samples = static_cast<int>(f.get_int("blowup", "conjugacy_samples", c.conjugacy_samples));
    c.budget = f.get_double("blowup", "budget", c.budget);
    c.angle_min = f.get_double("blowup", "angle_min", c.angle_min);
    c.seed = static_cast<unsigned>(f.get_int("blowup", "seed", c.seed));
    c.validate();
    return c;
}

Figure8ExperimentConfig figure8_config_from(const ConfigFile& f) {
    Figure8ExperimentConfig c;
    c.substeps_M = static_cast<int>(f.get_int("figure8", "substeps_M", c.substeps_M));
    c.T = f.get_int("figure8", "T", c.T);
    c.eps_list = f.get_list("figure8", "eps_list", c.eps_list);
    c.family = f.get_string("figure8", "family", c.family);
    c.family_K = static_cast<std::size_t>(f.get_int("figure8", "family_K", static_cast<long long>(c.family_K)));
    c.D_max_at_finest = f.get_double("figure8", "D_max_at_finest", c.D_max_at_finest);
    c.exponent_eps = f.get_double("figure8", "exponent_eps", c.exponent_eps);
    c.exponent_max = f.get_double("figure8", "exponent_max", c.exponent_max);
    c.drift_max = f.get_double("figure8", "drift_max", c.drift_max);
    c.det_tol = f.get_double("figure8", "det_tol", c.det_tol);
    c.det_samples = static_cast<int>(f.get_int("figure8", "det_samples", c.det_samples));
    c.domination_N_max = static_cast<int>(f.get_int("figure8", "domination_N_max", c.domination_N_max));
    c.domination_segment = static_cast<int>(f.get_int("figure8", "domination_segment", c.domination_segment));
    c.seed = static_cast<unsigned>(f.get_int("figure8", "seed", c.seed));
    c.validate();
    return c;
}

}  // namespace hypdyn
