#include "hypdyn/test_functions.hpp"

#include <cmath>

namespace hypdyn {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double TestFunctionFamily::tail_bound() const {
    return std::ldexp(2.0, -static_cast<int>(truncation_K));  // 2^{1-K}
}

void TestFunctionFamily::validate() const {
    if (functions.empty()) throw ParameterError("TestFunctionFamily: empty family");
    if (truncation_K == 0 || truncation_K > functions.size())
        throw ParameterError("TestFunctionFamily: truncation_K out of range");
    for (const auto& fn : functions)
        if (!(fn.sup_norm > 0)) throw ParameterError("TestFunctionFamily: nonpositive sup norm");
}

TestFunctionFamily torus_default_family(int kmax) {
    TestFunctionFamily fam;
    fam.space = PhaseSpace::Torus2;
    fam.name = "torus-fourier";
    // canonical representatives of +-(k1,k2): k1 > 0, or k1 == 0 and k2 > 0
    std::vector<std::pair<int, int>> freqs;
    for (int k1 = 0; k1 <= kmax; ++k1)
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            freqs.emplace_back(k1, k2);
        }
    std::stable_sort(freqs.begin(), freqs.end(), [](auto a, auto b) {
        int oa = std::abs(a.first) + std::abs(a.second), ob = std::abs(b.first) + std::abs(b.second);
        return oa != ob ? oa < ob : a < b;
    });
    for (auto [k1, k2] : freqs) {
        auto phase = [k1 = k1, k2 = k2](const Eigen::Vector2d& p) { return kTwoPi * (k1 * p.x() + k2 * p.y()); };
        fam.functions.push_back({[phase](const Eigen::Vector2d& p) { return std::cos(phase(p)); }, 1.0,
                                 "cos2pi(" + std::to_string(k1) + "x+" + std::to_string(k2) + "y)"});
        fam.functions.push_back({[phase](const Eigen::Vector2d& p) { return std::sin(phase(p)); }, 1.0,
                                 "sin2pi(" + std::to_string(k1) + "x+" + std::to_string(k2) + "y)"});
    }
    fam.truncation_K = fam.functions.size();
    return fam;
}

TestFunctionFamily cylinder_default_family(int kmax, int jmax, double window_w, double y_extent) {
    TestFunctionFamily fam;
    fam.space = PhaseSpace::Cylinder;
    fam.name = "cylinder-windowed";
    struct Spec {
        int k, j;
        bool sine;
    };
    std::vector<Spec> specs;
    for (int order = 0; order <= kmax + jmax; ++order)
        for (int k = 0; k <= std::min(order, kmax); ++k) {
            int j = order - k;
            if (j > jmax) continue;
            specs.push_back({k, j, false});
            if (k > 0) specs.push_back({k, j, true});
        }

    auto raw = [window_w](const Spec& s, const Eigen::Vector2d& p) {
        double g = std::pow(p.y(), s.j) * std::exp(-p.y() * p.y() / (2 * window_w * window_w));
        if (s.k == 0) return g;
        double ang = kTwoPi * s.k * p.x();
        return (s.sine ? std::sin(ang) : std::cos(ang)) * g;
    };

    // sup norm over a 400x400 sample grid, 1.05 safety factor
    const int G = 400;
    for (const Spec& s : specs) {
        double sup = 0;
        for (int ix = 0; ix < G; ++ix)
            for (int iy = 0; iy < G; ++iy) {
                Eigen::Vector2d p(ix / double(G), -y_extent + 2 * y_extent * iy / double(G - 1));
                sup = std::max(sup, std::fabs(raw(s, p)));
            }
        sup *= 1.05;
        std::string label = (s.k == 0 ? std::string("") : (s.sine ? "sin" : "cos") + std::string("2pi(") +
                                                              std::to_string(s.k) + "x)*") +
                            "y^" + std::to_string(s.j) + "*gauss(w=" + std::to_string(window_w) + ")";
        fam.functions.push_back({[raw, s](const Eigen::Vector2d& p) { return raw(s, p); }, sup, label});
    }
    fam.truncation_K = fam.functions.size();
    return fam;
}

TestFunctionFamily make_family(const std::string& name, std::size_t K) {
    TestFunctionFamily fam;
    if (name == "torus-fourier" || name == "torus") {
        fam = torus_default_family();
    } else if (name == "cylinder-windowed" || name == "cylinder") {
        fam = cylinder_default_family();
    } else {
        throw ParameterError("unknown test-function family: " + name);
    }
    if (K > 0) {
        if (K > fam.functions.size()) throw ParameterError("family " + name + " has fewer functions than requested K");
        fam.truncation_K = K;
    }
    return fam;
}

}  // namespace hypdyn
