#include "hypdyn/wstar.hpp"

#include <cmath>

namespace hypdyn {

DistanceReport wstar_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                              const TestFunctionFamily& family) {
    family.validate();
    if (mu.space != nu.space || mu.space != family.space)
        throw ParameterError("wstar_distance: phase space mismatch");
    DistanceReport rep;
    rep.K = family.truncation_K;
    rep.family = family.name;
    rep.tail_bound = family.tail_bound();
    double weight = 0.5;  // (2^n)^{-1}
    for (std::size_t n = 0; n < family.truncation_K; ++n) {
        const auto& fn = family.functions[n];
        rep.value += weight / fn.sup_norm * std::fabs(integrate(mu, fn.f) - integrate(nu, fn.f));
        weight *= 0.5;
    }
    return rep;
}

namespace {

// All (m_1,...,m_k) with nonnegative entries summing to grid_m.
void enumerate_compositions(int grid_m, int k, std::vector<int>& cur,
                            const std::function<void(const std::vector<int>&)>& visit) {
    if (k == 1) {
        cur.push_back(grid_m);
        visit(cur);
        cur.pop_back();
        return;
    }
    for (int m = 0; m <= grid_m; ++m) {
        cur.push_back(m);
        enumerate_compositions(grid_m - m, k - 1, cur, visit);
        cur.pop_back();
    }
}

}  // namespace

SimplexProjection distance_to_simplex(const EmpiricalMeasure& nu, const std::vector<EmpiricalMeasure>& vertices,
                                      const TestFunctionFamily& family, int grid_m) {
    family.validate();
    if (vertices.empty()) throw ParameterError("distance_to_simplex: empty vertex list");
    if (grid_m < 1) throw ParameterError("distance_to_simplex: grid_m >= 1 required");

    const std::size_t K = family.truncation_K;
    const std::size_t k = vertices.size();
    // precompute integrals: I[n][j] = int phi_n dmu_j, target[n] = int phi_n dnu
    std::vector<std::vector<double>> I(K, std::vector<double>(k));
    std::vector<double> target(K);
    for (std::size_t n = 0; n < K; ++n) {
        target[n] = integrate(nu, family.functions[n].f);
        for (std::size_t j = 0; j < k; ++j) I[n][j] = integrate(vertices[j], family.functions[n].f);
    }

    SimplexProjection best;
    best.dist = std::numeric_limits<double>::infinity();
    std::vector<int> cur;
    enumerate_compositions(grid_m, static_cast<int>(k), cur, [&](const std::vector<int>& m) {
        double d = 0;
        double weight = 0.5;
        for (std::size_t n = 0; n < K; ++n) {
            double v = 0;
            for (std::size_t j = 0; j < k; ++j) v += m[j] * I[n][j];
            v /= grid_m;
            d += weight / family.functions[n].sup_norm * std::fabs(v - target[n]);
            weight *= 0.5;
        }
        if (d < best.dist) {
            best.dist = d;
            best.best_weights.s.assign(m.size(), 0.0);
            for (std::size_t j = 0; j < k; ++j) best.best_weights.s[j] = double(m[j]) / grid_m;
        }
    });
    return best;
}

}  // namespace hypdyn
