#include "hypdyn/cocycle.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hypdyn::cocycle {

namespace {

// Product J_{base+n-1} ... J_{base} * B0 in the factored form Q * R * e^s.
// QR re-orthonormalization every kQRStride steps keeps Q well conditioned;
// the scalar rescale of R carries the magnitude in log space.
constexpr std::size_t kQRStride = 16;

struct ScaledProduct {
    Eigen::MatrixXd Q;   // d x k, orthonormal columns
    Eigen::MatrixXd R;   // k x k
    double log_scale = 0;

    void init(const Eigen::MatrixXd& B0) {
        Q = B0;
        R = Eigen::MatrixXd::Identity(B0.cols(), B0.cols());
        log_scale = 0;
    }
    void refactor() {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Q);
        Eigen::MatrixXd Qn = qr.householderQ() * Eigen::MatrixXd::Identity(Q.rows(), Q.cols());
        Eigen::MatrixXd Rn = Qn.transpose() * Q;
        Q = Qn;
        R = Rn * R;
        double m = R.cwiseAbs().maxCoeff();
        if (m > 0) {
            R /= m;
            log_scale += std::log(m);
        }
    }
    void multiply(const Eigen::MatrixXd& J, bool force_refactor) {
        Q = J * Q;
        if (force_refactor) refactor();
    }
    std::pair<double, double> log_singular_values() const {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Q * R);
        const auto& sv = svd.singularValues();
        return {log_scale + std::log(sv(0)), log_scale + std::log(sv(sv.size() - 1))};
    }
};

void check_range(const OrbitSegment& orbit, std::size_t n, std::size_t base) {
    if (!orbit.periodic() && base + n > orbit.steps())
        throw ParameterError("cocycle: base + n exceeds the segment length");
}

}  // namespace

std::pair<double, double> restricted_log_singular_values(const OrbitSegment& orbit, const SplittingFrame& frame,
                                                         Bundle bundle, std::size_t n, std::size_t base) {
    check_range(orbit, n, base);
    ScaledProduct prod;
    prod.init(frame.basis(bundle == Bundle::E, base, orbit.periodic()));
    for (std::size_t s = 0; s < n; ++s)
        prod.multiply(orbit.jac(base + s), (s + 1) % kQRStride == 0 || s + 1 == n);
    return prod.log_singular_values();
}

double bundle_log_norm(const OrbitSegment& orbit, const SplittingFrame& frame, Bundle bundle, std::size_t n,
                       std::size_t base) {
    auto [lmax, lmin] = restricted_log_singular_values(orbit, frame, bundle, n, base);
    return bundle == Bundle::E ? lmax : -lmin;  // F: log ||(df^n|_F)^{-1}|| = -log sigma_min
}

ExponentResult periodic_exponents(const OrbitSegment& orbit) {
    if (!orbit.periodic()) throw ParameterError("periodic_exponents: orbit not periodic");
    orbit.validate();
    const std::size_t pi = *orbit.period;
    const std::size_t d = orbit.dim();

    auto singular_value_fallback = [&](bool flag) {
        ScaledProduct prod;
        prod.init(Eigen::MatrixXd::Identity(d, d));
        for (std::size_t i = 0; i < pi; ++i) prod.multiply(orbit.jac(i), (i + 1) % kQRStride == 0 || i + 1 == pi);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(prod.Q * prod.R);
        ExponentResult res;
        res.defective_flagged = flag;
        for (Eigen::Index i = svd.singularValues().size(); i-- > 0;)
            res.exponents.push_back((prod.log_scale + std::log(svd.singularValues()(i))) / double(pi));
        std::sort(res.exponents.begin(), res.exponents.end());
        return res;
    };

    if (d != 2) return singular_value_fallback(false);

    // Characteristic polynomial of the rescaled product. log|det| of the full
    // product accumulates exactly from the factors, so the small eigenvalue
    // is recovered as log|det| - log|lambda_+| without cancellation.
    Eigen::Matrix2d P = Eigen::Matrix2d::Identity();
    double log_scale = 0, log_det = 0;
    for (std::size_t i = 0; i < pi; ++i) {
        P = orbit.jac(i) * P;
        log_det += std::log(std::fabs(orbit.jac(i).determinant()));
        double m = P.cwiseAbs().maxCoeff();
        P /= m;
        log_scale += std::log(m);
    }
    const double tr = P.trace();
    const double det = P.determinant();
    const double disc = tr * tr - 4 * det;
    const double scale = tr * tr + 4 * std::fabs(det);

    ExponentResult res;
    if (disc > 1e-12 * scale) {  // real, separated eigenvalues
        const double lam_big = (std::fabs(tr) + std::sqrt(disc)) / 2;
        const double log_big = log_scale + std::log(lam_big);
        res.exponents = {log_det - log_big, log_big};
        for (double& e : res.exponents) e /= double(pi);
        std::sort(res.exponents.begin(), res.exponents.end());
        return res;
    }
    if (disc < -1e-12 * scale) {  // complex pair, equal moduli
        res.exponents = {log_det / (2 * pi), log_det / (2 * pi)};
        return res;
    }
    return singular_value_fallback(true);  // repeated real root within tolerance
}

double subadditive_average(const std::vector<WeightedOrbit>& ensemble, std::size_t n, Bundle bundle) {
    if (ensemble.empty()) throw ParameterError("subadditive_average: empty ensemble");
    if (n < 1) throw ParameterError("subadditive_average: n >= 1 required");
    double sum = 0, comp = 0;  // Kahan, so reduction order cannot matter
    auto add = [&](double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    for (const auto& w : ensemble) {
        const OrbitSegment& orb = *w.orbit;
        std::size_t bases = orb.periodic() ? orb.steps() : orb.steps() >= n ? orb.steps() - n + 1 : 0;
        if (bases == 0) throw ParameterError("subadditive_average: segment shorter than n");
        double orbit_sum = 0, orbit_comp = 0;
        for (std::size_t b = 0; b < bases; ++b) {
            double x = bundle_log_norm(orb, *w.frame, bundle, n, b) - orbit_comp;
            double t = orbit_sum + x;
            orbit_comp = (t - orbit_sum) - x;
            orbit_sum = t;
        }
        add(w.weight * orbit_sum / (double(n) * double(bases)));
    }
    return sum;
}

double CFunctionValue::value() const { return std::exp(log_value); }

CFunctionValue c_function(const OrbitSegment& orbit, const SplittingFrame& frame, int N, double lambda,
                          Bundle bundle, std::size_t base) {
    if (N < 1) throw ParameterError("c_function: N >= 1 required");
    const bool forward = bundle == Bundle::E;

    std::size_t k_max;
    if (orbit.periodic()) {
        k_max = *orbit.period;  // finite-reduction lemma: the sup is attained for k <= pi(p)
    } else if (forward) {
        k_max = (orbit.steps() - std::min(base, orbit.steps())) / static_cast<std::size_t>(N);
    } else {
        k_max = base / static_cast<std::size_t>(N);
    }

    // log t_k = k N lambda + sum_{l<k} block_l, block_l = psi_N at the l-th
    // N-block (forward blocks for E, backward blocks for F).
    auto block = [&](std::size_t l) {
        if (forward) return bundle_log_norm(orbit, frame, Bundle::E, N, base + l * N);
        // backward: ||df^{-N}_{/F}|| at f^{-lN}(x) = ||(df^N|_F)^{-1}|| based at f^{-(l+1)N}(x)
        std::size_t b;
        if (orbit.periodic()) {
            const std::size_t pi = *orbit.period;
            const std::size_t back = ((l + 1) * static_cast<std::size_t>(N)) % pi;
            b = (base + pi - back) % pi;
        } else {
            b = base - (l + 1) * static_cast<std::size_t>(N);
        }
        return bundle_log_norm(orbit, frame, Bundle::F, N, b);
    };

    CFunctionValue out;
    double running = 0;  // log of prod_{l<k} * e^{kN lambda}
    for (std::size_t k = 1; k <= k_max; ++k) {
        running += N * lambda + block(k - 1);
        if (running > out.log_value) {
            out.log_value = running;
            out.argmax_k = k;
        }
    }
    if (orbit.periodic()) {
        if (running >= 0)  // one-period product >= e^{-pi N lambda}: sup over all k is infinite
            throw NotContracting("c_function: orbit is not lambda-contracting on the bundle (log one-period term = " +
                                 std::to_string(running) + ")");
    } else {
        out.divergence_flag = out.argmax_k == k_max && k_max > 0;
    }
    return out;
}

double manifold_size(double c_value, double delta) {
    if (!(c_value >= 1)) throw ParameterError("manifold_size: C >= 1 required");
    if (!(delta > 0)) throw ParameterError("manifold_size: delta > 0 required");
    return delta / c_value;
}

double manifold_size_from_log(double log_c_value, double delta) {
    if (!(log_c_value >= -1e-12)) throw ParameterError("manifold_size: log C >= 0 required");
    if (!(delta > 0)) throw ParameterError("manifold_size: delta > 0 required");
    return delta * std::exp(-log_c_value);
}

std::optional<int> domination_check(const OrbitSegment& orbit, const SplittingFrame& frame, int N_max) {
    if (N_max < 1) throw ParameterError("domination_check: N_max >= 1 required");
    for (int N = 1; N <= N_max; ++N) {
        const std::size_t bases =
            orbit.periodic() ? orbit.steps()
                             : (orbit.steps() >= static_cast<std::size_t>(N) ? orbit.steps() - N + 1 : 0);
        if (bases == 0) break;
        bool ok = true;
        for (std::size_t b = 0; b < bases && ok; ++b) {
            auto [e_max, e_min] = restricted_log_singular_values(orbit, frame, Bundle::E, N, b);
            auto [f_max, f_min] = restricted_log_singular_values(orbit, frame, Bundle::F, N, b);
            (void)e_min;
            (void)f_max;
            ok = std::exp(e_max) <= 0.5 * std::exp(f_min);
        }
        if (ok) return N;
    }
    return std::nullopt;
}

HyperbolicTimes hyperbolic_times(const OrbitSegment& orbit, const SplittingFrame& frame,
                                 const HyperbolicityEstimate& est, double c1, double tie_tol) {
    if (!orbit.periodic()) throw ParameterError("hyperbolic_times: orbit must be periodic");
    est.validate();
    const std::size_t pi = *orbit.period;
    const std::size_t N = static_cast<std::size_t>(est.N);

    HyperbolicTimes out;
    out.bound_A = est.N * est.Cf;
    std::vector<double> a(pi);
    std::vector<std::size_t> pos(pi);
    for (std::size_t i = 1; i <= pi; ++i) {
        const std::size_t b = (pi - (i * N) % pi) % pi;  // orbit index of f^{-iN}(x_0)
        pos[i - 1] = b;
        a[i - 1] = -bundle_log_norm(orbit, frame, Bundle::E, N, b);
    }
    out.sequence = pliss::PeriodicSequence<double>{pliss::RealSequence<double>{std::move(a), out.bound_A}};
    out.pliss_indices = pliss::ultimate_pliss_times(out.sequence, c1, tie_tol);
    for (auto i : out.pliss_indices) out.orbit_positions.push_back(pos[i - 1]);
    return out;
}

double occupation_frequency(const OrbitSegment& orbit, int N,
                            const std::function<bool(const Eigen::VectorXd&)>& region) {
    if (!orbit.periodic()) throw ParameterError("occupation_frequency: orbit must be periodic");
    const std::size_t pi = *orbit.period;
    std::size_t count = 0;
    for (std::size_t l = 0; l < pi; ++l)
        if (region(orbit.point((l * static_cast<std::size_t>(N)) % pi))) ++count;
    return double(count) / double(pi);
}

CfConstant cf_constant(const OrbitSegment& orbit) {
    CfConstant out;
    for (const auto& J : orbit.jacobians) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        const auto& sv = svd.singularValues();
        out.raw = std::max(out.raw, std::log(sv(0)));
        out.raw = std::max(out.raw, -std::log(sv(sv.size() - 1)));
    }
    out.clamped = std::max(out.raw, 1.0 + 1e-9);
    return out;
}

}  // namespace hypdyn::cocycle
