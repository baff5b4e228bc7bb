#pragma once

// Pliss-time combinatorics on finite and periodic real sequences.
//
// An index m >= 1 is a c1-Pliss time of (a_i) when
//     sum_{i=k+1..m} a_i >= c1 (m - k)   for every k = 0..m-1,
// equivalently, with S_m = a_1 + ... + a_m,
//     S_m - c1 m >= max_{k<m} (S_k - c1 k).
// All indices in this module are 1-based to match that convention.
//
// Everything is templated over the scalar so the same code runs in exact
// rational arithmetic (tests, --verify) and in double precision on orbit
// data. In floating point the ">=" of the definition is evaluated as
// ">= -tie_tol" so that round-off cannot flip a membership decision that the
// caller wants to treat as a tie.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "hypdyn/errors.hpp"

namespace hypdyn::pliss {

using Index = std::size_t;
using IndexSet = std::vector<Index>;  // ascending, 1-based

template <typename T>
struct RealSequence {
    std::vector<T> values;  // values[i-1] holds a_i
    T bound_A{};            // |a_i| <= bound_A

    std::size_t size() const { return values.size(); }
    const T& at(Index i) const { return values[i - 1]; }

    // Computes bound_A = max |a_i| (and validates n >= 1).
    static RealSequence from_values(std::vector<T> v) {
        if (v.empty()) throw ParameterError("RealSequence: empty sequence");
        T a = v[0] < T(0) ? -v[0] : v[0];
        for (const T& x : v) {
            T ax = x < T(0) ? -x : x;
            if (ax > a) a = ax;
        }
        return RealSequence{std::move(v), a};
    }

    void validate() const {
        if (values.empty()) throw ParameterError("RealSequence: empty sequence");
        for (const T& x : values) {
            T ax = x < T(0) ? -x : x;
            if (ax > bound_A) throw PreconditionError("RealSequence: |a_i| <= bound_A violated");
        }
    }
};

// a_i = one_period[((i-1) mod pi) + 1] for all i >= 1.
template <typename T>
struct PeriodicSequence {
    RealSequence<T> one_period;

    std::size_t period() const { return one_period.size(); }
    const T& at(Index i) const { return one_period.values[(i - 1) % period()]; }

    T period_sum() const {
        T s(0);
        for (const T& x : one_period.values) s += x;
        return s;
    }

    RealSequence<T> unroll(std::size_t copies) const {
        std::vector<T> v;
        v.reserve(period() * copies);
        for (std::size_t c = 0; c < copies; ++c)
            v.insert(v.end(), one_period.values.begin(), one_period.values.end());
        return RealSequence<T>{std::move(v), one_period.bound_A};
    }
};

// Disjoint cover of {1..n}.
struct IndexPartition {
    IndexSet I0, J0, K0;

    void validate(std::size_t n) const {
        std::vector<char> seen(n + 1, 0);
        auto mark = [&](const IndexSet& s, const char* name) {
            for (Index i : s) {
                if (i < 1 || i > n) throw PreconditionError(std::string("IndexPartition: ") + name + " index out of range");
                if (seen[i]++) throw PreconditionError("IndexPartition: sets not disjoint");
            }
        };
        mark(I0, "I0");
        mark(J0, "J0");
        mark(K0, "K0");
        for (Index i = 1; i <= n; ++i)
            if (!seen[i]) throw PreconditionError("IndexPartition: union not exhaustive");
    }
};

namespace detail {

inline std::vector<char> mask_of(const IndexSet& s, std::size_t n) {
    std::vector<char> m(n + 1, 0);
    for (Index i : s) {
        if (i < 1 || i > n) throw ParameterError("index set entry out of range");
        m[i] = 1;
    }
    return m;
}

}  // namespace detail

// Linear-time scan: S_m - c1 m against the running maximum of S_k - c1 k.
template <typename T>
IndexSet pliss_times(const std::vector<T>& a, const T& c1, const T& tie_tol = T(0)) {
    IndexSet out;
    T s(0);        // S_m - c1 m
    T best(0);     // max_{k < m} (S_k - c1 k), k = 0 gives 0
    for (Index m = 1; m <= a.size(); ++m) {
        s += a[m - 1] - c1;
        if (s >= best - tie_tol) out.push_back(m);
        if (s > best) best = s;
    }
    return out;
}

template <typename T>
IndexSet pliss_times(const RealSequence<T>& a, const T& c1, const T& tie_tol = T(0)) {
    return pliss_times(a.values, c1, tie_tol);
}

// O(n^2) check of the defining inequality for every (m, k). Retained as the
// independent oracle for --verify and the exhaustive test sweeps.
template <typename T>
IndexSet pliss_times_oracle(const std::vector<T>& a, const T& c1, const T& tie_tol = T(0)) {
    IndexSet out;
    for (Index m = 1; m <= a.size(); ++m) {
        bool ok = true;
        T sum(0);
        for (Index k = m; k-- > 0;) {  // sum a_{k+1..m}, growing from the right
            sum += a[k];
            if (!(sum >= c1 * T(static_cast<long long>(m - k)) - tie_tol)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(m);
    }
    return out;
}

// theta = (c2 - c1) / (A - c1); the guaranteed Pliss-time fraction.
template <typename T>
T pliss_theta(const T& A, const T& c1, const T& c2) {
    if (!(A >= c2 && c2 > c1)) throw ParameterError("pliss_theta: need A >= c2 > c1");
    return (c2 - c1) / (A - c1);
}

struct PlissCounts {
    std::size_t total = 0;      // |pliss_times|
    std::size_t from_two = 0;   // |pliss_times ∩ {2..n}|; the count the theta bound certifies
};

template <typename T>
struct PlissReport {
    IndexSet pliss_times;
    T theta_bound;
    PlissCounts counts;
};

template <typename T>
PlissReport<T> pliss_report(const RealSequence<T>& a, const T& c1, const T& c2, const T& tie_tol = T(0)) {
    PlissReport<T> r;
    r.pliss_times = pliss_times(a, c1, tie_tol);
    r.theta_bound = pliss_theta(a.bound_A, c1, c2);
    r.counts.total = r.pliss_times.size();
    r.counts.from_two = r.counts.total - (r.pliss_times.empty() || r.pliss_times.front() != 1 ? 0 : 1);
    return r;
}

// Localized criterion 1: lower the sequence to min(a_i, c0) off I. Pliss
// times of the lowered sequence lie in I and are Pliss times of a.
template <typename T>
IndexSet localized_pliss_lowering(const RealSequence<T>& a, const IndexSet& I, const T& c0, const T& c1,
                                  const T& tie_tol = T(0)) {
    if (!(c0 < c1)) throw ParameterError("localized_pliss_lowering: need c0 < c1");
    auto in_I = detail::mask_of(I, a.size());
    std::vector<T> b(a.values);
    for (Index i = 1; i <= a.size(); ++i)
        if (!in_I[i]) b[i - 1] = std::min(b[i - 1], c0);
    return pliss_times(b, c1, tie_tol);
}

// J-reduced sequence: delete entries with index in J, renumber by i(j).
template <typename T>
struct Reduction {
    std::vector<T> values;            // b_j = a_{i(j)}
    std::vector<Index> orig_index;    // i(j), strictly increasing
};

template <typename T>
Reduction<T> reduced_sequence(const RealSequence<T>& a, const IndexSet& J) {
    auto in_J = detail::mask_of(J, a.size());
    Reduction<T> r;
    for (Index i = 1; i <= a.size(); ++i) {
        if (!in_J[i]) {
            r.values.push_back(a.at(i));
            r.orig_index.push_back(i);
        }
    }
    if (r.values.empty()) throw ParameterError("reduced_sequence: J removes every index");
    return r;
}

// Periodic variant: J given as a subset of {1..pi}, meaning J0 + pi*N.
// The reduction of a pi-periodic sequence by a periodic index set is again
// periodic, with period pi - |J0 ∩ {1..pi}|.
template <typename T>
struct PeriodicReduction {
    PeriodicSequence<T> sequence;
    std::vector<Index> orig_index;  // i(j) for j = 1..reduced period
};

template <typename T>
PeriodicReduction<T> reduced_sequence(const PeriodicSequence<T>& a, const IndexSet& J0) {
    Reduction<T> one = reduced_sequence(a.one_period, J0);
    RealSequence<T> rs{std::move(one.values), a.one_period.bound_A};
    return PeriodicReduction<T>{PeriodicSequence<T>{std::move(rs)}, std::move(one.orig_index)};
}

// Localized criterion 2: remove J (where a_i >= c1 is required), find Pliss
// times of the reduced sequence, map back through i(m).
template <typename T>
IndexSet localized_pliss_reduction(const RealSequence<T>& a, const IndexSet& I, const IndexSet& J, const T& c1,
                                   const T& tie_tol = T(0)) {
    auto in_I = detail::mask_of(I, a.size());
    auto in_J = detail::mask_of(J, a.size());
    for (Index i = 1; i <= a.size(); ++i) {
        if (in_I[i] && in_J[i]) throw PreconditionError("localized_pliss_reduction: I and J overlap");
        if (!in_I[i] && !in_J[i]) throw PreconditionError("localized_pliss_reduction: I ∪ J must cover all indices");
        if (in_J[i] && !(a.at(i) >= c1 - tie_tol))
            throw PreconditionError("localized_pliss_reduction: a_i >= c1 fails on J at index " + std::to_string(i));
    }
    if (J.size() == a.size()) throw ParameterError("localized_pliss_reduction: J removes every index");
    Reduction<T> red = reduced_sequence(a, J);
    IndexSet times = pliss_times(red.values, c1, tie_tol);
    IndexSet out;
    out.reserve(times.size());
    for (Index m : times) out.push_back(red.orig_index[m - 1]);
    return out;
}

// Ultimate c1-Pliss times of a periodic sequence: i in {1..pi} with i + n*pi
// a Pliss time for every n >= 0. A Pliss time larger than the period
// stabilizes (i + pi Pliss implies i + pi + n*pi Pliss for all n), so
// checking the unrolled sequence up to 3*pi decides the condition exactly;
// the Pliss property of index m only involves a_1..a_m, so finite unrolling
// introduces no truncation error.
template <typename T>
IndexSet ultimate_pliss_times(const PeriodicSequence<T>& a, const T& c1, const T& tie_tol = T(0)) {
    const std::size_t pi = a.period();
    RealSequence<T> unrolled = a.unroll(3);
    IndexSet times = pliss_times(unrolled, c1, tie_tol);
    std::vector<char> is_time(3 * pi + 1, 0);
    for (Index m : times) is_time[m] = 1;
    IndexSet out;
    for (Index i = 1; i <= pi; ++i)
        if (is_time[i] && is_time[i + pi] && is_time[i + 2 * pi]) out.push_back(i);
    return out;
}

template <typename T>
struct PretaporterResult {
    bool hypothesis_holds = false;
    IndexSet ultimate_times_in_I0;  // certified ultimate c1-Pliss times of (a_i), all in I0
    T fraction{};                   // |ultimate_times_in_I0| / |I0 ∪ K0|
    T theta{};                      // certified lower bound for fraction when the hypothesis holds
};

// Pret-a-porter corollary: J-reduce, lower to -A on K, and read off ultimate
// Pliss times of the resulting periodic sequence (d_j). Every such time maps
// through i(j) to an ultimate c1-Pliss time of (a_i) inside I0, and when the
// d-average over one reduced period is >= c2 their fraction of |I0 ∪ K0| is
// at least theta = (c2-c1)/(A-c1).
template <typename T>
PretaporterResult<T> pretaporter(const PeriodicSequence<T>& a, const IndexPartition& parts, const T& A, const T& c1,
                                 const T& c2, const T& tie_tol = T(0)) {
    const std::size_t pi = a.period();
    parts.validate(pi);
    if (!(-A < c1 && c1 < c2 && c2 < A)) throw ParameterError("pretaporter: need -A < c1 < c2 < A");
    for (const T& x : a.one_period.values) {
        T ax = x < T(0) ? -x : x;
        if (!(ax <= A + tie_tol)) throw PreconditionError("pretaporter: |a_i| <= A violated");
    }
    for (Index i : parts.J0)
        if (!(a.at(i) >= c2 - tie_tol))
            throw PreconditionError("pretaporter: a_i >= c2 fails on J0 at index " + std::to_string(i));
    if (parts.J0.size() == pi) throw ParameterError("pretaporter: J0 removes every index");

    PeriodicReduction<T> red = reduced_sequence(a, parts.J0);
    auto in_K = detail::mask_of(parts.K0, pi);
    std::vector<T> d = red.sequence.one_period.values;
    for (std::size_t j = 0; j < d.size(); ++j)
        if (in_K[red.orig_index[j]]) d[j] = -A;

    const std::size_t reduced_pi = d.size();  // = |I0 ∪ K0|
    PretaporterResult<T> out;
    out.theta = pliss_theta(A, c1, c2);

    T dsum(0);
    for (const T& x : d) dsum += x;
    out.hypothesis_holds = dsum >= c2 * T(static_cast<long long>(reduced_pi)) - tie_tol;

    PeriodicSequence<T> dper{RealSequence<T>{std::move(d), A}};
    IndexSet dtimes = ultimate_pliss_times(dper, c1, tie_tol);
    for (Index j : dtimes) out.ultimate_times_in_I0.push_back(red.orig_index[j - 1]);
    out.fraction = T(static_cast<long long>(out.ultimate_times_in_I0.size())) / T(static_cast<long long>(reduced_pi));
    return out;
}

}  // namespace hypdyn::pliss
