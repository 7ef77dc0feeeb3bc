#pragma once

// Time integration of the master equation.
//
// The default backend is the Dormand-Prince 5(4) embedded pair with its
// 4th-order continuous extension, so samples are read off the dense output
// instead of forcing steps onto the sample grid. The matrix-exponential
// backend propagates exp(L t) directly and serves as a cross-check.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "blockade/liouville.hpp"

namespace blockade {

enum class Propagator { DormandPrince, MatrixExponential };

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double max_step = 0.5;  ///< in units of 1/gamma
    std::optional<double> initial_step;  ///< in units of 1/gamma
    Propagator propagator = Propagator::DormandPrince;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
            throw InputError("IntegratorConfig: tolerances must be positive");
        }
        if (!(max_step > 0.0)) {
            throw InputError("IntegratorConfig: max_step must be positive");
        }
        if (initial_step && !(*initial_step > 0.0)) {
            throw InputError("IntegratorConfig: initial_step must be positive");
        }
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    SystemParams params;
    double max_trace_drift = 0.0;        ///< |Tr rho - 1| before renormalization
    double max_hermiticity_drift = 0.0;  ///< max |rho - rho^dagger| before re-Hermitization
};

namespace detail {

struct DormandPrince {
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    // 5th minus 4th order weights
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    // continuous extension
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

inline double error_norm(const Vector16c& err, const Vector16c& y0, const Vector16c& y1, const IntegratorConfig& cfg) {
    double sum = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(err[i]) / scale;
        sum += r * r;
    }
    return std::sqrt(sum / 16.0);
}

inline void check_sample_times(std::span<const double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0) {
            throw InputError("sample times must be finite and non-negative");
        }
        if (i > 0 && times[i] < times[i - 1]) {
            throw InputError("sample times must be non-decreasing");
        }
    }
}

/// Solves dy/dt = L y from t = 0 and returns y at each (sorted, non-negative) sample time.
inline std::vector<Vector16c> propagate_dopri(const Superoperator& l, const Vector16c& y0,
                                              std::span<const double> times, double rate_scale,
                                              const IntegratorConfig& cfg) {
    using T = DormandPrince;
    std::vector<Vector16c> out;
    out.reserve(times.size());
    if (times.empty()) {
        return out;
    }
    const double t_final = times.back();
    const double max_step = cfg.max_step / rate_scale;

    double t = 0.0;
    Vector16c y = y0;
    Vector16c k1 = l * y;
    double h = cfg.initial_step ? *cfg.initial_step / rate_scale : std::min(max_step, 1e-3 / rate_scale);
    std::size_t next = 0;
    while (next < times.size() && times[next] <= 0.0) {
        out.push_back(y);
        ++next;
    }

    while (next < times.size()) {
        const double remaining = t_final - t;
        h = std::min(h, max_step);
        const bool last = h >= remaining;
        if (last) {
            h = remaining;
        } else if (h < 1e-14 * std::max(1.0, std::abs(t) * rate_scale) / rate_scale) {
            throw IntegrationFailure("step size underflow at t = " + std::to_string(t), t);
        }
        const Vector16c k2 = l * (y + h * T::a21 * k1);
        const Vector16c k3 = l * (y + h * (T::a31 * k1 + T::a32 * k2));
        const Vector16c k4 = l * (y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3));
        const Vector16c k5 = l * (y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4));
        const Vector16c k6 = l * (y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5));
        const Vector16c y_new =
            y + h * (T::a71 * k1 + T::a73 * k3 + T::a74 * k4 + T::a75 * k5 + T::a76 * k6);
        const Vector16c k7 = l * y_new;
        const Vector16c err =
            h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
        const double e = error_norm(err, y, y_new, cfg);
        if (!std::isfinite(e)) {
            throw IntegrationFailure("non-finite state at t = " + std::to_string(t), t);
        }
        if (e <= 1.0) {
            const double t_new = last ? t_final : t + h;
            const Vector16c diff = y_new - y;
            const Vector16c r3 = h * k1 - diff;
            const Vector16c r4 = diff - h * k7 - r3;
            const Vector16c r5 = h * (T::d1 * k1 + T::d3 * k3 + T::d4 * k4 + T::d5 * k5 + T::d6 * k6 + T::d7 * k7);
            while (next < times.size() && times[next] <= t_new) {
                const double theta = std::min((times[next] - t) / h, 1.0);
                const double theta1 = 1.0 - theta;
                out.push_back(y + theta * (diff + theta1 * (r3 + theta * (r4 + theta1 * r5))));
                ++next;
            }
            t = t_new;
            y = y_new;
            k1 = k7;
        }
        const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
        h *= e <= 1.0 ? factor : std::min(factor, 1.0);
    }
    return out;
}

inline std::vector<Vector16c> propagate_exponential(const Superoperator& l, const Vector16c& y0,
                                                    std::span<const double> times) {
    std::vector<Vector16c> out;
    out.reserve(times.size());
    for (double t : times) {
        const Matrix16c step = (l.entries * Complex(t)).exp();
        out.push_back(step * y0);
    }
    return out;
}

inline std::vector<Vector16c> propagate(const SystemParams& params, const Vector16c& y0,
                                        std::span<const double> times, const IntegratorConfig& cfg) {
    cfg.validate();
    check_sample_times(times);
    const Superoperator l = build_superoperator(params);
    if (cfg.propagator == Propagator::MatrixExponential) {
        return propagate_exponential(l, y0, times);
    }
    return propagate_dopri(l, y0, times, params.gamma(), cfg);
}

}  // namespace detail

/// Propagates an arbitrary Dicke-basis matrix to each sample time without renormalization.
inline std::vector<Matrix4c> evolve_matrix_samples(const SystemParams& params, const Matrix4c& m0,
                                                   std::span<const double> sample_times,
                                                   const IntegratorConfig& cfg = {}) {
    if (!m0.allFinite()) {
        throw InputError("evolve_matrix: initial matrix has non-finite entries");
    }
    std::vector<Matrix4c> out;
    out.reserve(sample_times.size());
    for (const Vector16c& v : detail::propagate(params, vectorize(m0), sample_times, cfg)) {
        out.push_back(unvectorize(v));
    }
    return out;
}

inline Matrix4c evolve_matrix(const SystemParams& params, const Matrix4c& m0, double t_end,
                              const IntegratorConfig& cfg = {}) {
    const std::array<double, 1> t{t_end};
    return evolve_matrix_samples(params, m0, t, cfg).front();
}

/// Integrates from rho0 at t = 0 and stores re-Hermitized, trace-normalized
/// Dicke-basis states at the requested (strictly increasing) times.
inline Trajectory evolve(const SystemParams& params, const DensityMatrix& rho0, double t_end,
                         std::span<const double> sample_times, const IntegratorConfig& cfg = {}) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw InputError("evolve: t_end must be positive and finite");
    }
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < 0.0 || sample_times[i] > t_end) {
            throw InputError("evolve: sample times must lie in [0, t_end]");
        }
        if (i > 0 && !(sample_times[i] > sample_times[i - 1])) {
            throw InputError("evolve: sample times must be strictly increasing");
        }
    }
    const Matrix4c m0 = transform_operator(rho0.entries(), rho0.basis(), Basis::Dicke);
    const std::vector<Matrix4c> raw = evolve_matrix_samples(params, m0, sample_times, cfg);

    Trajectory traj{{sample_times.begin(), sample_times.end()}, {}, params};
    traj.states.reserve(raw.size());
    const StateTolerances loose{1e-12, 1e-12, 1e-8};
    for (const Matrix4c& m : raw) {
        traj.max_trace_drift = std::max(traj.max_trace_drift, std::abs(m.trace() - 1.0));
        traj.max_hermiticity_drift = std::max(traj.max_hermiticity_drift, detail::hermiticity_defect(m));
        Matrix4c h = 0.5 * (m + m.adjoint());
        h /= h.trace().real();
        traj.states.emplace_back(h, Basis::Dicke, loose);
    }
    return traj;
}

/// Evenly spaced grid of `count` points on [0, t_end].
inline std::vector<double> uniform_grid(double t_end, int count) {
    if (count < 2) {
        throw InputError("time grid needs at least two samples");
    }
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        t[static_cast<std::size_t>(i)] = t_end * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    t.back() = t_end;
    return t;
}

}  // namespace blockade
