#pragma once

// Steady state of the driven pair, computed two independent ways: the
// closed-form matrix and the SVD nullspace of the Liouvillian.

#include <string>
#include <vector>

#include "blockade/liouville.hpp"

namespace blockade {

/// alpha = -(delta + 2 i gamma), so |alpha|^2 = delta^2 + 4 gamma^2.
inline Complex alpha(const SystemParams& params) { return -Complex(params.delta(), 2.0 * params.gamma()); }

inline double alpha_norm_sq(const SystemParams& params) {
    return params.delta() * params.delta() + 4.0 * params.gamma() * params.gamma();
}

/// Normalization 16 Omega^4 + (4 Omega^2 + gamma^2) |alpha|^2 shared by the closed forms.
inline double steady_normalization(const SystemParams& params) {
    const double o2 = params.omega() * params.omega();
    const double g = params.gamma();
    return 16.0 * o2 * o2 + (4.0 * o2 + g * g) * alpha_norm_sq(params);
}

/// Closed-form steady state in the Dicke basis (ee, s, a, gg). Omega = 0 reduces to |gg><gg|.
inline DensityMatrix steady_state_analytic(const SystemParams& params) {
    const double o = params.omega();
    const double o2 = o * o;
    const double o4 = o2 * o2;
    const double g = params.gamma();
    const Complex a = alpha(params);
    const Complex ac = std::conj(a);
    const double a2 = alpha_norm_sq(params);
    const double r2 = std::numbers::sqrt2;
    const double n = steady_normalization(params);

    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 4.0 * o4;
    m(0, 1) = 2.0 * r2 * o2 * o * a;
    m(0, 3) = -2.0 * kI * o2 * g * a;
    m(1, 0) = 2.0 * r2 * o2 * o * ac;
    m(1, 1) = 2.0 * o2 * (2.0 * o2 + a2);
    m(1, 3) = r2 * o * (2.0 * o2 * a - kI * g * a2);
    m(2, 2) = 4.0 * o4;
    m(3, 0) = 2.0 * kI * o2 * g * ac;
    m(3, 1) = r2 * o * (2.0 * o2 * ac + kI * g * a2);
    m(3, 3) = 4.0 * o4 + (2.0 * o2 + g * g) * a2;
    return {m / n, Basis::Dicke};
}

/// Kernel of the Liouvillian via SVD: right-singular vector of the smallest
/// singular value, reshaped, Hermitized and trace-normalized.
inline DensityMatrix steady_state_numeric(const SystemParams& params) {
    const Superoperator l = build_superoperator(params);
    Eigen::JacobiSVD<Matrix16c> svd(l.entries, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv[14] > 1e-8 * params.gamma())) {
        throw DegenerateSteadyState("Liouvillian kernel is not one-dimensional (second smallest singular value " +
                                        std::to_string(sv[14]) + ")",
                                    std::vector<double>(sv.data(), sv.data() + sv.size()));
    }
    Matrix4c m = unvectorize(svd.matrixV().col(15));
    m /= m.trace();
    m = 0.5 * (m + m.adjoint());
    m /= m.trace().real();

    const double scale = std::abs(params.omega()) + std::abs(params.delta()) + params.gamma();
    if (apply_generator(params, m).cwiseAbs().maxCoeff() > 1e-11 * scale) {
        throw NumericalError("steady_state_numeric: kernel vector does not annihilate the generator");
    }
    return {m, Basis::Dicke};
}

}  // namespace blockade
