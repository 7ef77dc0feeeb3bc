#pragma once

// Wootters concurrence and the closed-form steady-state concurrence.

#include <algorithm>
#include <array>
#include <functional>

#include "blockade/steady.hpp"

namespace blockade {

enum class ConcurrenceMethod {
    Hermitian,  ///< singular values of W^T (sy x sy) W with rho = W W^dagger
    General,    ///< eigenvalues of the non-Hermitian R = rho (sy x sy) rho* (sy x sy)
};

/// Values with |C| <= this are reported as exactly zero.
inline constexpr double kConcurrenceZeroBand = 1e-9;

/// sigma_y (x) sigma_y in the product basis.
inline Matrix4c spin_flip() {
    Matrix4c y = Matrix4c::Zero();
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    return y;
}

/// sqrt(lambda_i) in decreasing order, lambda_i the eigenvalues of R.
inline std::array<double, 4> wootters_roots(const DensityMatrix& rho,
                                            ConcurrenceMethod method = ConcurrenceMethod::Hermitian) {
    const Matrix4c p = transform_operator(rho.entries(), rho.basis(), Basis::Product);
    const Matrix4c y = spin_flip();
    std::array<double, 4> roots{};
    if (method == ConcurrenceMethod::General) {
        const Matrix4c r = p * y * p.conjugate() * y;
        Eigen::ComplexEigenSolver<Matrix4c> solver(r, false);
        for (int i = 0; i < 4; ++i) {
            const double lambda = solver.eigenvalues()[i].real();
            if (lambda < -1e-8) {
                throw NumericalError("concurrence: R has an eigenvalue with negative real part");
            }
            roots[static_cast<std::size_t>(i)] = std::sqrt(std::max(lambda, 0.0));
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix4c> solver(0.5 * (p + p.adjoint()));
        Matrix4c w = solver.eigenvectors();
        for (int i = 0; i < 4; ++i) {
            const double mu = solver.eigenvalues()[i];
            if (mu < -1e-8) {
                throw NumericalError("concurrence: density matrix has a negative eigenvalue");
            }
            w.col(i) *= std::sqrt(std::max(mu, 0.0));
        }
        const Matrix4c tau = w.transpose() * y * w;
        Eigen::JacobiSVD<Matrix4c> svd(tau);
        for (int i = 0; i < 4; ++i) {
            roots[static_cast<std::size_t>(i)] = svd.singularValues()[i];
        }
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

/// sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4) before clamping; its sign marks entanglement.
inline double concurrence_margin(const DensityMatrix& rho, ConcurrenceMethod method = ConcurrenceMethod::Hermitian) {
    const auto r = wootters_roots(rho, method);
    return r[0] - r[1] - r[2] - r[3];
}

inline double concurrence(const DensityMatrix& rho, ConcurrenceMethod method = ConcurrenceMethod::Hermitian) {
    const double c = concurrence_margin(rho, method);
    return c > kConcurrenceZeroBand ? c : 0.0;
}

/// Numerator of the closed form before max{0, .}, divided by the normalization.
/// Uses |delta|: the steady-state concurrence is even in delta.
inline double steady_concurrence_margin(const SystemParams& params) {
    const double o2 = params.omega() * params.omega();
    const double o4 = o2 * o2;
    const double d = std::abs(params.delta());
    const double a = std::sqrt(alpha_norm_sq(params));
    const double inner = std::sqrt(16.0 * o4 + d * d * a * a);
    const double base = 8.0 * o4 + d * d * a * a;
    const double lambda_plus = std::sqrt(base + d * a * inner);
    // lambda_plus * lambda_minus = 8 Omega^4 avoids the cancellation in base - d a inner
    const double lambda_minus = lambda_plus > 0.0 ? 8.0 * o4 / lambda_plus : 0.0;
    return (std::numbers::sqrt2 * o2 * (lambda_plus - lambda_minus) - 8.0 * o4) / steady_normalization(params);
}

inline double steady_concurrence_analytic(const SystemParams& params) {
    const double c = steady_concurrence_margin(params);
    return c > kConcurrenceZeroBand ? c : 0.0;
}

/// Largest Omega for which the steady state is entangled: 4 Omega^2 < |delta| |alpha|.
/// Returns 0 (empty window) for delta = 0.
inline double entanglement_window(double delta, double gamma) {
    if (!(gamma > 0.0)) {
        throw InputError("entanglement_window: gamma must be positive");
    }
    const double d = std::abs(delta);
    const double a = std::sqrt(d * d + 4.0 * gamma * gamma);
    return std::sqrt(d * a) / 2.0;
}

}  // namespace blockade
