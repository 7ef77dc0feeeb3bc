#pragma once

#include <array>

#include "blockade/steady.hpp"

namespace blockade {

/// Excited population of either atom. Requires Tr_1 rho == Tr_2 rho (to 1e-9).
inline double excitation_probability(const DensityMatrix& rho) {
    const Matrix2c r1 = partial_trace(rho, 1);
    const Matrix2c r2 = partial_trace(rho, 2);
    if ((r1 - r2).cwiseAbs().maxCoeff() > 1e-9) {
        throw ContractViolation("excitation_probability: state is not exchange symmetric");
    }
    return r1(0, 0).real();
}

inline double double_excitation_probability(const DensityMatrix& rho) { return rho(0, 0).real(); }

/// Populations (ee, s, a, gg).
inline std::array<double, 4> dicke_populations(const DensityMatrix& rho) {
    const Matrix4c d = transform_operator(rho.entries(), rho.basis(), Basis::Dicke);
    return {d(0, 0).real(), d(1, 1).real(), d(2, 2).real(), d(3, 3).real()};
}

/// P_ee / P_e^2 read off a state.
inline double blockade_ratio(const DensityMatrix& rho) {
    const double pe = excitation_probability(rho);
    if (pe <= 0.0) {
        throw UndefinedQuantity("blockade ratio undefined: no excitation (P_e = 0)");
    }
    return double_excitation_probability(rho) / (pe * pe);
}

/// Steady-state P_ee / P_e^2 = (64 Omega^4 + 4 (4 Omega^2 + gamma^2)|alpha|^2) / (8 Omega^2 + |alpha|^2)^2.
inline double blockade_ratio_analytic(const SystemParams& params) {
    if (params.omega() == 0.0) {
        throw UndefinedQuantity("blockade ratio undefined at Omega = 0 (0/0); use a non-zero drive");
    }
    const double o2 = params.omega() * params.omega();
    const double g = params.gamma();
    const double a2 = alpha_norm_sq(params);
    const double denom = 8.0 * o2 + a2;
    return (64.0 * o2 * o2 + 4.0 * (4.0 * o2 + g * g) * a2) / (denom * denom);
}

}  // namespace blockade
