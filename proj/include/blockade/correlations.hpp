#pragma once

// Photon-photon correlations of the scattered light.
//
// g2(tau) follows the conditional-state picture: a first photon at detector 1
// collapses rho_SS to D1 rho_SS D1^dagger (normalized), the conditioned state
// evolves for tau under the master equation, and the second-detector rate is
// compared with its steady-state value.

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "blockade/evolution.hpp"
#include "blockade/observables.hpp"

namespace blockade {

/// Trace threshold below which a detector rate counts as zero.
inline constexpr double kUndetectableRate = 1e-14;

/// D(phi) = S-_1 + e^{i phi} S-_2 in the product basis.
inline Matrix4c detector_operator(double phi) {
    if (!std::isfinite(phi)) {
        throw InputError("detector_operator: phase must be finite");
    }
    const auto [s1, s2] = lowering_operators_product();
    return s1 + std::polar(1.0, phi) * s2;
}

inline Matrix4c detector_operator_dicke(double phi) {
    return transform_operator(detector_operator(phi), Basis::Product, Basis::Dicke);
}

/// tau = 0 followed by (points - 1) log-spaced delays from 1e-4 tau_max to tau_max.
inline std::vector<double> default_tau_grid(double tau_max = 10.0, int points = 200) {
    if (!(tau_max > 0.0) || points < 2) {
        throw InputError("tau grid needs tau_max > 0 and at least two points");
    }
    std::vector<double> tau(static_cast<std::size_t>(points));
    const double lo = std::log(1e-4 * tau_max);
    const double hi = std::log(tau_max);
    tau[0] = 0.0;
    for (int i = 1; i < points; ++i) {
        const double f = points == 2 ? 1.0 : static_cast<double>(i - 1) / static_cast<double>(points - 2);
        tau[static_cast<std::size_t>(i)] = std::exp(lo + f * (hi - lo));
    }
    tau.back() = tau_max;
    return tau;
}

/// g2(tau) for a detection at detector 1 followed by one at detector 2, with the
/// system in its steady state at the first detection. Output order matches tau_grid.
inline std::vector<double> g2(const SystemParams& params, const DetectorGeometry& geom,
                              std::span<const double> tau_grid, const IntegratorConfig& cfg = {}) {
    for (double tau : tau_grid) {
        if (!std::isfinite(tau) || tau < 0.0) {
            throw InputError("g2: delays must be finite and non-negative");
        }
    }
    const Matrix4c rho_ss = steady_state_numeric(params).entries();
    const Matrix4c d1 = detector_operator_dicke(geom.phi1);
    const Matrix4c d2 = detector_operator_dicke(geom.phi2);

    const Matrix4c collapsed = d1 * rho_ss * d1.adjoint();
    const double first_rate = collapsed.trace().real();
    const Matrix4c n2 = d2.adjoint() * d2;
    const double second_rate = (n2 * rho_ss).trace().real();
    if (first_rate < kUndetectableRate || second_rate < kUndetectableRate) {
        throw UndefinedQuantity(
            "g2: the steady state scatters no photons into the detectors (is Omega zero, or are the "
            "phases such that the detected field vanishes?)");
    }
    const Matrix4c conditioned = collapsed / first_rate;

    std::vector<std::size_t> order(tau_grid.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tau_grid[a] < tau_grid[b]; });
    std::vector<double> sorted(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted[i] = tau_grid[order[i]];
    }
    const std::vector<Matrix4c> states = evolve_matrix_samples(params, conditioned, sorted, cfg);

    std::vector<double> out(tau_grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        out[order[i]] = (n2 * states[i]).trace().real() / second_rate;
    }
    return out;
}

/// Closed-form g2 at zero delay in the steady state.
inline double g2_zero_analytic(const SystemParams& params, const DetectorGeometry& geom) {
    if (params.omega() == 0.0) {
        throw UndefinedQuantity("g2(0) undefined at Omega = 0: the atoms scatter no light");
    }
    const double o2 = params.omega() * params.omega();
    const double g = params.gamma();
    const double a2 = alpha_norm_sq(params);
    const double c = std::cos((geom.phi1 - geom.phi2) / 2.0);
    const double f1 = 8.0 * o2 + a2 * (1.0 + std::cos(geom.phi1));
    const double f2 = 8.0 * o2 + a2 * (1.0 + std::cos(geom.phi2));
    return 4.0 * (16.0 * o2 * o2 + (4.0 * o2 + g * g) * a2) * c * c / (f1 * f2);
}

/// Coincidence signal at phi1 = phi2 = pi/2, where it equals P_ee / P_e^2 of the steady state.
inline double monitor_ratio(const SystemParams& params) {
    const double half_pi = std::numbers::pi / 2.0;
    return g2_zero_analytic(params, DetectorGeometry{half_pi, half_pi});
}

}  // namespace blockade
