#pragma once

// Fundamental types of the two-atom model: parameters, basis conventions,
// density matrices and detector geometry.
//
// Product basis ordering is (|ee>, |eg>, |ge>, |gg>) with atom 1 as the left
// tensor factor and single-atom ordering (|e>, |g>).
// Dicke basis ordering is (|ee>, |s>, |a>, |gg>) with
//   |s> = (|eg> + |ge>)/sqrt(2),  |a> = (|eg> - |ge>)/sqrt(2).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "blockade/errors.hpp"

namespace blockade {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

inline constexpr Complex kI{0.0, 1.0};

enum class Basis { Dicke, Product };

inline constexpr std::array<std::string_view, 4> kDickeLabels{"ee", "s", "a", "gg"};
inline constexpr std::array<std::string_view, 4> kProductLabels{"ee", "eg", "ge", "gg"};

constexpr const std::array<std::string_view, 4>& basis_labels(Basis basis) noexcept {
    return basis == Basis::Dicke ? kDickeLabels : kProductLabels;
}

constexpr std::string_view to_string(Basis basis) noexcept {
    return basis == Basis::Dicke ? "Dicke" : "Product";
}

/// Physical inputs. Omega is half the Rabi frequency, gamma_s and gamma_d are
/// half the radiative and non-radiative single-atom decay rates.
class SystemParams {
public:
    SystemParams(double omega, double delta, double gamma_s, double gamma_d)
        : omega_(omega), delta_(delta), gamma_s_(gamma_s), gamma_d_(gamma_d) {
        if (!std::isfinite(omega) || !std::isfinite(delta) || !std::isfinite(gamma_s) ||
            !std::isfinite(gamma_d)) {
            throw InputError("SystemParams: all rates must be finite");
        }
        if (gamma_s < 0.0 || gamma_d < 0.0) {
            throw InputError("SystemParams: gamma_s and gamma_d must be non-negative");
        }
        if (!(gamma_s + gamma_d > 0.0)) {
            throw InputError("SystemParams: gamma_s + gamma_d must be positive");
        }
    }

    /// Parameters in units of gamma = 1: Omega/gamma, delta/gamma and the radiative share gamma_s/gamma.
    static SystemParams from_ratios(double omega_over_gamma, double delta_over_gamma,
                                    double gamma_s_fraction = 1.0) {
        if (!(gamma_s_fraction >= 0.0 && gamma_s_fraction <= 1.0)) {
            throw InputError("SystemParams: gamma_s/gamma must lie in [0, 1]");
        }
        return {omega_over_gamma, delta_over_gamma, gamma_s_fraction, 1.0 - gamma_s_fraction};
    }

    [[nodiscard]] double omega() const noexcept { return omega_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] double gamma_s() const noexcept { return gamma_s_; }
    [[nodiscard]] double gamma_d() const noexcept { return gamma_d_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_s_ + gamma_d_; }

private:
    double omega_;
    double delta_;
    double gamma_s_;
    double gamma_d_;
};

/// Acceptance thresholds for the density-matrix invariants.
struct StateTolerances {
    double hermiticity = 1e-12;
    double trace = 1e-12;
    double positivity = 1e-10;
};

namespace detail {

inline double hermiticity_defect(const Matrix4c& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

inline double min_eigenvalue(const Matrix4c& m) {
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace detail

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix tagged with its basis.
class DensityMatrix {
public:
    DensityMatrix(const Matrix4c& entries, Basis basis, const StateTolerances& tol = {})
        : entries_(entries), basis_(basis) {
        if (!entries.allFinite()) {
            throw InputError("DensityMatrix: non-finite entries");
        }
        if (detail::hermiticity_defect(entries) > tol.hermiticity) {
            throw InputError("DensityMatrix: matrix is not Hermitian");
        }
        if (std::abs(entries.trace() - 1.0) > tol.trace) {
            throw InputError("DensityMatrix: trace differs from 1");
        }
        if (detail::min_eigenvalue(entries) < -tol.positivity) {
            throw InputError("DensityMatrix: matrix has a negative eigenvalue");
        }
    }

    [[nodiscard]] const Matrix4c& entries() const noexcept { return entries_; }
    [[nodiscard]] Basis basis() const noexcept { return basis_; }
    [[nodiscard]] Complex operator()(int row, int col) const { return entries_(row, col); }

private:
    Matrix4c entries_;
    Basis basis_;
};

/// Columns are the Dicke states written in product coordinates.
inline Matrix4c dicke_to_product() {
    const double r = std::numbers::sqrt2 / 2.0;
    Matrix4c u = Matrix4c::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = r;
    u(2, 1) = r;
    u(1, 2) = r;
    u(2, 2) = -r;
    u(3, 3) = 1.0;
    return u;
}

/// Re-expresses an operator given in `from` in the `to` basis.
inline Matrix4c transform_operator(const Matrix4c& op, Basis from, Basis to) {
    if (from == to) {
        return op;
    }
    const Matrix4c u = dicke_to_product();
    if (from == Basis::Dicke) {
        return u * op * u.adjoint();
    }
    return u.adjoint() * op * u;
}

inline DensityMatrix basis_transform(const DensityMatrix& rho, Basis target) {
    if (rho.basis() == target) {
        return rho;
    }
    Matrix4c m = transform_operator(rho.entries(), rho.basis(), target);
    m = 0.5 * (m + m.adjoint());
    return {m, target, StateTolerances{1e-12, 1e-12, 1e-8}};
}

inline int label_index(std::string_view label, Basis basis) {
    const auto& labels = basis_labels(basis);
    for (int i = 0; i < 4; ++i) {
        if (labels[static_cast<std::size_t>(i)] == label) {
            return i;
        }
    }
    throw InputError("unknown " + std::string(to_string(basis)) + " basis label '" + std::string(label) + "'");
}

inline DensityMatrix pure_state(std::string_view label, Basis basis) {
    const int i = label_index(label, basis);
    Matrix4c m = Matrix4c::Zero();
    m(i, i) = 1.0;
    return {m, basis};
}

/// Reduced state of atom `kept_atom` (1 or 2) in single-atom ordering (|e>, |g>).
inline Matrix2c partial_trace(const DensityMatrix& rho, int kept_atom) {
    if (kept_atom != 1 && kept_atom != 2) {
        throw InputError("partial_trace: kept_atom must be 1 or 2");
    }
    const Matrix4c p = transform_operator(rho.entries(), rho.basis(), Basis::Product);
    Matrix2c r = Matrix2c::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                r(i, j) += kept_atom == 1 ? p(2 * i + k, 2 * j + k) : p(2 * k + i, 2 * k + j);
            }
        }
    }
    return r;
}

/// Atom exchange operator (|eg> <-> |ge>) in the given basis.
inline Matrix4c swap_operator(Basis basis) {
    Matrix4c s = Matrix4c::Zero();
    if (basis == Basis::Dicke) {
        s.diagonal() << 1.0, 1.0, -1.0, 1.0;
    } else {
        s(0, 0) = 1.0;
        s(1, 2) = 1.0;
        s(2, 1) = 1.0;
        s(3, 3) = 1.0;
    }
    return s;
}

inline double exchange_asymmetry(const Matrix4c& m, Basis basis) {
    const Matrix4c s = swap_operator(basis);
    return (s * m * s - m).cwiseAbs().maxCoeff();
}

/// Detector phases phi(r) = k_L r_hat . (x1 - x2) for the two detectors.
struct DetectorGeometry {
    double phi1 = 0.0;
    double phi2 = 0.0;

    DetectorGeometry() = default;
    DetectorGeometry(double p1, double p2) : phi1(p1), phi2(p2) {
        if (!std::isfinite(p1) || !std::isfinite(p2)) {
            throw InputError("DetectorGeometry: phases must be finite");
        }
    }

    /// Phases from observation directions and the atom separation x1 - x2 measured in wavelengths.
    static DetectorGeometry from_directions(const Eigen::Vector3d& direction1, const Eigen::Vector3d& direction2,
                                            const Eigen::Vector3d& separation_in_wavelengths) {
        if (direction1.norm() == 0.0 || direction2.norm() == 0.0) {
            throw InputError("DetectorGeometry: observation directions must be non-zero");
        }
        const double k = 2.0 * std::numbers::pi;
        return {k * direction1.normalized().dot(separation_in_wavelengths),
                k * direction2.normalized().dot(separation_in_wavelengths)};
    }
};

}  // namespace blockade
