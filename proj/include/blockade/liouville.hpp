#pragma once

// Hamiltonian, dissipator and Liouvillian of the driven two-atom system (hbar = 1).
//
//   drho/dt = -i[H, rho] - gamma * sum_i (S+_i S-_i rho + rho S+_i S-_i - 2 S-_i rho S+_i)
//   H = delta |ee><ee| + Omega (S+_1 + S+_2 + h.c.)
//
// Everything returned here is expressed in the Dicke basis unless stated otherwise.

#include <array>

#include "blockade/core.hpp"

namespace blockade {

using Vector16c = Eigen::Matrix<Complex, 16, 1>;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;

/// Column-stacking vectorization: vec(M)[4*col + row] = M(row, col).
inline Vector16c vectorize(const Matrix4c& m) { return Eigen::Map<const Vector16c>(m.data()); }

inline Matrix4c unvectorize(const Vector16c& v) { return Eigen::Map<const Matrix4c>(v.data()); }

inline Matrix16c kron(const Matrix4c& a, const Matrix4c& b) {
    Matrix16c k;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            k.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
        }
    }
    return k;
}

/// Lowering operators S-_1 = |g><e| (x) 1 and S-_2 = 1 (x) |g><e| in the product basis.
inline std::array<Matrix4c, 2> lowering_operators_product() {
    Matrix2c lower = Matrix2c::Zero();
    lower(1, 0) = 1.0;
    const Matrix2c id = Matrix2c::Identity();
    Matrix4c s1;
    Matrix4c s2;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            s1.block<2, 2>(2 * i, 2 * j) = lower(i, j) * id;
            s2.block<2, 2>(2 * i, 2 * j) = id(i, j) * lower;
        }
    }
    return {s1, s2};
}

/// Jump operators of the dissipator, conjugated into the Dicke basis.
inline std::array<Matrix4c, 2> lowering_operators_dicke() {
    const auto [s1, s2] = lowering_operators_product();
    return {transform_operator(s1, Basis::Product, Basis::Dicke),
            transform_operator(s2, Basis::Product, Basis::Dicke)};
}

/// H = delta|ee><ee| + sqrt(2) Omega (|ee><s| + |s><gg| + h.c.); the |a> row and column vanish.
inline Matrix4c build_hamiltonian(const SystemParams& params) {
    const double coupling = std::numbers::sqrt2 * params.omega();
    Matrix4c h = Matrix4c::Zero();
    h(0, 0) = params.delta();
    h(0, 1) = coupling;
    h(1, 0) = coupling;
    h(1, 3) = coupling;
    h(3, 1) = coupling;
    return h;
}

/// Generator applied to an arbitrary Dicke-basis matrix (the map is linear, no normalization).
inline Matrix4c apply_generator(const SystemParams& params, const Matrix4c& rho) {
    const Matrix4c h = build_hamiltonian(params);
    Matrix4c out = -kI * (h * rho - rho * h);
    for (const Matrix4c& s : lowering_operators_dicke()) {
        const Matrix4c n = s.adjoint() * s;
        out -= params.gamma() * (n * rho + rho * n - 2.0 * s * rho * s.adjoint());
    }
    return out;
}

/// drho/dt for a density matrix, returned in the Dicke basis.
inline Matrix4c apply_generator(const SystemParams& params, const DensityMatrix& rho) {
    return apply_generator(params, transform_operator(rho.entries(), rho.basis(), Basis::Dicke));
}

/// Liouvillian acting on column-stacked Dicke-basis density matrices.
struct Superoperator {
    Matrix16c entries;
    Basis basis = Basis::Dicke;

    [[nodiscard]] Vector16c operator*(const Vector16c& v) const { return entries * v; }

    [[nodiscard]] Matrix4c apply(const Matrix4c& m) const { return unvectorize(entries * vectorize(m)); }
};

/// vec(A X B) = (B^T (x) A) vec(X).
inline Superoperator build_superoperator(const SystemParams& params) {
    const Matrix4c h = build_hamiltonian(params);
    const Matrix4c id = Matrix4c::Identity();
    Matrix16c l = -kI * (kron(id, h) - kron(h.transpose(), id));
    for (const Matrix4c& s : lowering_operators_dicke()) {
        const Matrix4c n = s.adjoint() * s;
        l -= params.gamma() * (kron(id, n) + kron(n.transpose(), id) - 2.0 * kron(s.conjugate(), s));
    }
    return {l, Basis::Dicke};
}

}  // namespace blockade
