#include <random>

#include <gtest/gtest.h>

#include "blockade/core.hpp"
#include "blockade/steady.hpp"
#include "oracles.hpp"

using namespace blockade;

namespace {

Matrix4c projector_product(double s_eg, double s_ge) {
    Eigen::Vector4cd v(0.0, s_eg, s_ge, 0.0);
    return v * v.adjoint();
}

}  // namespace

TEST(SystemParams, DerivedGammaIsTheSum) {
    const SystemParams p(2.0, 3.0, 0.25, 0.5);
    EXPECT_DOUBLE_EQ(p.gamma(), 0.75);
    const auto r = SystemParams::from_ratios(5.0, 30.0, 0.7);
    EXPECT_DOUBLE_EQ(r.gamma(), 1.0);
    EXPECT_DOUBLE_EQ(r.gamma_s(), 0.7);
}

TEST(SystemParams, RejectsInvalidRates) {
    EXPECT_THROW(SystemParams(1.0, 0.0, -0.1, 1.0), InputError);
    EXPECT_THROW(SystemParams(1.0, 0.0, 0.0, 0.0), InputError);
    EXPECT_THROW(SystemParams(std::nan(""), 0.0, 1.0, 0.0), InputError);
    EXPECT_THROW(SystemParams::from_ratios(1.0, 0.0, 1.5), InputError);
}

TEST(DensityMatrix, EnforcesInvariants) {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 0.5;
    EXPECT_THROW(DensityMatrix(m, Basis::Dicke), InputError);  // trace
    m(3, 3) = 0.5;
    m(0, 3) = 0.1;
    EXPECT_THROW(DensityMatrix(m, Basis::Dicke), InputError);  // not Hermitian
    m(3, 0) = 0.1;
    EXPECT_NO_THROW(DensityMatrix(m, Basis::Dicke));
    Matrix4c neg = Matrix4c::Zero();
    neg(0, 0) = 1.5;
    neg(3, 3) = -0.5;
    EXPECT_THROW(DensityMatrix(neg, Basis::Dicke), InputError);
}

TEST(PureState, BasisLabels) {
    EXPECT_EQ(pure_state("gg", Basis::Dicke).entries(), Matrix4c(Eigen::Vector4cd(0, 0, 0, 1).asDiagonal()));
    EXPECT_EQ(pure_state("ee", Basis::Dicke).entries(), Matrix4c(Eigen::Vector4cd(1, 0, 0, 0).asDiagonal()));
    EXPECT_EQ(pure_state("eg", Basis::Product)(1, 1), Complex(1.0));
    EXPECT_THROW(pure_state("s", Basis::Product), InputError);
    EXPECT_THROW(pure_state("xx", Basis::Dicke), InputError);
}

TEST(BasisTransform, GroundStateIsShared) {
    const auto p = basis_transform(pure_state("gg", Basis::Dicke), Basis::Product);
    EXPECT_EQ(p.basis(), Basis::Product);
    EXPECT_NEAR(std::abs(p(3, 3) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(p.entries().cwiseAbs().sum(), 1.0, 1e-15);
}

TEST(BasisTransform, SymmetricAndAntisymmetricStates) {
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = basis_transform(pure_state("s", Basis::Dicke), Basis::Product);
    EXPECT_LT((s.entries() - projector_product(r, r)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(s(1, 2).real(), 0.5, 1e-15);
    const auto a = basis_transform(pure_state("a", Basis::Dicke), Basis::Product);
    EXPECT_LT((a.entries() - projector_product(r, -r)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(a(1, 2).real(), -0.5, 1e-15);
}

TEST(BasisTransform, RoundTripPreservesTraceAndSpectrum) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        for (Basis b : {Basis::Dicke, Basis::Product}) {
            const DensityMatrix rho(oracle::random_density(rng), b);
            const Basis other = b == Basis::Dicke ? Basis::Product : Basis::Dicke;
            const auto there = basis_transform(rho, other);
            const auto back = basis_transform(there, b);
            EXPECT_LT((back.entries() - rho.entries()).cwiseAbs().maxCoeff(), 1e-14);
            EXPECT_NEAR(there.entries().trace().real(), 1.0, 1e-14);
            Eigen::SelfAdjointEigenSolver<Matrix4c> e1(rho.entries(), Eigen::EigenvaluesOnly);
            Eigen::SelfAdjointEigenSolver<Matrix4c> e2(there.entries(), Eigen::EigenvaluesOnly);
            EXPECT_LT((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(BasisTransform, MatchesIndependentDickeColumns) {
    std::mt19937_64 rng(11);
    const DensityMatrix rho(oracle::random_density(rng), Basis::Dicke);
    const auto p = basis_transform(rho, Basis::Product);
    EXPECT_LT((p.entries() - oracle::to_product(rho.entries())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, ReferenceStates) {
    const Matrix2c ee = partial_trace(pure_state("ee", Basis::Dicke), 1);
    EXPECT_NEAR(std::abs(ee(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ee(1, 1)), 0.0, 1e-15);
    for (int atom : {1, 2}) {
        const Matrix2c s = partial_trace(pure_state("s", Basis::Dicke), atom);
        EXPECT_LT((s - 0.5 * Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-15);
        const Matrix2c gg = partial_trace(pure_state("gg", Basis::Dicke), atom);
        EXPECT_NEAR(std::abs(gg(1, 1) - 1.0), 0.0, 1e-15);
    }
    EXPECT_THROW(partial_trace(pure_state("gg", Basis::Dicke), 3), InputError);
}

TEST(PartialTrace, DistinguishesAtoms) {
    const auto eg = pure_state("eg", Basis::Product);
    EXPECT_NEAR(partial_trace(eg, 1)(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(partial_trace(eg, 2)(0, 0).real(), 0.0, 1e-15);
}

TEST(PartialTrace, EqualForExchangeSymmetricSteadyStates) {
    for (double omega : {0.5, 2.0, 5.0, 15.0}) {
        for (double delta : {0.0, 5.0, 30.0}) {
            const auto rho = steady_state_analytic(SystemParams::from_ratios(omega, delta));
            ASSERT_LT(exchange_asymmetry(rho.entries(), Basis::Dicke), 1e-15);
            EXPECT_LT((partial_trace(rho, 1) - partial_trace(rho, 2)).cwiseAbs().maxCoeff(), 1e-15);
            const Matrix2c r = partial_trace(rho, 1);
            EXPECT_NEAR(r.trace().real(), 1.0, 1e-14);
            EXPECT_LT((r - r.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
        }
    }
}

TEST(DetectorGeometry, PhasesFromDirections) {
    const Eigen::Vector3d sep(2.5, 0.0, 0.0);  // atoms 2.5 wavelengths apart along x
    const auto g = DetectorGeometry::from_directions({1, 0, 0}, {0, 0, 3}, sep);
    EXPECT_NEAR(g.phi1, 2.0 * std::numbers::pi * 2.5, 1e-13);
    EXPECT_NEAR(g.phi2, 0.0, 1e-15);
    EXPECT_THROW(DetectorGeometry(std::numeric_limits<double>::infinity(), 0.0), InputError);
    EXPECT_THROW(DetectorGeometry::from_directions({0, 0, 0}, {1, 0, 0}, sep), InputError);
}
