#include "support.hpp"

#include <array>

namespace photon_slh {
namespace {

using testing::max_abs_diff;

TEST(UniformGrid, Linspace) {
  const UniformGrid g = UniformGrid::linspace(-1.0, 1.0, 5);
  EXPECT_EQ(g.size, 5u);
  EXPECT_DOUBLE_EQ(g[4], 1.0);
  EXPECT_EQ(UniformGrid::linspace(2.0, 2.0, 1).size, 1u);
  EXPECT_THROW(UniformGrid::linspace(1.0, 0.0, 3), std::invalid_argument);
  EXPECT_THROW(UniformGrid::linspace(0.0, 1.0, 0), std::invalid_argument);
}

TEST(FromModel, TwoLevelStage) {
  const TwoLevelParams p(1.4, -0.8);
  const PhotonTransfer f = from_model(two_level_model(p));
  ASSERT_EQ(f.stages().size(), 1u);
  const TransferStage& s = f.stages()[0];
  EXPECT_EQ(s.h, -1.0);
  EXPECT_LT(std::abs(s.a - Complex(-p.kappa / 2, -p.omega_c)), 1e-15);
  for (double w : {-5.0, -0.8, 0.0, 0.8, 3.3}) {
    EXPECT_LT(std::abs(f.response(w)(0, 0) - two_level_G(p, w)), 1e-14);
  }
}

TEST(FromModel, FailingModelThrowsWithReport) {
  try {
    from_model(joint_memory_model(2, TwoLevelParams(1, 0)));
    FAIL();
  } catch (const ValidationFailed& e) {
    EXPECT_EQ(e.report().first_failure(), "commutator_proportional");
  }
}

TEST(Stage, DecoupledStageIsFeedthrough) {
  const Matrix s = testing::beamsplitter();
  const PhotonTransfer f =
      PhotonTransfer::single(TransferStage{s, Vector::Zero(2), -1.0, Complex(-1.0, 0.0)});
  for (double w : {-3.0, 0.0, 2.0}) EXPECT_LT(max_abs_diff(f.response(w), s), 1e-15);
}

TEST(Stage, UnstableRejected) {
  Vector theta(1);
  theta(0) = 1.0;
  EXPECT_THROW(PhotonTransfer::single(TransferStage{Matrix::Identity(1, 1), theta, -1.0, Complex(0.0, 1.0)}),
               std::invalid_argument);
}

TEST(FrequencyResponse, TwoChannelClosedForms) {
  const double k1 = 0.6, k2 = 1.7, wc = 0.9;
  const PhotonTransfer f = from_model(two_channel_model(k1, k2, wc));
  const FrequencyResponse fr = frequency_response(f, UniformGrid::linspace(-6, 6, 97));
  for (std::size_t i = 0; i < fr.omegas.size; ++i) {
    const auto [g1, g2] = two_channel_G(k1, k2, wc, fr.omegas[i]);
    EXPECT_LT(std::abs(fr.values[i](0, 0) - g1), 1e-14);
    EXPECT_LT(std::abs(fr.values[i](1, 0) + g2), 1e-14);
    const double flux = std::norm(fr.values[i](0, 0)) + std::norm(fr.values[i](1, 0));
    EXPECT_NEAR(flux, 1.0, 1e-12);
  }
}

TEST(FrequencyResponse, ResonanceFlipsSign) {
  const TwoLevelParams p(2.0, 1.5);
  EXPECT_LT(std::abs(from_model(two_level_model(p)).response(-p.omega_c)(0, 0) + 1.0), 1e-15);
}

TEST(FrequencyResponse, Reflection) {
  const double wc = 0.3;
  const auto g21 = [&](double k1, double k2) {
    return std::norm(from_model(two_channel_model(k1, k2, wc)).response(-wc)(1, 0));
  };
  EXPECT_NEAR(g21(0.8, 0.8), 1.0, 1e-12);
  EXPECT_NEAR(g21(0.5, 2.0), 4 * 0.5 * 2.0 / (2.5 * 2.5), 1e-12);
}

TEST(Cascade, IdentityIsNeutral) {
  const PhotonTransfer f = from_model(two_channel_model(0.5, 1.5, 0.2, testing::beamsplitter()));
  const PhotonTransfer id = PhotonTransfer::identity(2);
  for (double w : {-2.0, 0.0, 1.0}) {
    EXPECT_LT(max_abs_diff(cascade(f, id).response(w), f.response(w)), 1e-14);
    EXPECT_LT(max_abs_diff(cascade(id, f).response(w), f.response(w)), 1e-14);
  }
  EXPECT_THROW(cascade(f, PhotonTransfer::identity(1)), DimensionError);
}

TEST(Cascade, ProductOfStagesInOrder) {
  // Non-commuting two-channel stages: the order of the matrix product matters.
  const PhotonTransfer f1 = from_model(two_channel_model(0.5, 1.5, 0.2, testing::beamsplitter()));
  const PhotonTransfer f2 = from_model(two_channel_model(1.2, 0.3, -0.7, testing::swap_matrix()));
  const PhotonTransfer c = cascade(f1, f2);
  EXPECT_EQ(c.stages().size(), 2u);
  auto gen = testing::rng(6);
  std::uniform_real_distribution<double> w(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const double x = w(gen);
    EXPECT_LT(max_abs_diff(c.response(x), f2.response(x) * f1.response(x)), 1e-13);
  }
}

TEST(Cascade, TwoAtomsDoublePhase) {
  const TwoLevelParams p(1.0, 0.4);
  const PhotonTransfer f = from_model(two_level_model(p));
  const PhotonTransfer ff = cascade(f, f);
  for (double w : {-3.0, -0.4, 0.5, 2.0}) {
    const Complex g = ff.response(w)(0, 0);
    EXPECT_NEAR(std::abs(g), 1.0, 1e-14);
    EXPECT_NEAR(std::remainder(std::arg(g) - 2 * std::arg(two_level_G(p, w)), 2 * M_PI), 0.0, 1e-13);
  }
}

TEST(Cascade, ThreeAtomsMatchMemoryOracle) {
  const TwoLevelParams p(0.9, 1.3);
  const PhotonTransfer f = from_model(two_level_model(p));
  const PhotonTransfer f3 = cascade(cascade(f, f), f);
  auto gen = testing::rng(7);
  std::uniform_real_distribution<double> w(-10, 10);
  for (int i = 0; i < 200; ++i) {
    const double x = w(gen);
    EXPECT_LT(std::abs(f3.response(x)(0, 0) - memory_GN(3, p, x)), 1e-12);
  }
}

TEST(Impulse, TwoLevelKernel) {
  const TwoLevelParams p(1.7, 0.6);
  const PhotonTransfer f = from_model(two_level_model(p));
  const std::array<double, 5> ts{-1.0, -1e-12, 0.0, 0.5, 2.0};
  const ImpulseResponse ir = impulse_response(f, ts);
  EXPECT_EQ(ir.smooth[0].norm(), 0.0);
  EXPECT_EQ(ir.smooth[1].norm(), 0.0);
  EXPECT_LT(std::abs(ir.smooth[2](0, 0) + p.kappa), 1e-15);
  for (std::size_t i = 3; i < ts.size(); ++i) {
    const Complex want = -p.kappa * std::exp(-Complex(p.kappa / 2, p.omega_c) * ts[i]);
    EXPECT_LT(std::abs(ir.smooth[i](0, 0) - want), 1e-14);
  }
  EXPECT_EQ(ir.feedthrough, Matrix::Identity(1, 1));
}

TEST(Impulse, CascadeRejected) {
  const PhotonTransfer f = from_model(two_level_model(TwoLevelParams(1, 0)));
  const std::array<double, 1> ts{0.0};
  EXPECT_THROW(impulse_response(cascade(f, f), ts), std::invalid_argument);
}

TEST(Impulse, KernelIntegralMatchesResponseAtZero) {
  const TwoLevelParams p(1.0, 2.0);
  const PhotonTransfer f = from_model(two_level_model(p));
  const TransferStage& s = f.stages()[0];
  EXPECT_LT(quadrature_self_test(s), 1e-12);
  // Independent check: composite Simpson on [0, 60] of the smooth kernel.
  const int n = 200000;
  const double hstep = 60.0 / n;
  Complex acc = s.kernel(0.0)(0, 0) + s.kernel(60.0)(0, 0);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * s.kernel(i * hstep)(0, 0);
  acc *= hstep / 3.0;
  const Complex want = -p.kappa / Complex(p.kappa / 2, p.omega_c);
  EXPECT_LT(std::abs(acc - want), 1e-10);
  EXPECT_LT(std::abs(acc - (two_level_G(p, 0.0) - 1.0)), 1e-10);
}

}  // namespace
}  // namespace photon_slh
