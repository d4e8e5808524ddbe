#include "support.hpp"

#include <cmath>

namespace photon_slh {
namespace {

TEST(TwoLevelG, Limits) {
  const TwoLevelParams p(0.7, 1.9);
  EXPECT_LT(std::abs(two_level_G(p, -p.omega_c) + 1.0), 1e-15);
  EXPECT_LT(std::abs(two_level_G(p, -p.omega_c + 1e6 * p.kappa) - 1.0), 1e-5);
  EXPECT_LT(std::abs(two_level_G(p, -p.omega_c - 1e6 * p.kappa) - 1.0), 1e-5);
  EXPECT_THROW(TwoLevelParams(0.0, 1.0), std::invalid_argument);
}

TEST(TwoLevelG, AllPass) {
  auto gen = testing::rng(9);
  std::uniform_real_distribution<double> w(-100, 100);
  const TwoLevelParams p(1.3, -0.4);
  for (int i = 0; i < 1000; ++i) EXPECT_NEAR(std::abs(two_level_G(p, w(gen))), 1.0, 1e-14);
}

TEST(TwoChannelG, ReflectionMaximum) {
  const double wc = 0.5;
  auto [g1, g2] = two_channel_G(1.0, 1.0, wc, -wc);
  EXPECT_NEAR(std::norm(g2), 1.0, 1e-15);
  EXPECT_LT(std::abs(g1), 1e-15);
  // Unequal couplings: the resonant value is the maximum and stays below 1.
  const double k1 = 0.4, k2 = 2.2, bound = 4 * k1 * k2 / ((k1 + k2) * (k1 + k2));
  EXPECT_NEAR(std::norm(two_channel_G(k1, k2, wc, -wc).second), bound, 1e-15);
  for (double d = -3; d <= 3; d += 0.01) {
    EXPECT_LE(std::norm(two_channel_G(k1, k2, wc, -wc + d).second), bound + 1e-15);
  }
  EXPECT_LT(bound, 1.0);
}

TEST(TwoChannelG, FarDetunedTransmits) {
  const double k1 = 0.4, k2 = 2.2;
  const auto [g1, g2] = two_channel_G(k1, k2, 0.0, 1e3 * (k1 + k2));
  EXPECT_NEAR(std::norm(g1), 1.0, 1e-5);
}

TEST(MemoryGN, Basics) {
  const TwoLevelParams p(1.0, 0.8);
  EXPECT_EQ(memory_GN(1, p, 0.3), two_level_G(p, 0.3));
  for (unsigned n = 1; n <= 6; ++n) {
    EXPECT_LT(std::abs(memory_GN(n, p, -p.omega_c) - std::pow(-1.0, n)), 1e-14);
  }
}

TEST(Hyp1F1, ElementaryCases) {
  for (double z : {0.0, 0.3, 2.0, 10.0, -4.0, -25.0}) {
    EXPECT_NEAR(hyp1f1(1.5, 1.5, z), std::exp(z), 1e-13 * std::exp(z) + 1e-300);
    if (z != 0.0) EXPECT_NEAR(hyp1f1(1.0, 2.0, z), std::expm1(z) / z, 1e-13 * std::abs(std::expm1(z) / z));
  }
  EXPECT_EQ(hyp1f1(3.0, 2.0, 0.0), 1.0);
}

TEST(Hyp1F1, MatchesLaguerre) {
  // 1F1(-n, 2, x) = L_n^(1)(x) / (n + 1)
  for (unsigned n = 0; n <= 7; ++n) {
    for (double x = 0.0; x <= 40.0; x += 0.5) {
      const double want = std::assoc_laguerre(n, 1, x) / (n + 1.0);
      EXPECT_NEAR(hyp1f1(-static_cast<double>(n), 2.0, x), want, 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(Hyp1F1, KummerTransformation) {
  for (double z : {0.5, 3.0, 8.0, 30.0}) {
    EXPECT_EQ(hyp1f1(0.7, 2.0, -z), std::exp(-z) * hyp1f1_series(1.3, 2.0, z));
  }
  for (double a : {0.5, 2.0, 4.0}) {
    for (double z : {0.5, 3.0, 8.0}) {
      EXPECT_NEAR(hyp1f1_series(a, 2.0, -z), std::exp(-z) * hyp1f1_series(2.0 - a, 2.0, z),
                  1e-14 * std::exp(z));  // the direct series at -z cancels by ~e^z
    }
  }
}

TEST(MemoryKernel, SingleAtomIsExponential) {
  const TwoLevelParams p(1.2, 0.9);
  for (double t : {0.0, 0.1, 1.0, 7.5}) {
    const Complex want = -p.kappa * std::exp(-Complex(p.kappa / 2, p.omega_c) * t);
    EXPECT_LT(std::abs(memory_kernel_1f1(1, p, t) - want), 1e-14);
  }
  EXPECT_LT(std::abs(memory_kernel_1f1(4, p, 0.0) + 4 * p.kappa), 1e-14);
  EXPECT_THROW(memory_kernel_1f1(2, p, -1.0), std::invalid_argument);
}

TEST(MemoryKernel, MatchesCascadeShaping) {
  const TwoLevelParams p(1.0, 2.0);
  const TimeGrid g = TimeGrid::centered(64.0, 14);
  const Pulse in = Pulse::analytic(GaussianShape{-15.0, 1.0, -2.0}, g);
  PhotonTransfer f = from_model(two_level_model(p));
  const PhotonTransfer f2 = cascade(f, f);
  const Pulse fft = shape_fft(in, f2).output;
  EXPECT_LT(l2_distance(shape_with_memory_kernel(in, 2, p), fft), 1e-4);
}

TEST(InvertingPulse, SpectrumCancelsZero) {
  const TwoLevelParams p(1.0, 0.3);
  for (double w : {-3.0, -0.3, 0.0, 2.0}) {
    const Complex out = inverting_pulse_spectrum(p, w) * two_level_G(p, w);
    // Output is sqrt(k) e^{-(k/2 + i wc) t} u(t), spectrum sqrt(k) / (k/2 + i(w + wc)).
    EXPECT_LT(std::abs(out - std::sqrt(p.kappa) / Complex(p.kappa / 2, w + p.omega_c)), 1e-14);
  }
}

TEST(FeedbackG, SwapDecay) {
  const double k = 0.9, wc = 1.0;
  const Matrix s = testing::swap_matrix();
  // pole at -i wc - 2k: G vanishes where i w = -(-i wc - 2k)^* , i.e. zero at w = -wc with decay 2k
  const Complex g = feedback_G(FeedbackCase::real_scattering, s, k, k, wc, -wc);
  EXPECT_LT(std::abs(g + 1.0), 1e-15);
  const Complex half = feedback_G(FeedbackCase::real_scattering, s, k, k, wc, -wc + 2 * k);
  EXPECT_LT(std::abs(half - Complex(0.0, 1.0)), 1e-15);
  EXPECT_EQ(feedback_detuning(s, k, k), 0.0);
  EXPECT_EQ(feedback_G(FeedbackCase::real_scattering, s, k, 0.5, wc, 0.2),
            feedback_G(FeedbackCase::complex_scattering, s, k, 0.5, wc, 0.2));
}

TEST(FeedbackG, BeamsplitterResonanceShift) {
  const double k1 = 0.5, k2 = 1.5, wc = 0.2;
  const double delta = std::sqrt(k1 * k2) / (std::sqrt(2.0) - 1.0);
  EXPECT_NEAR(feedback_detuning(testing::beamsplitter(), k1, k2), delta, 1e-12);
  const Matrix s = testing::beamsplitter();
  const Complex res = feedback_G(FeedbackCase::complex_scattering, s, k1, k2, wc, -wc - delta);
  const Complex sred = s(0, 0) + s(0, 1) * s(1, 0) / (1.0 - s(1, 1));
  EXPECT_LT(std::abs(res + sred), 1e-12);
  EXPECT_THROW(feedback_G(FeedbackCase::real_scattering, s, k1, k2, wc, 0.0), std::invalid_argument);
}

TEST(FeedbackG, MatchesReductionPipeline) {
  auto gen = testing::rng(10);
  std::uniform_real_distribution<double> k(0.2, 2.0), w(-8, 8);
  for (const auto& [which, s] : {std::pair{FeedbackCase::real_scattering, testing::swap_matrix()},
                                 std::pair{FeedbackCase::complex_scattering, testing::beamsplitter()}}) {
    const double k1 = k(gen), k2 = k(gen), wc = w(gen);
    const PhotonTransfer f = from_model(feedback_reduce(two_channel_model(k1, k2, wc, s)));
    for (int i = 0; i < 200; ++i) {
      const double x = w(gen);
      EXPECT_LT(std::abs(f.response(x)(0, 0) - feedback_G(which, s, k1, k2, wc, x)), 1e-10);
    }
  }
  EXPECT_THROW(feedback_G(FeedbackCase::real_scattering, Matrix::Identity(2, 2), 1, 1, 0, 0),
               SingularLoopError);
}

}  // namespace
}  // namespace photon_slh
