#pragma once

#include "photon_slh/operator.hpp"
#include "photon_slh/pulse.hpp"

#include <utility>

namespace photon_slh {

// Two-level emitter (1, sqrt(kappa) sigma_minus, (omega_c/2) sigma_z).
struct TwoLevelParams {
  double kappa = 1.0;
  double omega_c = 0.0;

  TwoLevelParams() = default;
  TwoLevelParams(double kappa, double omega_c);
};

// Model builders for the closed-form systems below.
SLHModel two_level_model(const TwoLevelParams& p);
SLHModel two_channel_model(double kappa1, double kappa2, double omega_c,
                           const Matrix& scattering = Matrix::Identity(2, 2));
// n_atoms two-level atoms in series on their joint space (site 0 is driven
// first): L0 = sum_n sigma_minus^n, theta = [sqrt(kappa)], H0 including the
// exchange terms (kappa/2i) sum_{j>i} (sigma_+^j sigma_-^i - sigma_+^i sigma_-^j).
SLHModel joint_memory_model(std::size_t n_atoms, const TwoLevelParams& p);

// (-kappa/2 + i(w + omega_c)) / (kappa/2 + i(w + omega_c)); all-pass.
Complex two_level_G(const TwoLevelParams& p, double omega);

// Photon entering channel 1 of the two-channel emitter:
// transmitted G1 = (-(k1 - k2)/2 + i(w + wc)) / ((k1 + k2)/2 + i(w + wc)),
// reflected   G2 = sqrt(k1 k2) / ((k1 + k2)/2 + i(w + wc)),
// so the channel-2 output spectrum is -G2 times the input.
std::pair<Complex, Complex> two_channel_G(double kappa1, double kappa2, double omega_c,
                                          double omega);

// two_level_G^N: N identical emitters in series.
Complex memory_GN(unsigned n_atoms, const TwoLevelParams& p, double omega);

// Kummer 1F1(a; b; z) by direct power series with Neumaier-compensated
// summation. Stops when three consecutive terms fall below 1e-16 of the
// partial sum, or when the series terminates (a a non-positive integer).
double hyp1f1_series(double a, double b, double z);

// 1F1 for real arguments; negative z goes through Kummer's transformation
// 1F1(a; b; z) = e^z 1F1(b - a; b; -z) so the series never alternates against
// a large partial sum.
double hyp1f1(double a, double b, double z);

// Smooth part of the N-emitter cascade's impulse response (the delta(t)
// feedthrough is separate), t >= 0:
//   -kappa N e^{-kappa t/2} 1F1(1 - N; 2; kappa t) e^{-i omega_c t}
// = -kappa N e^{+kappa t/2} 1F1(1 + N; 2; -kappa t) e^{-i omega_c t}.
// N = 1 gives -kappa e^{-(kappa/2 + i omega_c) t}. Throws for t < 0.
Complex memory_kernel_1f1(unsigned n_atoms, const TwoLevelParams& p, double t);

// Output of the N-emitter cascade by direct time-domain quadrature of the
// kernel above (trapezoid rule) plus the delta feedthrough.
Pulse shape_with_memory_kernel(const Pulse& input, unsigned n_atoms, const TwoLevelParams& p);

// Continuum-normalized rising exponential that cancels the emitter's zero.
Pulse inverting_pulse(const TwoLevelParams& p, const TimeGrid& grid);

// sqrt(kappa) / (-kappa/2 + i(w + omega_c)), its Fourier transform.
Complex inverting_pulse_spectrum(const TwoLevelParams& p, double omega);

enum class FeedbackCase { real_scattering, complex_scattering };

// Hamiltonian shift Im(sqrt(k1 k2) S12 (1-S22)^-1 + k2 S22 (1-S22)^-1).
double feedback_detuning(const Matrix& scattering, double kappa1, double kappa2);

// Closed-form transfer of the two-channel emitter with output 2 fed back into
// input 2:
//   G = S' (-|c|^2/2 + i(w + wc + D)) / (|c|^2/2 + i(w + wc + D)),
//   S' = S11 + S12 S21 (1-S22)^-1,  c = sqrt(k1) + S12 (1-S22)^-1 sqrt(k2).
// The real-scattering case has D = 0 and rejects complex S.
// Throws SingularLoopError when |1 - S22| <= 1e-12.
Complex feedback_G(FeedbackCase which, const Matrix& scattering, double kappa1, double kappa2,
                   double omega_c, double omega);

}  // namespace photon_slh
