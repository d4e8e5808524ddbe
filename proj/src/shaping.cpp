#include "photon_slh/errors.hpp"
#include "photon_slh/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace photon_slh {

namespace {

constexpr double kMaxStepPhase = 0.1;

// Regularized upper incomplete gamma Q(m, x) for integer m >= 1.
double erlang_tail(int m, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= x / static_cast<double>(k);
    sum += term;
  }
  return std::exp(-x) * sum;
}

void check_channels(const Pulse& p, const PhotonTransfer& filter) {
  if (p.channels() != filter.channels()) {
    std::ostringstream msg;
    msg << "pulse has " << p.channels() << " channel(s), filter expects " << filter.channels();
    throw DimensionError(msg.str());
  }
}

}  // namespace

double kernel_tail_fraction(const PhotonTransfer& filter, double span) {
  // The n-stage kernel is bounded by an Erlang-type envelope t^{n-1} e^{-r t},
  // r the slowest decay rate among the stages that actually have a kernel.
  int active = 0;
  double rate = std::numeric_limits<double>::infinity();
  for (const auto& stage : filter.stages()) {
    if (stage.residue().norm() == 0.0) continue;
    ++active;
    rate = std::min(rate, -stage.a.real());
  }
  if (active == 0) return 0.0;
  return erlang_tail(2 * active - 1, 2.0 * rate * span);
}

double required_span(const PhotonTransfer& filter) {
  if (kernel_tail_fraction(filter, 0.0) <= kKernelTailTolerance) return 0.0;
  double hi = 1.0;
  while (kernel_tail_fraction(filter, hi) > kKernelTailTolerance) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kernel_tail_fraction(filter, mid) > kKernelTailTolerance ? lo : hi) = mid;
  }
  return hi;
}

ShapeResult shape_fft(const Pulse& p, const PhotonTransfer& filter) {
  check_channels(p, filter);
  const double span = p.grid().span();
  const double tail = kernel_tail_fraction(filter, span);
  if (tail > kKernelTailTolerance) {
    const double need = required_span(filter);
    std::ostringstream msg;
    msg << "time window too short: kernel tail energy " << tail << " beyond span " << span
        << " exceeds " << kKernelTailTolerance << "; use a span of at least " << need;
    throw GridError(msg.str(), need);
  }

  Spectrum s = fourier(p);
  for (std::size_t m = 0; m < s.omegas.size; ++m) {
    const auto row = static_cast<Index>(m);
    const Matrix g = filter.response(s.omegas[m]);
    s.values.row(row) = (g * s.values.row(row).transpose()).transpose();
  }
  Pulse out = inverse_fourier(s);
  const double out_norm = out.norm();
  return ShapeResult{std::move(out), p.norm(), out_norm};
}

ShapeResult shape_ode(const Pulse& p, const PhotonTransfer& filter) {
  check_channels(p, filter);
  const double dt = p.grid().dt;
  for (const auto& stage : filter.stages()) {
    if (std::abs(stage.a) * dt > kMaxStepPhase) {
      std::ostringstream msg;
      msg << "time step too coarse for RK4: |a| dt = " << std::abs(stage.a) * dt << " > "
          << kMaxStepPhase << "; use dt <= " << kMaxStepPhase / std::abs(stage.a);
      throw GridError(msg.str(), 0.0);
    }
  }

  const auto n = static_cast<Index>(p.grid().size);
  Matrix xi = p.samples();
  for (const auto& stage : filter.stages()) {
    const Complex a = stage.a;
    // Scalar drive theta^dag S xi(t_j).
    const Vector drive = xi * (stage.scattering.adjoint() * stage.theta).conjugate();
    Vector eta(n);
    Complex state{};
    eta(0) = state;
    for (Index j = 0; j + 1 < n; ++j) {
      const Complex x0 = drive(j);
      const Complex x1 = drive(j + 1);
      const Complex xm = 0.5 * (x0 + x1);
      const Complex k1 = a * state + x0;
      const Complex k2 = a * (state + 0.5 * dt * k1) + xm;
      const Complex k3 = a * (state + 0.5 * dt * k2) + xm;
      const Complex k4 = a * (state + dt * k3) + x1;
      state += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      eta(j + 1) = state;
    }
    Matrix next = xi * stage.scattering.transpose();
    next += stage.h * eta * stage.theta.transpose();
    xi = std::move(next);
  }
  Pulse out = Pulse::sampled(p.grid(), std::move(xi));
  const double out_norm = out.norm();
  return ShapeResult{std::move(out), p.norm(), out_norm};
}

}  // namespace photon_slh
