#pragma once

#include "photon_slh/operator.hpp"
#include "photon_slh/photon_transfer.hpp"

#include <cstddef>
#include <optional>
#include <variant>

namespace photon_slh {

// Sample times t_start + j*dt, j < size, with size a power of two.
struct TimeGrid {
  double t_start = 0.0;
  double dt = 1.0;
  std::size_t size = 0;

  TimeGrid() = default;
  // Throws std::invalid_argument unless dt > 0, t_start finite and size a power of two >= 2.
  TimeGrid(double t_start, double dt, std::size_t size);

  // Grid of 2^log2_n points with spacing span/2^log2_n, symmetric about t = 0
  // with no sample at 0 (discontinuities at the origin fall mid-cell).
  static TimeGrid centered(double span, unsigned log2_n);

  double time(std::size_t j) const noexcept { return t_start + static_cast<double>(j) * dt; }
  double span() const noexcept { return static_cast<double>(size) * dt; }
};

// Analytic single-photon shapes, each of unit L2 norm in the continuum.
// At a jump the sample takes the mean of the one-sided limits.

// (2 pi w^2)^{-1/4} exp(-(t - center)^2 / (4 w^2) + i carrier t): |xi|^2 has std w.
struct GaussianShape {
  double center = 0.0;
  double width = 1.0;
  double carrier = 0.0;
};

// sqrt(kappa) exp(-kappa (t - t_on) / 2) for t >= t_on.
struct DecayingExpShape {
  double kappa = 1.0;
  double t_on = 0.0;
};

// -sqrt(kappa) exp((kappa/2 - i omega_c) t) for t < 0: fully excites a
// two-level emitter with decay kappa and transition frequency omega_c.
struct RisingExpShape {
  double kappa = 1.0;
  double omega_c = 0.0;
};

// 1/sqrt(t1 - t0) on [t0, t1).
struct SquareShape {
  double t0 = 0.0;
  double t1 = 1.0;
};

using PulseShape = std::variant<GaussianShape, DecayingExpShape, RisingExpShape, SquareShape>;

enum class PulseKind { sampled, gaussian, decaying_exp, rising_exp, square };

Complex evaluate_shape(const PulseShape& shape, double t);

// Multi-channel single-photon pulse shape on a uniform grid. Samples are stored
// as a (grid.size x K) matrix, one column per channel.
class Pulse {
 public:
  static Pulse sampled(TimeGrid grid, Matrix samples);

  // Materializes `shape` on `grid`; channel k carries weights(k) * shape.
  // Default weights: the whole photon in channel 1 of `channels`.
  static Pulse analytic(const PulseShape& shape, const TimeGrid& grid, Index channels = 1);
  static Pulse analytic(const PulseShape& shape, const TimeGrid& grid, const Vector& weights);

  PulseKind kind() const noexcept;
  const std::optional<PulseShape>& shape() const noexcept { return shape_; }
  const TimeGrid& grid() const noexcept { return grid_; }
  Index channels() const noexcept { return samples_.cols(); }
  const Matrix& samples() const noexcept { return samples_; }

  // Same samples, descriptor dropped.
  Pulse materialize() const { return sampled(grid_, samples_); }

  // sum_k sum_j |xi_k(t_j)|^2 dt
  double norm_squared() const;
  double norm() const;
  // Fraction of the total energy carried by samples with t < t0.
  double energy_before(double t0) const;

 private:
  Pulse(TimeGrid grid, Matrix samples, std::optional<PulseShape> shape);

  TimeGrid grid_;
  Matrix samples_;
  std::optional<PulseShape> shape_;
};

// Scaled to unit discrete norm; the result is a sampled pulse.
// Throws std::invalid_argument for a zero pulse.
Pulse normalize(const Pulse& p);

// Discrete approximation of F[f](w) = int e^{-i w t} f(t) dt at
// w_k = 2 pi k / (n dt), k = -n/2 .. n/2 - 1, including the e^{-i w t_start}
// offset phase. values is (n x K).
struct Spectrum {
  UniformGrid omegas;
  double t_start = 0.0;
  Matrix values;
};

Spectrum fourier(const Pulse& p);
Pulse inverse_fourier(const Spectrum& s);

struct ShapeResult {
  Pulse output;
  double input_norm = 0.0;
  double output_norm = 0.0;
};

// Largest tolerated energy fraction of the filter kernel beyond the window.
inline constexpr double kKernelTailTolerance = 1e-8;

// Energy fraction of the cascade kernel beyond `span`.
double kernel_tail_fraction(const PhotonTransfer& filter, double span);
// Shortest span with kernel_tail_fraction below kKernelTailTolerance.
double required_span(const PhotonTransfer& filter);

// Output pulse via xi'(w) = G(i w) xi(w) on the DFT frequencies. Throws
// GridError (with a suggested span) when the window is too short for the
// filter's memory and DimensionError on a channel mismatch.
ShapeResult shape_fft(const Pulse& p, const PhotonTransfer& filter);

// Output pulse by integrating eta' = a eta + theta^dag S xi(t), eta(t_start) = 0,
// with classical RK4 (input linearly interpolated between samples), then
// xi' = S xi + h theta eta; stages applied in order. Throws GridError when
// |a| dt > 0.1 for any stage.
ShapeResult shape_ode(const Pulse& p, const PhotonTransfer& filter);

// sqrt(sum_k sum_j |a - b|^2 dt) on a shared grid.
double l2_distance(const Pulse& a, const Pulse& b);
// min over global phase phi of the L2 distance between a and e^{i phi} b.
double l2_distance_up_to_phase(const Pulse& a, const Pulse& b);

// Sample-wise circular shift by `shift` samples (positive = later in time).
Pulse circular_shift(const Pulse& p, std::ptrdiff_t shift);

}  // namespace photon_slh
