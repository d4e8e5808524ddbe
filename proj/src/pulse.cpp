#include "photon_slh/pulse.hpp"

#include "photon_slh/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

namespace photon_slh {

namespace {

constexpr double kPi = std::numbers::pi;

// Mean of the one-sided limits at a jump.
double step(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return 0.0;
  return 0.5;
}

struct ShapeEvaluator {
  double t;

  Complex operator()(const GaussianShape& g) const {
    const double norm = std::pow(2.0 * kPi * g.width * g.width, -0.25);
    const double x = t - g.center;
    return norm * std::exp(Complex(-x * x / (4.0 * g.width * g.width), g.carrier * t));
  }

  Complex operator()(const DecayingExpShape& d) const {
    const double u = step(t - d.t_on);
    if (u == 0.0) return {};
    return u * std::sqrt(d.kappa) * std::exp(-0.5 * d.kappa * (t - d.t_on));
  }

  Complex operator()(const RisingExpShape& r) const {
    const double w = 1.0 - step(t);
    if (w == 0.0) return {};
    return -w * std::sqrt(r.kappa) * std::exp(Complex(0.5 * r.kappa * t, -r.omega_c * t));
  }

  Complex operator()(const SquareShape& s) const {
    const double w = step(t - s.t0) - step(t - s.t1);
    return w / std::sqrt(s.t1 - s.t0);
  }
};

void check_shape(const PulseShape& shape) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianShape>) {
          if (!(s.width > 0.0)) throw std::invalid_argument("gaussian: width must be > 0");
        } else if constexpr (std::is_same_v<T, DecayingExpShape>) {
          if (!(s.kappa > 0.0)) throw std::invalid_argument("decaying_exp: kappa must be > 0");
        } else if constexpr (std::is_same_v<T, RisingExpShape>) {
          if (!(s.kappa > 0.0)) throw std::invalid_argument("rising_exp: kappa must be > 0");
        } else {
          if (!(s.t1 > s.t0)) throw std::invalid_argument("square: need t1 > t0");
        }
      },
      shape);
}

}  // namespace

TimeGrid::TimeGrid(double t_start_in, double dt_in, std::size_t size_in)
    : t_start(t_start_in), dt(dt_in), size(size_in) {
  if (!std::isfinite(t_start) || !std::isfinite(dt) || !(dt > 0.0)) {
    throw std::invalid_argument("TimeGrid: need finite t_start and dt > 0");
  }
  if (size < 2 || !std::has_single_bit(size)) {
    throw std::invalid_argument("TimeGrid: sample count must be a power of two >= 2");
  }
}

TimeGrid TimeGrid::centered(double span, unsigned log2_n) {
  const std::size_t n = std::size_t{1} << log2_n;
  const double dt = span / static_cast<double>(n);
  return TimeGrid(-0.5 * static_cast<double>(n - 1) * dt, dt, n);
}

Complex evaluate_shape(const PulseShape& shape, double t) {
  return std::visit(ShapeEvaluator{t}, shape);
}

Pulse::Pulse(TimeGrid grid, Matrix samples, std::optional<PulseShape> shape)
    : grid_(grid), samples_(std::move(samples)), shape_(std::move(shape)) {}

Pulse Pulse::sampled(TimeGrid grid, Matrix samples) {
  if (static_cast<std::size_t>(samples.rows()) != grid.size || samples.cols() < 1) {
    throw DimensionError("Pulse: samples must be (grid size x channels)");
  }
  if (!samples.allFinite()) {
    throw std::invalid_argument("Pulse: samples must be finite");
  }
  return Pulse(grid, std::move(samples), std::nullopt);
}

Pulse Pulse::analytic(const PulseShape& shape, const TimeGrid& grid, Index channels) {
  if (channels < 1) {
    throw DimensionError("Pulse: need at least one channel");
  }
  Vector weights = Vector::Zero(channels);
  weights(0) = 1.0;
  return analytic(shape, grid, weights);
}

Pulse Pulse::analytic(const PulseShape& shape, const TimeGrid& grid, const Vector& weights) {
  check_shape(shape);
  if (weights.size() < 1) {
    throw DimensionError("Pulse: need at least one channel");
  }
  Matrix samples(static_cast<Index>(grid.size), weights.size());
  for (std::size_t j = 0; j < grid.size; ++j) {
    const Complex v = evaluate_shape(shape, grid.time(j));
    samples.row(static_cast<Index>(j)) = v * weights.transpose();
  }
  return Pulse(grid, std::move(samples), shape);
}

PulseKind Pulse::kind() const noexcept {
  if (!shape_) return PulseKind::sampled;
  switch (shape_->index()) {
    case 0: return PulseKind::gaussian;
    case 1: return PulseKind::decaying_exp;
    case 2: return PulseKind::rising_exp;
    default: return PulseKind::square;
  }
}

double Pulse::norm_squared() const { return samples_.squaredNorm() * grid_.dt; }

double Pulse::norm() const { return std::sqrt(norm_squared()); }

double Pulse::energy_before(double t0) const {
  const double total = samples_.squaredNorm();
  if (total == 0.0) return 0.0;
  double before = 0.0;
  for (std::size_t j = 0; j < grid_.size && grid_.time(j) < t0; ++j) {
    before += samples_.row(static_cast<Index>(j)).squaredNorm();
  }
  return before / total;
}

Pulse normalize(const Pulse& p) {
  const double n = p.norm();
  if (n == 0.0) {
    throw std::invalid_argument("normalize: pulse has zero norm");
  }
  return Pulse::sampled(p.grid(), p.samples() / n);
}

Spectrum fourier(const Pulse& p) {
  const TimeGrid& g = p.grid();
  const auto n = static_cast<Index>(g.size);
  const double domega = 2.0 * kPi / g.span();
  Spectrum s{UniformGrid{-0.5 * static_cast<double>(n) * domega, domega, g.size}, g.t_start,
             Matrix(n, p.channels())};

  Eigen::FFT<double> fft;
  std::vector<Complex> in(g.size);
  std::vector<Complex> out;
  for (Index k = 0; k < p.channels(); ++k) {
    for (Index j = 0; j < n; ++j) in[static_cast<std::size_t>(j)] = p.samples()(j, k);
    fft.fwd(out, in);
    // Reorder bins so that row m holds omega_m = (m - n/2) domega.
    for (Index m = 0; m < n; ++m) {
      const Index bin = (m + n / 2) % n;
      const double omega = s.omegas[static_cast<std::size_t>(m)];
      s.values(m, k) = g.dt * std::exp(Complex(0.0, -omega * g.t_start)) *
                       out[static_cast<std::size_t>(bin)];
    }
  }
  return s;
}

Pulse inverse_fourier(const Spectrum& s) {
  const auto n = static_cast<Index>(s.omegas.size);
  const double dt = 2.0 * kPi / (static_cast<double>(n) * s.omegas.step);
  TimeGrid grid(s.t_start, dt, s.omegas.size);

  Eigen::FFT<double> fft;
  std::vector<Complex> in(s.omegas.size);
  std::vector<Complex> out;
  Matrix samples(n, s.values.cols());
  for (Index k = 0; k < s.values.cols(); ++k) {
    for (Index m = 0; m < n; ++m) {
      const Index bin = (m + n / 2) % n;
      const double omega = s.omegas[static_cast<std::size_t>(m)];
      in[static_cast<std::size_t>(bin)] =
          std::exp(Complex(0.0, omega * s.t_start)) * s.values(m, k) / dt;
    }
    // Eigen's inv() includes the 1/n factor.
    fft.inv(out, in);
    for (Index j = 0; j < n; ++j) samples(j, k) = out[static_cast<std::size_t>(j)];
  }
  return Pulse::sampled(grid, std::move(samples));
}

double l2_distance(const Pulse& a, const Pulse& b) {
  if (a.grid().size != b.grid().size || a.channels() != b.channels()) {
    throw DimensionError("l2_distance: pulses live on different grids");
  }
  return std::sqrt((a.samples() - b.samples()).squaredNorm() * a.grid().dt);
}

double l2_distance_up_to_phase(const Pulse& a, const Pulse& b) {
  if (a.grid().size != b.grid().size || a.channels() != b.channels()) {
    throw DimensionError("l2_distance_up_to_phase: pulses live on different grids");
  }
  // |a - e^{i phi} b|^2 is minimized where e^{i phi} b aligns with a.
  const Complex overlap = (b.samples().conjugate().cwiseProduct(a.samples())).sum();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return std::sqrt((a.samples() - phase * b.samples()).squaredNorm() * a.grid().dt);
}

Pulse circular_shift(const Pulse& p, std::ptrdiff_t shift) {
  const auto n = static_cast<std::ptrdiff_t>(p.grid().size);
  Matrix out(p.samples().rows(), p.samples().cols());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const std::ptrdiff_t dst = ((j + shift) % n + n) % n;
    out.row(dst) = p.samples().row(j);
  }
  return Pulse::sampled(p.grid(), std::move(out));
}

}  // namespace photon_slh
