#pragma once

#include "photon_slh/operator.hpp"
#include "photon_slh/slh_model.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace photon_slh {

// Evenly spaced real grid start + i*step, i < size.
struct UniformGrid {
  double start = 0.0;
  double step = 1.0;
  std::size_t size = 0;

  double operator[](std::size_t i) const noexcept {
    return start + static_cast<double>(i) * step;
  }

  // `count` points from first to last inclusive; count == 1 gives {first}.
  static UniformGrid linspace(double first, double last, std::size_t count);
};

// One first-order section of the single-photon filter:
//   g(t) = delta(t) S + h theta theta^dag e^{a t} S  for t >= 0,
//   G(i w) = S + h theta theta^dag S / (i w - a).
struct TransferStage {
  Matrix scattering;
  Vector theta;
  double h = 0.0;
  Complex a;

  Matrix response(double omega) const;
  // Smooth kernel part at t (zero for t < 0; the t = 0 value is the 0+ limit).
  Matrix kernel(double t) const;
  // h theta theta^dag S, the matrix multiplying e^{a t}.
  Matrix residue() const;
};

class ValidationFailed : public std::runtime_error {
 public:
  explicit ValidationFailed(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

// Linear map from input to output single-photon pulse shapes, kept as an
// ordered list of stages (first applied first). Every stage has Re(a) < 0.
class PhotonTransfer {
 public:
  // Filter with no stages: G = I on `channels` channels.
  static PhotonTransfer identity(Index channels);

  // Throws std::invalid_argument on an unstable or inconsistent stage and
  // std::logic_error if the closed-form response at w = 0 disagrees with
  // quadrature of the kernel.
  static PhotonTransfer single(TransferStage stage);

  Index channels() const noexcept { return channels_; }
  std::span<const TransferStage> stages() const noexcept { return stages_; }

  // G(i w) = G_n(i w) ... G_1(i w).
  Matrix response(double omega) const;

 private:
  PhotonTransfer(Index channels, std::vector<TransferStage> stages)
      : channels_(channels), stages_(std::move(stages)) {}

  Index channels_;
  std::vector<TransferStage> stages_;

  friend PhotonTransfer cascade(const PhotonTransfer& first, const PhotonTransfer& second);
};

// Throws ValidationFailed (carrying the report) if the model does not respond
// linearly to single photons.
PhotonTransfer from_model(const SLHModel& model, double tol = kDefaultTolerance);

// `second` driven by the output of `first`.
PhotonTransfer cascade(const PhotonTransfer& first, const PhotonTransfer& second);

struct FrequencyResponse {
  UniformGrid omegas;
  std::vector<Matrix> values;
};

FrequencyResponse frequency_response(const PhotonTransfer& filter, const UniformGrid& omegas);

struct ImpulseResponse {
  std::vector<Matrix> smooth;  // h theta theta^dag e^{a t} S at each t, zero for t < 0
  Matrix feedthrough;          // coefficient of delta(t)
};

// Single-stage filters only; cascades go through the frequency domain.
ImpulseResponse impulse_response(const PhotonTransfer& filter, std::span<const double> ts);

// Relative mismatch between S + residue * int_0^inf e^{a t} dt (composite
// Gauss-Legendre quadrature) and the closed-form G(0). NaN when |Im a|/|Re a|
// is too large for the quadrature budget.
double quadrature_self_test(const TransferStage& stage);

}  // namespace photon_slh
