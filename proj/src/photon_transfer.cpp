#include "photon_slh/photon_transfer.hpp"

#include "photon_slh/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace photon_slh {

namespace {

constexpr double kSelfTestTolerance = 1e-9;

struct GaussLegendre {
  static constexpr std::size_t kOrder = 16;
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};

  GaussLegendre() {
    // Newton iteration on P_n from the Chebyshev initial guesses.
    const std::size_t n = kOrder;
    for (std::size_t i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double p2 =
              ((2.0 * static_cast<double>(k) - 1.0) * x * p1 - (static_cast<double>(k) - 1.0) * p0) /
              static_cast<double>(k);
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

constexpr double kMaxPanels = 1.0e6;

double panels_needed(Complex a) {
  const double span = 40.0 / -a.real();
  return std::ceil(std::abs(a.imag()) * span / std::numbers::pi) + 8.0;
}

// int_0^inf e^{a t} dt by composite Gauss-Legendre on [0, 40/|Re a|], with at
// least one panel per half oscillation.
Complex integrate_exponential(Complex a) {
  const double span = 40.0 / -a.real();
  const auto panels = static_cast<std::size_t>(std::min(panels_needed(a), kMaxPanels));
  const double width = span / static_cast<double>(panels);
  const auto& rule = gauss_legendre();
  Complex total{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * width;
    Complex panel{};
    for (std::size_t i = 0; i < GaussLegendre::kOrder; ++i) {
      panel += rule.weights[i] * std::exp(a * (mid + 0.5 * width * rule.nodes[i]));
    }
    total += 0.5 * width * panel;
  }
  return total;
}

}  // namespace

UniformGrid UniformGrid::linspace(double first, double last, std::size_t count) {
  if (count == 0) {
    throw std::invalid_argument("UniformGrid: need at least one point");
  }
  if (!std::isfinite(first) || !std::isfinite(last)) {
    throw std::invalid_argument("UniformGrid: bounds must be finite");
  }
  if (count == 1) {
    return UniformGrid{first, 1.0, 1};
  }
  if (!(last > first)) {
    throw std::invalid_argument("UniformGrid: grid must be strictly increasing");
  }
  return UniformGrid{first, (last - first) / static_cast<double>(count - 1), count};
}

Matrix TransferStage::residue() const {
  return h * (theta * theta.adjoint()) * scattering;
}

Matrix TransferStage::response(double omega) const {
  return scattering + residue() / (Complex(0.0, omega) - a);
}

Matrix TransferStage::kernel(double t) const {
  const Index k = scattering.rows();
  if (t < 0.0) {
    return Matrix::Zero(k, k);
  }
  return residue() * std::exp(a * t);
}

double quadrature_self_test(const TransferStage& stage) {
  if (panels_needed(stage.a) > kMaxPanels) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const Matrix closed = stage.response(0.0);
  const Matrix quad = stage.scattering + stage.residue() * integrate_exponential(stage.a);
  return (closed - quad).norm() / std::max(1.0, closed.norm());
}

ValidationFailed::ValidationFailed(ValidationReport report)
    : std::runtime_error("model fails the single-photon linearity conditions at '" +
                         report.first_failure() + "'"),
      report_(std::move(report)) {}

PhotonTransfer PhotonTransfer::identity(Index channels) {
  if (channels < 1) {
    throw DimensionError("PhotonTransfer: need at least one channel");
  }
  return PhotonTransfer(channels, {});
}

PhotonTransfer PhotonTransfer::single(TransferStage stage) {
  const Index k = stage.scattering.rows();
  if (k < 1 || stage.scattering.cols() != k || stage.theta.size() != k) {
    throw DimensionError("PhotonTransfer: stage S must be KxK and theta of length K");
  }
  if (!(stage.a.real() < 0.0) || !std::isfinite(stage.a.imag())) {
    throw std::invalid_argument("PhotonTransfer: stage is not stable (Re(a) must be < 0)");
  }
  const double residual = quadrature_self_test(stage);
  // NaN: oscillation too fast for the quadrature budget, check skipped.
  if (!std::isnan(residual) && !(residual < kSelfTestTolerance)) {
    throw std::logic_error("PhotonTransfer: frequency response self-test failed (residual " +
                           std::to_string(residual) + ")");
  }
  return PhotonTransfer(k, {std::move(stage)});
}

Matrix PhotonTransfer::response(double omega) const {
  Matrix g = Matrix::Identity(channels_, channels_);
  for (const auto& stage : stages_) {
    g = stage.response(omega) * g;
  }
  return g;
}

PhotonTransfer from_model(const SLHModel& model, double tol) {
  ValidationReport report = validate_linear_response(model, tol);
  if (!report.passed) {
    throw ValidationFailed(std::move(report));
  }
  const DerivedParams& p = *report.params;
  return PhotonTransfer::single(TransferStage{model.scattering(), model.theta(), p.h, p.a});
}

PhotonTransfer cascade(const PhotonTransfer& first, const PhotonTransfer& second) {
  if (first.channels() != second.channels()) {
    throw DimensionError("cascade: channel counts differ");
  }
  std::vector<TransferStage> stages(first.stages_);
  stages.insert(stages.end(), second.stages_.begin(), second.stages_.end());
  return PhotonTransfer(first.channels(), std::move(stages));
}

FrequencyResponse frequency_response(const PhotonTransfer& filter, const UniformGrid& omegas) {
  FrequencyResponse out{omegas, {}};
  out.values.reserve(omegas.size);
  for (std::size_t i = 0; i < omegas.size; ++i) {
    out.values.push_back(filter.response(omegas[i]));
  }
  return out;
}

ImpulseResponse impulse_response(const PhotonTransfer& filter, std::span<const double> ts) {
  const Index k = filter.channels();
  if (filter.stages().size() > 1) {
    throw std::invalid_argument(
        "impulse_response: multi-stage filter; use the frequency-domain path (shape_fft)");
  }
  ImpulseResponse out;
  out.smooth.reserve(ts.size());
  if (filter.stages().empty()) {
    out.feedthrough = Matrix::Identity(k, k);
    out.smooth.assign(ts.size(), Matrix::Zero(k, k));
    return out;
  }
  const TransferStage& stage = filter.stages().front();
  out.feedthrough = stage.scattering;
  for (double t : ts) {
    out.smooth.push_back(stage.kernel(t));
  }
  return out;
}

}  // namespace photon_slh
