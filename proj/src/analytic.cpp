#include "photon_slh/analytic.hpp"

#include "photon_slh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace photon_slh {

namespace {

constexpr double kSingularLoop = 1e-12;
constexpr int kMaxSeriesTerms = 100000;

struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + compensation; }
};

void require_positive(double kappa, const char* name) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument(std::string(name) + " must be a positive finite decay rate");
  }
}

Complex loop_factor(const Matrix& s) {
  if (s.rows() != 2 || s.cols() != 2) {
    throw DimensionError("feedback: scattering matrix must be 2x2");
  }
  const Complex one_minus_s22 = 1.0 - s(1, 1);
  if (std::abs(one_minus_s22) <= kSingularLoop) {
    throw SingularLoopError("feedback: loop is singular (|1 - S22| <= 1e-12)");
  }
  return 1.0 / one_minus_s22;
}

}  // namespace

TwoLevelParams::TwoLevelParams(double kappa_in, double omega_c_in)
    : kappa(kappa_in), omega_c(omega_c_in) {
  require_positive(kappa, "kappa");
  if (!std::isfinite(omega_c)) {
    throw std::invalid_argument("omega_c must be finite");
  }
}

SLHModel two_level_model(const TwoLevelParams& p) {
  Vector theta(1);
  theta(0) = std::sqrt(p.kappa);
  return SLHModel(Matrix::Identity(1, 1), theta, sigma_minus(), (0.5 * p.omega_c) * sigma_z());
}

SLHModel two_channel_model(double kappa1, double kappa2, double omega_c, const Matrix& scattering) {
  require_positive(kappa1, "kappa1");
  require_positive(kappa2, "kappa2");
  Vector theta(2);
  theta << std::sqrt(kappa1), std::sqrt(kappa2);
  return SLHModel(scattering, theta, sigma_minus(), (0.5 * omega_c) * sigma_z());
}

SLHModel joint_memory_model(std::size_t n_atoms, const TwoLevelParams& p) {
  if (n_atoms < 1) {
    throw std::invalid_argument("joint_memory_model: need at least one atom");
  }
  std::vector<Operator> lower;
  std::vector<Operator> raise;
  Index dim = 1;
  for (std::size_t k = 0; k < n_atoms; ++k) dim *= 2;
  Operator l0 = Operator::zero(dim);
  Operator h0 = Operator::zero(dim);
  for (std::size_t k = 0; k < n_atoms; ++k) {
    lower.push_back(embed_site(sigma_minus(), k, n_atoms));
    raise.push_back(embed_site(sigma_plus(), k, n_atoms));
    l0 = l0 + lower.back();
    h0 = h0 + (0.5 * p.omega_c) * embed_site(sigma_z(), k, n_atoms);
  }
  const Complex exchange = p.kappa / Complex(0.0, 2.0);
  for (std::size_t j = 1; j < n_atoms; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      h0 = h0 + exchange * (raise[j] * lower[i] - raise[i] * lower[j]);
    }
  }
  Vector theta(1);
  theta(0) = std::sqrt(p.kappa);
  return SLHModel(Matrix::Identity(1, 1), theta, l0, h0);
}

Complex two_level_G(const TwoLevelParams& p, double omega) {
  const double detuning = omega + p.omega_c;
  return Complex(-0.5 * p.kappa, detuning) / Complex(0.5 * p.kappa, detuning);
}

std::pair<Complex, Complex> two_channel_G(double kappa1, double kappa2, double omega_c,
                                          double omega) {
  require_positive(kappa1, "kappa1");
  require_positive(kappa2, "kappa2");
  const double detuning = omega + omega_c;
  const Complex denom(0.5 * (kappa1 + kappa2), detuning);
  return {Complex(-0.5 * (kappa1 - kappa2), detuning) / denom,
          std::sqrt(kappa1 * kappa2) / denom};
}

Complex memory_GN(unsigned n_atoms, const TwoLevelParams& p, double omega) {
  if (n_atoms < 1) {
    throw std::invalid_argument("memory_GN: need at least one atom");
  }
  const Complex g = two_level_G(p, omega);
  Complex out = 1.0;
  for (unsigned k = 0; k < n_atoms; ++k) out *= g;
  return out;
}

double hyp1f1_series(double a, double b, double z) {
  if (b <= 0.0 && b == std::floor(b)) {
    throw std::domain_error("hyp1f1: b must not be a non-positive integer");
  }
  NeumaierSum sum;
  double term = 1.0;
  sum.add(term);
  int small = 0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * z / ((b + dn) * (dn + 1.0));
    sum.add(term);
    if (term == 0.0) break;
    if (std::abs(term) < 1e-16 * std::abs(sum.value())) {
      if (++small == 3) break;
    } else {
      small = 0;
    }
  }
  return sum.value();
}

double hyp1f1(double a, double b, double z) {
  if (z < 0.0) {
    return std::exp(z) * hyp1f1_series(b - a, b, -z);
  }
  return hyp1f1_series(a, b, z);
}

Complex memory_kernel_1f1(unsigned n_atoms, const TwoLevelParams& p, double t) {
  if (n_atoms < 1) {
    throw std::invalid_argument("memory_kernel_1f1: need at least one atom");
  }
  if (t < 0.0) {
    throw std::invalid_argument("memory_kernel_1f1: kernel is causal, t must be >= 0");
  }
  const double n = static_cast<double>(n_atoms);
  const double envelope =
      -p.kappa * n * std::exp(-0.5 * p.kappa * t) * hyp1f1(1.0 - n, 2.0, p.kappa * t);
  return envelope * std::exp(Complex(0.0, -p.omega_c * t));
}

Pulse shape_with_memory_kernel(const Pulse& input, unsigned n_atoms, const TwoLevelParams& p) {
  if (input.channels() != 1) {
    throw DimensionError("shape_with_memory_kernel: single-channel pulse required");
  }
  const TimeGrid& g = input.grid();
  const auto n = static_cast<Index>(g.size);
  Vector kernel(n);
  Index last = 0;
  const double floor = 1e-18 * p.kappa * static_cast<double>(n_atoms);
  for (Index m = 0; m < n; ++m) {
    kernel(m) = memory_kernel_1f1(n_atoms, p, static_cast<double>(m) * g.dt);
    if (std::abs(kernel(m)) > floor) last = m;
  }
  const auto& xi = input.samples();
  Matrix out(n, 1);
  for (Index j = 0; j < n; ++j) {
    Complex acc = 0.5 * kernel(0) * xi(j, 0);
    const Index upto = std::min(j, last);
    for (Index m = 1; m <= upto; ++m) {
      acc += kernel(m) * xi(j - m, 0);
    }
    out(j, 0) = xi(j, 0) + g.dt * acc;
  }
  return Pulse::sampled(g, std::move(out));
}

Pulse inverting_pulse(const TwoLevelParams& p, const TimeGrid& grid) {
  return Pulse::analytic(RisingExpShape{p.kappa, p.omega_c}, grid);
}

Complex inverting_pulse_spectrum(const TwoLevelParams& p, double omega) {
  return std::sqrt(p.kappa) / Complex(-0.5 * p.kappa, omega + p.omega_c);
}

double feedback_detuning(const Matrix& scattering, double kappa1, double kappa2) {
  const Complex inv = loop_factor(scattering);
  return (std::sqrt(kappa1 * kappa2) * scattering(0, 1) * inv + kappa2 * scattering(1, 1) * inv)
      .imag();
}

Complex feedback_G(FeedbackCase which, const Matrix& scattering, double kappa1, double kappa2,
                   double omega_c, double omega) {
  require_positive(kappa1, "kappa1");
  require_positive(kappa2, "kappa2");
  const Complex inv = loop_factor(scattering);
  double delta = 0.0;
  if (which == FeedbackCase::real_scattering) {
    if (scattering.imag().cwiseAbs().maxCoeff() != 0.0) {
      throw std::invalid_argument("feedback_G: real-scattering case given a complex S");
    }
  } else {
    delta = feedback_detuning(scattering, kappa1, kappa2);
  }
  const Complex s_red = scattering(0, 0) + scattering(0, 1) * scattering(1, 0) * inv;
  const Complex c = std::sqrt(kappa1) + scattering(0, 1) * inv * std::sqrt(kappa2);
  const double half_decay = 0.5 * std::norm(c);
  const double detuning = omega + omega_c + delta;
  return s_red * Complex(-half_decay, detuning) / Complex(half_decay, detuning);
}

}  // namespace photon_slh
