#include "photon_slh/slh_model.hpp"

#include "photon_slh/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace photon_slh {

namespace {

constexpr double kInvariantTolerance = 1e-10;
constexpr double kSingularLoop = 1e-12;

std::vector<Operator> expand(const Vector& theta, const Operator& l0) {
  std::vector<Operator> out;
  out.reserve(static_cast<std::size_t>(theta.size()));
  for (Index k = 0; k < theta.size(); ++k) {
    out.push_back(theta(k) * l0);
  }
  return out;
}

// Im{X} = (X - X^dag) / 2i.
Operator operator_imag(const Operator& x) {
  return Complex(0.0, -0.5) * (x - x.adjoint());
}

// Tries to write every coupling as theta_k * l0 for the given l0.
std::optional<Vector> fit_factor(const std::vector<Operator>& couplings, const Operator& l0,
                                 double tol) {
  const double n2 = l0.matrix().squaredNorm();
  if (n2 == 0.0) {
    return std::nullopt;
  }
  const double scale = std::max(1.0, std::sqrt(n2));
  Vector theta(static_cast<Index>(couplings.size()));
  for (std::size_t k = 0; k < couplings.size(); ++k) {
    const Matrix& lk = couplings[k].matrix();
    const Complex c = (l0.matrix().conjugate().cwiseProduct(lk)).sum() / n2;
    if ((lk - c * l0.matrix()).norm() > tol * scale) {
      return std::nullopt;
    }
    theta(static_cast<Index>(k)) = c;
  }
  return theta;
}

ConditionReport make_condition(const char* name, const EigenRelationReport& r) {
  ConditionReport c;
  c.name = name;
  c.holds = r.holds;
  c.residual = r.residual;
  c.value = r.eigenvalue;
  return c;
}

}  // namespace

SLHModel::SLHModel(Matrix scattering, Vector theta, Operator coupling, Operator hamiltonian)
    : SLHModel(std::move(scattering), Factor{theta, coupling}, expand(theta, coupling),
               std::move(hamiltonian)) {}

SLHModel::SLHModel(Matrix scattering, std::optional<Factor> factor,
                   std::vector<Operator> couplings, Operator hamiltonian)
    : scattering_(std::move(scattering)),
      factor_(std::move(factor)),
      couplings_(std::move(couplings)),
      hamiltonian_(std::move(hamiltonian)) {
  check_invariants();
}

SLHModel SLHModel::general(Matrix scattering, std::vector<Operator> couplings,
                           Operator hamiltonian) {
  return SLHModel(std::move(scattering), std::nullopt, std::move(couplings),
                  std::move(hamiltonian));
}

SLHModel SLHModel::identity(Index levels, Index channels) {
  return SLHModel(Matrix::Identity(channels, channels), Vector::Zero(channels),
                  Operator::zero(levels), Operator::zero(levels));
}

void SLHModel::check_invariants() const {
  const Index k = scattering_.rows();
  if (k < 1 || scattering_.cols() != k) {
    throw ModelError("SLHModel: scattering matrix must be square with at least one channel");
  }
  if (!scattering_.allFinite()) {
    throw ModelError("SLHModel: scattering matrix has non-finite entries");
  }
  const double unitarity = (scattering_.adjoint() * scattering_ - Matrix::Identity(k, k)).norm();
  if (unitarity > kInvariantTolerance) {
    throw ModelError("SLHModel: scattering matrix is not unitary (|S^dag S - I| = " +
                     std::to_string(unitarity) + ")");
  }
  if (!hamiltonian_.is_hermitian(kInvariantTolerance)) {
    throw ModelError("SLHModel: Hamiltonian is not Hermitian");
  }
  if (static_cast<Index>(couplings_.size()) != k) {
    throw DimensionError("SLHModel: need one coupling per channel");
  }
  for (const auto& l : couplings_) {
    if (l.dim() != hamiltonian_.dim()) {
      throw DimensionError("SLHModel: coupling and Hamiltonian dimensions differ");
    }
  }
  if (factor_) {
    if (factor_->theta.size() != k) {
      throw DimensionError("SLHModel: theta length must equal the channel count");
    }
    if (!factor_->theta.allFinite()) {
      throw ModelError("SLHModel: theta has non-finite entries");
    }
  }
}

const Vector& SLHModel::theta() const {
  if (!factor_) {
    throw NotFactorizedError("SLHModel: coupling is not of the form theta^T L0");
  }
  return factor_->theta;
}

const Operator& SLHModel::coupling_operator() const {
  if (!factor_) {
    throw NotFactorizedError("SLHModel: coupling is not of the form theta^T L0");
  }
  return factor_->l0;
}

std::vector<const ConditionReport*> ValidationReport::conditions() const {
  return {&ground_energy, &coupling_annihilates, &commutator_proportional, &number_eigenrelation,
          &stability};
}

std::string ValidationReport::first_failure() const {
  for (const auto* c : conditions()) {
    if (!c->holds) {
      return c->name;
    }
  }
  return {};
}

ValidationReport validate_linear_response(const SLHModel& model, double tol,
                                          double stability_margin) {
  const Vector& theta = model.theta();
  const Operator& l0 = model.coupling_operator();
  const Operator& h0 = model.hamiltonian();
  const Index n = model.levels();
  const Vector ground = ground_ket(n);
  const RowVector ground_row = ground_bra(n);

  ValidationReport report;

  report.ground_energy = make_condition("ground_energy", vector_eigen_test(h0, ground, tol));
  if (!report.ground_energy.holds) {
    report.ground_energy.message = "H0 does not map the ground state onto itself";
  }

  report.coupling_annihilates.name = "coupling_annihilates";
  report.coupling_annihilates.residual = (l0 * ground).norm();
  report.coupling_annihilates.holds = report.coupling_annihilates.residual <= tol;
  if (!report.coupling_annihilates.holds) {
    report.coupling_annihilates.message = "L0 does not annihilate the ground state";
  }

  report.commutator_proportional = make_condition(
      "commutator_proportional",
      row_proportionality_test(commutator(l0, h0), l0, ground_row, tol));
  if (!report.commutator_proportional.holds) {
    report.commutator_proportional.message = "<0s|[L0,H0] is not proportional to <0s|L0";
  }

  report.number_eigenrelation = make_condition(
      "number_eigenrelation", vector_eigen_test(commutator(l0.adjoint(), l0), ground, tol));
  if (report.number_eigenrelation.holds && report.number_eigenrelation.value &&
      std::abs(report.number_eigenrelation.value->imag()) > tol) {
    report.number_eigenrelation.holds = false;
    report.number_eigenrelation.message = "eigenvalue of [L0^dag,L0] is not real";
  } else if (!report.number_eigenrelation.holds) {
    report.number_eigenrelation.message = "[L0^dag,L0]|0s> is not proportional to |0s>";
  }

  report.stability.name = "stability";
  if (!(report.commutator_proportional.holds && report.number_eigenrelation.holds)) {
    report.stability.message = "not evaluated: beta or h undefined";
  } else {
    DerivedParams p;
    p.alpha = report.ground_energy.value.value_or(Complex{});
    // An unset beta means <0s|L0 = 0; any beta works, take 0.
    p.beta = report.commutator_proportional.value.value_or(Complex{});
    p.h = report.number_eigenrelation.value.value_or(Complex{}).real();
    p.coupling_weight = theta.squaredNorm();
    p.a = -kI * p.beta + 0.5 * p.coupling_weight * p.h;
    report.stability.value = p.a;
    report.stability.residual = p.a.real();
    if (p.a.real() < -stability_margin) {
      report.stability.holds = true;
    } else if (p.a.real() == 0.0) {
      report.stability.message = "marginal: Re(a) = 0, the response does not decay";
    } else {
      report.stability.message = "unstable: Re(a) = " + std::to_string(p.a.real());
    }
    report.params = p;
  }

  report.passed = report.ground_energy.holds && report.coupling_annihilates.holds &&
                  report.commutator_proportional.holds && report.number_eigenrelation.holds &&
                  report.stability.holds;
  if (!report.passed) {
    report.params.reset();
  }
  return report;
}

SLHModel series_product(const SLHModel& g2, const SLHModel& g1, double tol) {
  if (g1.channels() != g2.channels()) {
    throw DimensionError("series_product: channel counts differ (" +
                         std::to_string(g2.channels()) + " vs " +
                         std::to_string(g1.channels()) + ")");
  }
  if (g1.levels() != g2.levels()) {
    throw DimensionError("series_product: Hilbert space dimensions differ; embed both models "
                         "on a common tensor space first");
  }
  const Index k = g1.channels();
  const Index n = g1.levels();
  const Matrix& s2 = g2.scattering();

  std::vector<Operator> l;
  l.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    Operator li = g2.couplings()[static_cast<std::size_t>(i)];
    for (Index j = 0; j < k; ++j) {
      if (s2(i, j) != Complex{}) {
        li = li + s2(i, j) * g1.couplings()[static_cast<std::size_t>(j)];
      }
    }
    l.push_back(std::move(li));
  }

  // L2^dag S2 L1 = sum_ij L2_i^dag S2_ij L1_j
  Operator cross = Operator::zero(n);
  for (Index i = 0; i < k; ++i) {
    const Operator l2_dag = g2.couplings()[static_cast<std::size_t>(i)].adjoint();
    for (Index j = 0; j < k; ++j) {
      cross = cross + s2(i, j) * (l2_dag * g1.couplings()[static_cast<std::size_t>(j)]);
    }
  }
  Operator h = g1.hamiltonian() + g2.hamiltonian() + operator_imag(cross);
  // Im{.} is Hermitian up to rounding; symmetrize so the invariant check is exact.
  h = Operator(0.5 * (h.matrix() + h.matrix().adjoint()));
  Matrix s = s2 * g1.scattering();

  std::vector<Operator> candidates;
  if (g2.factorized()) candidates.push_back(g2.coupling_operator());
  if (g1.factorized()) candidates.push_back(g1.coupling_operator());
  const Operator* largest = &l.front();
  for (const auto& li : l) {
    if (li.norm() > largest->norm()) largest = &li;
  }
  candidates.push_back(*largest);

  for (const auto& l0 : candidates) {
    if (auto theta = fit_factor(l, l0, tol)) {
      return SLHModel(std::move(s), std::move(*theta), l0, std::move(h));
    }
  }
  bool all_zero = true;
  for (const auto& li : l) all_zero = all_zero && li.norm() == 0.0;
  if (all_zero) {
    return SLHModel(std::move(s), Vector::Zero(k), Operator::zero(n), std::move(h));
  }
  return SLHModel::general(std::move(s), std::move(l), std::move(h));
}

FeedbackReduction feedback_reduction(const SLHModel& model) {
  if (model.channels() != 2) {
    throw DimensionError("feedback_reduce: requires exactly two channels, got " +
                         std::to_string(model.channels()));
  }
  const Matrix& s = model.scattering();
  const Vector& theta = model.theta();
  const Operator& l0 = model.coupling_operator();
  for (Index k = 0; k < 2; ++k) {
    if (theta(k).real() < 0.0) {
      throw ModelError("feedback_reduce: coupling weights must have nonnegative real part");
    }
  }

  const Complex one_minus_s22 = 1.0 - s(1, 1);
  if (std::abs(one_minus_s22) <= kSingularLoop) {
    throw SingularLoopError("feedback_reduce: loop is singular (|1 - S22| <= 1e-12)");
  }
  const Complex inv = 1.0 / one_minus_s22;
  const Complex loop_gain = s(0, 1) * inv;

  const Complex s_red = s(0, 0) + loop_gain * s(1, 0);
  const Complex c_red = theta(0) + loop_gain * theta(1);
  // Im{(L1^dag S12 + L2^dag S22)(1 - S22)^-1 L2} with L_k = c_k L0.
  const Complex shift =
      (std::conj(theta(0)) * s(0, 1) + std::conj(theta(1)) * s(1, 1)) * inv * theta(1);
  const double delta = shift.imag();

  const Operator number = l0.adjoint() * l0;
  Operator h = model.hamiltonian() + Complex(delta) * number;

  Matrix s1(1, 1);
  s1(0, 0) = s_red;
  Vector t1(1);
  t1(0) = c_red;
  return FeedbackReduction{SLHModel(std::move(s1), std::move(t1), l0, std::move(h)), loop_gain,
                           c_red, delta};
}

SLHModel feedback_reduce(const SLHModel& model) { return feedback_reduction(model).model; }

}  // namespace photon_slh
