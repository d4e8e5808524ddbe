#pragma once

#include "photon_slh/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace photon_slh {

// Open quantum system (S, L, H0) with K field channels and an N-level plant.
//
// The usual representation is factorized, L = theta^T L0: every channel couples
// through the same operator L0 with a complex weight theta_k. Network
// composition can destroy that structure, so a model may instead carry a
// general list of K coupling operators. Only factorized models can be checked
// for the single-photon linearity conditions.
class SLHModel {
 public:
  // Factorized model. Throws ModelError if S is not unitary, H0 is not
  // Hermitian, or the dimensions disagree.
  SLHModel(Matrix scattering, Vector theta, Operator coupling, Operator hamiltonian);

  // General model with one coupling operator per channel.
  static SLHModel general(Matrix scattering, std::vector<Operator> couplings,
                          Operator hamiltonian);

  // (I, 0, 0): passes any single-photon input through unchanged.
  static SLHModel identity(Index levels, Index channels);

  Index levels() const noexcept { return hamiltonian_.dim(); }
  Index channels() const noexcept { return scattering_.rows(); }

  const Matrix& scattering() const noexcept { return scattering_; }
  const Operator& hamiltonian() const noexcept { return hamiltonian_; }

  bool factorized() const noexcept { return factor_.has_value(); }

  // Factor accessors; throw NotFactorizedError on a general model.
  const Vector& theta() const;
  const Operator& coupling_operator() const;

  // Per-channel coupling operators L_k (c_k L0 for factorized models).
  const std::vector<Operator>& couplings() const noexcept { return couplings_; }

 private:
  struct Factor {
    Vector theta;
    Operator l0;
  };

  SLHModel(Matrix scattering, std::optional<Factor> factor, std::vector<Operator> couplings,
           Operator hamiltonian);

  void check_invariants() const;

  Matrix scattering_;
  std::optional<Factor> factor_;
  std::vector<Operator> couplings_;
  Operator hamiltonian_;
};

// alpha: H0|0s> = alpha|0s>; beta: <0s|[L0,H0] = beta <0s|L0;
// h: [L0^dag,L0]|0s> = h|0s>; a = -i beta + (1/2) sum_k |c_k|^2 h.
struct DerivedParams {
  Complex alpha;
  Complex beta;
  double h = 0.0;
  Complex a;
  double coupling_weight = 0.0;  // sum_k |c_k|^2
};

struct ConditionReport {
  std::string name;
  bool holds = false;
  double residual = 0.0;
  std::optional<Complex> value;
  std::string message;
};

struct ValidationReport {
  bool passed = false;
  ConditionReport ground_energy;
  ConditionReport coupling_annihilates;
  ConditionReport commutator_proportional;
  ConditionReport number_eigenrelation;
  ConditionReport stability;
  std::optional<DerivedParams> params;

  // The five conditions in check order.
  std::vector<const ConditionReport*> conditions() const;
  // Name of the first failed condition, empty when passed.
  std::string first_failure() const;
};

// Checks the ground-state and commutator conditions under which the model maps
// single-photon inputs linearly to single-photon outputs, and extracts
// (alpha, beta, h, a). Failures are reported, never thrown. Stability requires
// Re(a) < -stability_margin (strict at the default 0).
ValidationReport validate_linear_response(const SLHModel& model, double tol = kDefaultTolerance,
                                          double stability_margin = 0.0);

// Series product g2 <| g1 (output of g1 feeds g2):
// (S2 S1, L2 + S2 L1, H1 + H2 + Im{L2^dag S2 L1}), Im{X} = (X - X^dag)/2i.
// Both models must live on the same Hilbert space; use embed_site/kron first
// for independent subsystems. The result is factorized whenever every
// composed L_k is proportional to a common operator.
SLHModel series_product(const SLHModel& g2, const SLHModel& g1,
                        double tol = kDefaultTolerance);

struct FeedbackReduction {
  SLHModel model;
  Complex loop_gain;   // S12 (1 - S22)^-1
  Complex theta;       // reduced coupling weight
  double detuning = 0.0;  // Hamiltonian shift Delta along L0^dag L0
};

// Feeds output channel 2 of a two-channel factorized model back into input 2.
// Throws DimensionError unless K == 2 and SingularLoopError when |1 - S22| is
// below 1e-12.
FeedbackReduction feedback_reduction(const SLHModel& model);
SLHModel feedback_reduce(const SLHModel& model);

}  // namespace photon_slh
