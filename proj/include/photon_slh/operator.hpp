#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>

namespace photon_slh {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Default residual tolerance for eigen-relation checks.
inline constexpr double kDefaultTolerance = 1e-10;

// Largest total dimension embed_site/kron will build.
inline constexpr Index kDefaultTensorCap = 64;

// Square complex matrix acting on C^N. Entries are always finite.
class Operator {
 public:
  explicit Operator(Matrix m);

  static Operator zero(Index dim);
  static Operator identity(Index dim);

  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(Index row, Index col) const { return m_(row, col); }

  Operator adjoint() const { return Operator(m_.adjoint()); }

  // Frobenius norm.
  double norm() const { return m_.norm(); }

  bool is_hermitian(double tol = kDefaultTolerance) const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);
  friend Vector operator*(const Operator& a, const Vector& v);

 private:
  Matrix m_;
};

// Qubit operators with |0_s> (ground) as basis index 0:
// sigma_z = |1><1| - |0><0|, sigma_plus = |1><0|, sigma_minus = |0><1|.
Operator sigma_z();
Operator sigma_plus();
Operator sigma_minus();
Operator sigma_x();

Vector basis_ket(Index dim, Index k);
inline Vector ground_ket(Index dim) { return basis_ket(dim, 0); }
inline RowVector ground_bra(Index dim) { return basis_ket(dim, 0).transpose(); }

// [A, B] = AB - BA. Throws DimensionError on mismatch.
Operator commutator(const Operator& a, const Operator& b);

struct EigenRelationReport {
  bool holds = false;
  std::optional<Complex> eigenvalue;  // unset for degenerate (zero) test vectors
  double residual = 0.0;
};

// Tests A v = lambda v with lambda the Rayleigh quotient <v,Av>/<v,v>.
// residual = |Av - lambda v| / |v|.
EigenRelationReport vector_eigen_test(const Operator& a, const Vector& v,
                                      double tol = kDefaultTolerance);

// Tests row*A = lambda (row*B), lambda fitted by least squares. The residual
// is relative to |row*B|; when row*B vanishes the relation holds iff row*A
// vanishes too and lambda is left unset.
EigenRelationReport row_proportionality_test(const Operator& a, const Operator& b,
                                             const RowVector& row,
                                             double tol = kDefaultTolerance);

Operator kron(const Operator& left, const Operator& right,
              Index cap = kDefaultTensorCap);

// A acting on factor `site` of an n_sites-fold tensor power, identity elsewhere.
// Site 0 is the leftmost Kronecker factor.
Operator embed_site(const Operator& a, std::size_t site, std::size_t n_sites,
                    Index cap = kDefaultTensorCap);

}  // namespace photon_slh
