#include "photon_slh/operator.hpp"

#include "photon_slh/errors.hpp"

#include <cmath>
#include <string>

namespace photon_slh {

namespace {

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionError("Operator: matrix must be square");
  }
  if (m_.rows() < 1) {
    throw DimensionError("Operator: dimension must be at least 1");
  }
  if (!m_.allFinite()) {
    throw std::invalid_argument("Operator: entries must be finite");
  }
}

Operator Operator::zero(Index dim) { return Operator(Matrix::Zero(dim, dim)); }

Operator Operator::identity(Index dim) { return Operator(Matrix::Identity(dim, dim)); }

bool Operator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).norm() <= tol;
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator+");
  return Operator(a.m_ + b.m_);
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator-");
  return Operator(a.m_ - b.m_);
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  return Operator(a.m_ * b.m_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.m_); }

Vector operator*(const Operator& a, const Vector& v) {
  if (a.dim() != v.size()) {
    throw DimensionError("operator*: vector length does not match operator dimension");
  }
  return a.m_ * v;
}

Operator sigma_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return Operator(m);
}

Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return Operator(m);
}

Operator sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return Operator(m);
}

Operator sigma_x() { return sigma_plus() + sigma_minus(); }

Vector basis_ket(Index dim, Index k) {
  if (k < 0 || k >= dim) {
    throw DimensionError("basis_ket: index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

EigenRelationReport vector_eigen_test(const Operator& a, const Vector& v, double tol) {
  if (a.dim() != v.size()) {
    throw DimensionError("vector_eigen_test: vector length does not match operator dimension");
  }
  EigenRelationReport report;
  const double vnorm2 = v.squaredNorm();
  if (vnorm2 == 0.0) {
    return report;
  }
  const Vector av = a.matrix() * v;
  const Complex lambda = v.dot(av) / vnorm2;
  report.eigenvalue = lambda;
  report.residual = (av - lambda * v).norm() / std::sqrt(vnorm2);
  report.holds = report.residual <= tol;
  return report;
}

EigenRelationReport row_proportionality_test(const Operator& a, const Operator& b,
                                             const RowVector& row, double tol) {
  require_same_dim(a, b, "row_proportionality_test");
  if (row.size() != a.dim()) {
    throw DimensionError("row_proportionality_test: covector length does not match dimension");
  }
  EigenRelationReport report;
  if (row.squaredNorm() == 0.0) {
    return report;
  }
  const RowVector x = row * a.matrix();
  const RowVector y = row * b.matrix();
  const double ynorm = y.norm();
  if (ynorm <= tol) {
    report.residual = x.norm();
    report.holds = report.residual <= tol;
    return report;
  }
  // Eigen's dot conjugates the first argument: y.dot(x) = sum conj(y_i) x_i.
  const Complex lambda = y.dot(x) / (ynorm * ynorm);
  report.eigenvalue = lambda;
  report.residual = (x - lambda * y).norm() / ynorm;
  report.holds = report.residual <= tol;
  return report;
}

Operator kron(const Operator& left, const Operator& right, Index cap) {
  const Index n = left.dim() * right.dim();
  if (n > cap) {
    throw TensorCapError("kron: total dimension " + std::to_string(n) +
                         " exceeds the tensor cap of " + std::to_string(cap));
  }
  const Matrix& l = left.matrix();
  const Matrix& r = right.matrix();
  Matrix out(n, n);
  for (Index i = 0; i < l.rows(); ++i) {
    for (Index j = 0; j < l.cols(); ++j) {
      out.block(i * r.rows(), j * r.cols(), r.rows(), r.cols()) = l(i, j) * r;
    }
  }
  return Operator(std::move(out));
}

Operator embed_site(const Operator& a, std::size_t site, std::size_t n_sites, Index cap) {
  if (site >= n_sites) {
    throw DimensionError("embed_site: site " + std::to_string(site) + " out of range for " +
                         std::to_string(n_sites) + " sites");
  }
  Index total = 1;
  for (std::size_t k = 0; k < n_sites; ++k) {
    total *= a.dim();
    if (total > cap) {
      throw TensorCapError("embed_site: total dimension exceeds the tensor cap of " +
                           std::to_string(cap));
    }
  }
  const Operator id = Operator::identity(a.dim());
  Operator out = site == 0 ? a : id;
  for (std::size_t k = 1; k < n_sites; ++k) {
    out = kron(out, k == site ? a : id, cap);
  }
  return out;
}

}  // namespace photon_slh
