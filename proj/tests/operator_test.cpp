#include "support.hpp"

#include <random>

namespace photon_slh {
namespace {

using testing::max_abs_diff;

TEST(Operator, RejectsNonSquareAndEmpty) {
  EXPECT_THROW(Operator(Matrix::Zero(2, 3)), DimensionError);
  EXPECT_THROW(Operator(Matrix(0, 0)), DimensionError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(Operator{bad}, std::invalid_argument);
}

TEST(Operator, MismatchedArithmeticThrows) {
  EXPECT_THROW(sigma_z() + Operator::identity(3), DimensionError);
  EXPECT_THROW(sigma_z() * Operator::identity(3), DimensionError);
  EXPECT_THROW(commutator(sigma_z(), Operator::identity(3)), DimensionError);
}

TEST(Operator, QubitConventions) {
  // ground state is index 0, sigma_z|0> = -|0>
  EXPECT_EQ(sigma_z()(0, 0), Complex(-1.0));
  EXPECT_EQ((sigma_plus() * ground_ket(2)), basis_ket(2, 1));
  EXPECT_EQ((sigma_minus() * basis_ket(2, 1)), ground_ket(2));
  EXPECT_LT(max_abs_diff((sigma_plus() + sigma_minus()).matrix(), sigma_x().matrix()), 1e-15);
}

TEST(Commutator, RaisingLowering) {
  const Operator c = commutator(sigma_plus(), sigma_minus());
  EXPECT_LT(max_abs_diff(c.matrix(), sigma_z().matrix()), 1e-15);
  EXPECT_LT(((c * ground_ket(2)) + ground_ket(2)).norm(), 1e-15);
}

TEST(Commutator, SelfIsZero) {
  const Operator a = sigma_x() + 0.3 * sigma_z();
  EXPECT_EQ(commutator(a, a).norm(), 0.0);
}

TEST(Commutator, LoweringWithZ) {
  const Operator c = commutator(sigma_minus(), sigma_z());
  EXPECT_LT(max_abs_diff(c.matrix(), (2.0 * sigma_minus()).matrix()), 1e-15);
}

TEST(Commutator, AntisymmetricOnRandomMatrices) {
  auto gen = testing::rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + static_cast<Index>(gen() % 6);
    std::normal_distribution<double> d;
    Matrix a(n, n), b(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        a(i, j) = Complex(d(gen), d(gen));
        b(i, j) = Complex(d(gen), d(gen));
      }
    }
    const Operator A(a), B(b);
    EXPECT_LT(max_abs_diff(commutator(A, B).matrix(), -commutator(B, A).matrix()), 1e-14);
  }
}

TEST(VectorEigenTest, GroundEnergy) {
  const double wc = 1.7;
  const auto r = vector_eigen_test((0.5 * wc) * sigma_z(), ground_ket(2));
  EXPECT_TRUE(r.holds);
  ASSERT_TRUE(r.eigenvalue);
  EXPECT_NEAR(std::abs(*r.eigenvalue - Complex(-wc / 2)), 0.0, 1e-15);
}

TEST(VectorEigenTest, Identity) {
  Vector v(3);
  v << Complex(1, 2), 0.5, Complex(0, -1);
  const auto r = vector_eigen_test(Operator::identity(3), v);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(*r.eigenvalue, Complex(1.0));
  EXPECT_EQ(r.residual, 0.0);
}

TEST(VectorEigenTest, RaisingFails) {
  const auto r = vector_eigen_test(sigma_plus(), ground_ket(2));
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(r.residual, 1.0, 1e-15);
}

TEST(VectorEigenTest, SpectralSynthesisRecoversEigenvalues) {
  // A = U diag(l) U^dag with a random unitary U: each column of U is an eigenvector.
  auto gen = testing::rng(2);
  std::normal_distribution<double> d;
  const Index n = 5;
  Matrix z(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) z(i, j) = Complex(d(gen), d(gen));
  const Matrix u = Eigen::HouseholderQR<Matrix>(z).householderQ();
  Vector l(n);
  for (Index i = 0; i < n; ++i) l(i) = Complex(d(gen), d(gen));
  const Operator a(u * l.asDiagonal() * u.adjoint());
  for (Index k = 0; k < n; ++k) {
    const auto r = vector_eigen_test(a, u.col(k));
    EXPECT_TRUE(r.holds) << r.residual;
    EXPECT_LT(std::abs(*r.eigenvalue - l(k)), 1e-12);
  }
  // A sum of two eigenvectors with distinct eigenvalues is not one.
  EXPECT_FALSE(vector_eigen_test(a, u.col(0) + u.col(1)).holds);
}

TEST(RowProportionality, CommutatorWithHamiltonian) {
  const double wc = 2.3;
  const Operator lhs = commutator(sigma_minus(), (0.5 * wc) * sigma_z());
  const auto r = row_proportionality_test(lhs, sigma_minus(), ground_bra(2));
  EXPECT_TRUE(r.holds);
  EXPECT_LT(std::abs(*r.eigenvalue - Complex(wc)), 1e-15);
}

TEST(RowProportionality, ZeroLhs) {
  const auto r = row_proportionality_test(Operator::zero(2), sigma_minus(), ground_bra(2));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(*r.eigenvalue, Complex(0.0));
}

TEST(RowProportionality, NotProportional) {
  EXPECT_FALSE(row_proportionality_test(sigma_z(), sigma_minus(), ground_bra(2)).holds);
}

TEST(Embed, SingleSiteIsIdentityMap) {
  EXPECT_EQ(embed_site(sigma_z(), 0, 1).matrix(), sigma_z().matrix());
}

TEST(Embed, SecondSite) {
  const Operator e = embed_site(sigma_minus(), 1, 2);
  EXPECT_EQ(e.matrix(), kron(Operator::identity(2), sigma_minus()).matrix());
  EXPECT_EQ(e.dim(), 4);
}

TEST(Embed, ExchangeMovesExcitation) {
  // |a,b> = basis index 2a + b, site 0 leftmost
  const Vector v01 = basis_ket(4, 1);
  const Vector out = embed_site(sigma_plus(), 0, 2) * (embed_site(sigma_minus(), 1, 2) * v01);
  EXPECT_EQ(out, basis_ket(4, 2));
}

TEST(Embed, DistinctSitesCommute) {
  const std::vector<Operator> ops{sigma_minus(), sigma_plus(), sigma_z(), sigma_x()};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (const auto& a : ops) {
        for (const auto& b : ops) {
          EXPECT_EQ(commutator(embed_site(a, i, 3), embed_site(b, j, 3)).norm(), 0.0);
        }
      }
    }
  }
}

TEST(Embed, TensorCap) {
  EXPECT_THROW(embed_site(sigma_z(), 0, 7), TensorCapError);
  EXPECT_NO_THROW(embed_site(sigma_z(), 0, 6));
  EXPECT_THROW(embed_site(sigma_z(), 2, 2), DimensionError);
  EXPECT_THROW(kron(Operator::identity(8), Operator::identity(9)), TensorCapError);
}

}  // namespace
}  // namespace photon_slh
