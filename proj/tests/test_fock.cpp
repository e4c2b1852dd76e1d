#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "nonrecip/errors.hpp"
#include "nonrecip/fock.hpp"

using namespace nonrecip;
using namespace nonrecip::fock;

namespace {

Matrix random_matrix(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = {n(rng), n(rng)};
  return m;
}

}  // namespace

TEST(HilbertSpace, DimIsProductOfModeDims) {
  HilbertSpace s({2, 3, 4});
  EXPECT_EQ(s.dim(), 24u);
  EXPECT_EQ(s.num_modes(), 3u);
  EXPECT_EQ(s.level(23, 0), 1u);
  EXPECT_EQ(s.level(23, 1), 2u);
  EXPECT_EQ(s.level(23, 2), 3u);
}

TEST(HilbertSpace, RejectsTinyModes) {
  EXPECT_THROW(HilbertSpace({1}), ValidationError);
  EXPECT_THROW(HilbertSpace({}), ValidationError);
  EXPECT_THROW(HilbertSpace({3}).mode_dim(1), ValidationError);
}

TEST(Annihilation, MatrixElementsDim3) {
  HilbertSpace s({3});
  const Matrix& a = annihilation(s, 0).matrix();
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 1) = 1.0;
  expected(1, 2) = std::sqrt(2.0);
  EXPECT_LT((a - expected).norm(), 1e-15);
}

TEST(Annihilation, CommutatorIsIdentityBelowEdge) {
  HilbertSpace s({5});
  const Matrix c = commutator(annihilation(s, 0), creation(s, 0)).matrix();
  EXPECT_LT((c.topLeftCorner(4, 4) - Matrix::Identity(4, 4)).norm(), 1e-14);
  EXPECT_NEAR(c(4, 4).real(), -4.0, 1e-14);
}

TEST(Annihilation, ModeOutOfRangeThrows) {
  HilbertSpace s({3, 3});
  EXPECT_THROW(annihilation(s, 2), ValidationError);
}

TEST(Quadratures, VacuumVarianceIsHalf) {
  HilbertSpace s({6});
  const Operator x = quadrature_x(s, 0);
  const auto vac = DensityMatrix::vacuum(s);
  EXPECT_NEAR(expectation(vac, x * x).real(), 0.5, 1e-15);
  const Operator p = quadrature_p(s, 0);
  EXPECT_NEAR(expectation(vac, p * p).real(), 0.5, 1e-15);
}

TEST(Quadratures, CanonicalCommutatorAwayFromEdge) {
  HilbertSpace s({6});
  const Matrix c = commutator(quadrature_x(s, 0), quadrature_p(s, 0)).matrix();
  EXPECT_LT((c.topLeftCorner(5, 5) - Complex(0, 1) * Matrix::Identity(5, 5)).norm(), 1e-14);
}

TEST(Operator, DistinctModesCommute) {
  HilbertSpace s({3, 4});
  EXPECT_LT(commutator(annihilation(s, 0), creation(s, 1)).matrix().norm(), 1e-15);
  EXPECT_LT(commutator(quadrature_x(s, 0), quadrature_p(s, 1)).matrix().norm(), 1e-15);
}

TEST(Operator, DaggerOfQuadratureCombination) {
  HilbertSpace s({3, 3});
  const double eta = 0.7;
  const Operator x1 = quadrature_x(s, 0), x2 = quadrature_x(s, 1);
  const Operator lhs = (x1 - x2 * Complex(0, eta)).dagger();
  EXPECT_LT(distance(lhs, x1 + x2 * Complex(0, eta)), 1e-15);
}

TEST(Operator, DaggerIsInvolution) {
  std::mt19937_64 rng(3);
  HilbertSpace s({2, 3});
  const Operator o(s, random_matrix(6, rng));
  EXPECT_EQ((o.dagger().dagger().matrix() - o.matrix()).norm(), 0.0);
}

TEST(Operator, AlgebraIsAssociativeAndDistributive) {
  std::mt19937_64 rng(11);
  for (std::size_t d : {2u, 4u, 6u}) {
    HilbertSpace s({d});
    const auto n = static_cast<Eigen::Index>(d);
    const Operator a(s, random_matrix(n, rng)), b(s, random_matrix(n, rng)), c(s, random_matrix(n, rng));
    EXPECT_LT(distance((a * b) * c, a * (b * c)), 1e-12);
    EXPECT_LT(distance(a * (b + c), a * b + a * c), 1e-12);
    EXPECT_LT(distance((a + b) * Complex(2.0, -1.0), a * Complex(2.0, -1.0) + b * Complex(2.0, -1.0)), 1e-12);
  }
}

TEST(Operator, MismatchedSpacesThrow) {
  const Operator a = annihilation(HilbertSpace({3}), 0);
  const Operator b = annihilation(HilbertSpace({4}), 0);
  EXPECT_THROW(a + b, ValidationError);
  EXPECT_THROW(a * b, ValidationError);
}

TEST(Embed, ModeZeroIsLeftmostFactor) {
  HilbertSpace s({3, 2});
  const Matrix a3 = annihilation(HilbertSpace({3}), 0).matrix();
  const Matrix expected = Eigen::kroneckerProduct(a3, Matrix::Identity(2, 2)).eval();
  EXPECT_LT((annihilation(s, 0).matrix() - expected).norm(), 1e-15);
}

TEST(Tensor, ConcatenatesSpaces) {
  const Operator a = number(HilbertSpace({3}), 0);
  const Operator b = quadrature_x(HilbertSpace({2}), 0);
  const Operator t = tensor(a, b);
  HilbertSpace s({3, 2});
  EXPECT_EQ(t.space(), s);
  EXPECT_LT(distance(t, number(s, 0) * quadrature_x(s, 1)), 1e-15);
}

TEST(Expectation, VacuumNumberIsZero) {
  HilbertSpace s({4, 4});
  EXPECT_EQ(std::abs(expectation(DensityMatrix::vacuum(s), number(s, 1))), 0.0);
}

TEST(Expectation, CoherentStateQuadrature) {
  HilbertSpace s({12});
  const Complex alpha{0.5, 0.0};
  const auto rho = DensityMatrix::coherent(s, std::span<const Complex>(&alpha, 1));
  EXPECT_NEAR(expectation(rho, quadrature_x(s, 0)).real(), std::sqrt(2.0) * alpha.real(), 1e-6);
  EXPECT_NEAR(expectation(rho, number(s, 0)).real(), std::norm(alpha), 1e-6);
}

TEST(Expectation, MaximallyMixedTracelessIsZero) {
  HilbertSpace s({2});
  const auto rho = DensityMatrix::maximally_mixed(s);
  Matrix z(2, 2);
  z << 1.0, Complex(0.3, 0.1), Complex(0.3, -0.1), -1.0;
  EXPECT_LT(std::abs(expectation(rho, Operator(s, z))), 1e-15);
}

TEST(Expectation, HermitianGivesRealValue) {
  HilbertSpace s({5});
  const Complex alpha{0.3, -0.4};
  const auto rho = DensityMatrix::coherent(s, std::span<const Complex>(&alpha, 1));
  EXPECT_LT(std::abs(expectation(rho, quadrature_p(s, 0)).imag()), 1e-12);
}

TEST(DensityMatrix, ValidationRejectsBadMatrices) {
  HilbertSpace s({2});
  Matrix m(2, 2);
  m << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(DensityMatrix(s, m), ValidationError);
  m << 0.6, 0.0, 0.0, 0.6;
  EXPECT_THROW(DensityMatrix(s, m), ValidationError);
  m << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(DensityMatrix(s, m), ValidationError);
}

TEST(DensityMatrix, FockStateAndEdgePopulation) {
  HilbertSpace s({3, 3});
  const std::array<std::size_t, 2> levels{2, 0};
  const auto rho = DensityMatrix::fock_state(s, levels);
  EXPECT_NEAR(expectation(rho, number(s, 0)).real(), 2.0, 1e-15);
  EXPECT_NEAR(rho.edge_population(), 1.0, 1e-15);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
}

TEST(DensityMatrix, ProductMatchesTensor) {
  HilbertSpace a({2}), b({3});
  const auto rho = DensityMatrix::product(DensityMatrix::maximally_mixed(a), DensityMatrix::vacuum(b));
  EXPECT_EQ(rho.space(), HilbertSpace({2, 3}));
  EXPECT_NEAR(rho.purity(), 0.5, 1e-15);
}

TEST(TraceDistance, OrthogonalPureStatesAreOne) {
  HilbertSpace s({3});
  const std::array<std::size_t, 1> zero{0}, one{1};
  EXPECT_NEAR(trace_distance(DensityMatrix::fock_state(s, zero).matrix(), DensityMatrix::fock_state(s, one).matrix()),
              1.0, 1e-14);
}
