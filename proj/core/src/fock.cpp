#include "nonrecip/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "nonrecip/errors.hpp"

namespace nonrecip::fock {

HilbertSpace::HilbertSpace(std::vector<std::size_t> mode_dims) : dims_(std::move(mode_dims)) {
  if (dims_.empty()) {
    throw ValidationError("HilbertSpace needs at least one mode");
  }
  for (std::size_t d : dims_) {
    if (d < 2) {
      throw ValidationError("every mode dimension must be >= 2, got " + std::to_string(d));
    }
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t m = dims_.size(); m-- > 0;) {
    strides_[m] = total_;
    total_ *= dims_[m];
  }
}

std::size_t HilbertSpace::mode_dim(std::size_t mode) const {
  if (mode >= dims_.size()) {
    throw ValidationError("mode " + std::to_string(mode) + " out of range for " +
                          std::to_string(dims_.size()) + " modes");
  }
  return dims_[mode];
}

std::size_t HilbertSpace::level(std::size_t basis_index, std::size_t mode) const {
  return (basis_index / strides_.at(mode)) % dims_.at(mode);
}

HilbertSpace concat(const HilbertSpace& a, const HilbertSpace& b) {
  std::vector<std::size_t> dims = a.mode_dims();
  dims.insert(dims.end(), b.mode_dims().begin(), b.mode_dims().end());
  return HilbertSpace(std::move(dims));
}

namespace {

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
  if (!(a == b)) {
    throw ValidationError(std::string(what) + ": operands live on different Hilbert spaces");
  }
}

Matrix lowering_matrix(std::size_t dim) {
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t n = 1; n < dim; ++n) {
    a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

}  // namespace

Operator::Operator(HilbertSpace space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw ValidationError("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + ", space dimension is " + std::to_string(d));
  }
}

Operator Operator::identity(const HilbertSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return Operator(space, Matrix::Identity(d, d));
}

Operator Operator::zero(const HilbertSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return Operator(space, Matrix::Zero(d, d));
}

Operator Operator::dagger() const { return Operator(space_, matrix_.adjoint()); }

bool Operator::is_hermitian(double tol) const { return (matrix_ - matrix_.adjoint()).norm() <= tol; }

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_space(space_, rhs.space_, "operator sum");
  matrix_ += rhs.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_space(space_, rhs.space_, "operator difference");
  matrix_ -= rhs.matrix_;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  matrix_ *= scale;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_space(lhs.space_, rhs.space_, "operator product");
  return Operator(lhs.space_, lhs.matrix_ * rhs.matrix_);
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

double distance(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space(), "distance");
  return (a.matrix() - b.matrix()).norm();
}

Operator embed(const HilbertSpace& space, std::size_t mode, const Matrix& single_mode) {
  const std::size_t d = space.mode_dim(mode);
  if (single_mode.rows() != static_cast<Eigen::Index>(d) || single_mode.cols() != static_cast<Eigen::Index>(d)) {
    throw ValidationError("single-mode matrix does not match dimension of mode " + std::to_string(mode));
  }
  std::size_t left = 1;
  for (std::size_t m = 0; m < mode; ++m) left *= space.mode_dims()[m];
  const std::size_t right = space.dim() / (left * d);
  const Matrix id_left = Matrix::Identity(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(left));
  const Matrix id_right = Matrix::Identity(static_cast<Eigen::Index>(right), static_cast<Eigen::Index>(right));
  Matrix inner = Eigen::kroneckerProduct(single_mode, id_right);
  return Operator(space, Eigen::kroneckerProduct(id_left, inner));
}

Operator annihilation(const HilbertSpace& space, std::size_t mode) {
  return embed(space, mode, lowering_matrix(space.mode_dim(mode)));
}

Operator creation(const HilbertSpace& space, std::size_t mode) { return annihilation(space, mode).dagger(); }

Operator number(const HilbertSpace& space, std::size_t mode) {
  return creation(space, mode) * annihilation(space, mode);
}

Operator quadrature_x(const HilbertSpace& space, std::size_t mode) {
  const Operator a = annihilation(space, mode);
  return (a + a.dagger()) * Complex(1.0 / std::sqrt(2.0));
}

Operator quadrature_p(const HilbertSpace& space, std::size_t mode) {
  const Operator a = annihilation(space, mode);
  return (a - a.dagger()) * Complex(0.0, -1.0 / std::sqrt(2.0));
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(concat(a.space(), b.space()), Eigen::kroneckerProduct(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw ValidationError("density matrix does not match space dimension");
  }
  const double herm = (matrix_ - matrix_.adjoint()).norm();
  if (herm > kHermitianTol * std::max(1.0, matrix_.norm())) {
    throw ValidationError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ValidationError("density matrix trace is " + std::to_string(tr));
  }
  const double min_eig = min_eigenvalue();
  if (min_eig < -kEigenTol) {
    throw ValidationError("density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::from_ket(const HilbertSpace& space, const Vector& ket) {
  if (ket.size() != static_cast<Eigen::Index>(space.dim())) {
    throw ValidationError("ket does not match space dimension");
  }
  const double n = ket.norm();
  if (n == 0.0) throw ValidationError("zero ket");
  const Vector psi = ket / n;
  return DensityMatrix(space, hermitize_normalized(psi * psi.adjoint()));
}

DensityMatrix DensityMatrix::vacuum(const HilbertSpace& space) {
  Vector ket = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  ket(0) = 1.0;
  return from_ket(space, ket);
}

DensityMatrix DensityMatrix::fock_state(const HilbertSpace& space, std::span<const std::size_t> levels) {
  if (levels.size() != space.num_modes()) {
    throw ValidationError("fock_state needs one level per mode");
  }
  std::size_t index = 0;
  for (std::size_t m = 0; m < levels.size(); ++m) {
    if (levels[m] >= space.mode_dim(m)) throw ValidationError("Fock level beyond truncation");
    index = index * space.mode_dim(m) + levels[m];
  }
  Vector ket = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  ket(static_cast<Eigen::Index>(index)) = 1.0;
  return from_ket(space, ket);
}

DensityMatrix DensityMatrix::coherent(const HilbertSpace& space, std::span<const Complex> alphas) {
  if (alphas.size() != space.num_modes()) {
    throw ValidationError("coherent needs one amplitude per mode");
  }
  Vector ket = Vector::Ones(1);
  for (std::size_t m = 0; m < alphas.size(); ++m) {
    const std::size_t d = space.mode_dim(m);
    Vector single(static_cast<Eigen::Index>(d));
    Complex amp = std::exp(-0.5 * std::norm(alphas[m]));
    for (std::size_t n = 0; n < d; ++n) {
      single(static_cast<Eigen::Index>(n)) = amp;
      amp *= alphas[m] / std::sqrt(static_cast<double>(n + 1));
    }
    ket = Eigen::kroneckerProduct(ket, single).eval();
  }
  return from_ket(space, ket);
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return DensityMatrix(space, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(concat(a.space(), b.space()), Eigen::kroneckerProduct(a.matrix(), b.matrix()));
}

double DensityMatrix::trace() const { return matrix_.trace().real(); }

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::edge_population() const { return fock::edge_population(space_, matrix_); }

Complex expectation(const DensityMatrix& rho, const Operator& op) {
  if (!(rho.space() == op.space())) {
    throw ValidationError("expectation: state and operator live on different spaces");
  }
  // Tr(O rho) without forming the product.
  return (op.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

double edge_population(const HilbertSpace& space, const Matrix& rho) {
  double worst = 0.0;
  for (std::size_t m = 0; m < space.num_modes(); ++m) {
    const std::size_t top = space.mode_dim(m) - 1;
    double pop = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      if (space.level(i, m) == top) pop += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    worst = std::max(worst, pop);
  }
  return worst;
}

Matrix hermitize_normalized(const Matrix& rho) {
  Matrix h = 0.5 * (rho + rho.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw NumericalError("state has non-positive trace");
  return h / tr;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = 0.5 * ((a - b) + (a - b).adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace nonrecip::fock
