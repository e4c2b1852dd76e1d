#pragma once

// Dense operator algebra on truncated multimode Fock spaces.
//
// Tensor factors follow mode order: mode 0 is the leftmost Kronecker factor,
// so the basis index of |n_0, n_1, ..., n_{M-1}> is
// sum_m n_m * prod_{m' > m} dim_{m'}.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nonrecip::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<std::size_t> mode_dims);

  const std::vector<std::size_t>& mode_dims() const { return dims_; }
  std::size_t num_modes() const { return dims_.size(); }
  std::size_t mode_dim(std::size_t mode) const;
  std::size_t dim() const { return total_; }

  /// Fock level of `mode` in the product basis state `basis_index`.
  std::size_t level(std::size_t basis_index, std::size_t mode) const;

  bool operator==(const HilbertSpace&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Product space with the modes of `a` followed by the modes of `b`.
HilbertSpace concat(const HilbertSpace& a, const HilbertSpace& b);

class Operator {
 public:
  Operator(HilbertSpace space, Matrix matrix);

  static Operator identity(const HilbertSpace& space);
  static Operator zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

  Operator dagger() const;
  bool is_hermitian(double tol = 1e-12) const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Operator op, Complex scale) { return op *= scale; }
  friend Operator operator*(Complex scale, Operator op) { return op *= scale; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Operator operator-(Operator op) { return op *= -1.0; }

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Frobenius norm of a - b.
double distance(const Operator& a, const Operator& b);

/// Lowering operator of `mode`, tensored with identities on all other modes.
Operator annihilation(const HilbertSpace& space, std::size_t mode);
Operator creation(const HilbertSpace& space, std::size_t mode);
Operator number(const HilbertSpace& space, std::size_t mode);
/// X = (a + a^dag)/sqrt(2).
Operator quadrature_x(const HilbertSpace& space, std::size_t mode);
/// P = -i (a - a^dag)/sqrt(2); [X, P] = i away from the truncation edge.
Operator quadrature_p(const HilbertSpace& space, std::size_t mode);

/// Places a single-mode matrix on `mode` of `space`.
Operator embed(const HilbertSpace& space, std::size_t mode, const Matrix& single_mode);

/// Kronecker product; the result lives on concat(a.space(), b.space()).
Operator tensor(const Operator& a, const Operator& b);

class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-10;

  /// Validates Hermiticity, unit trace and positivity.
  DensityMatrix(HilbertSpace space, Matrix matrix);

  static DensityMatrix from_ket(const HilbertSpace& space, const Vector& ket);
  static DensityMatrix vacuum(const HilbertSpace& space);
  static DensityMatrix fock_state(const HilbertSpace& space, std::span<const std::size_t> levels);
  /// Product of single-mode coherent states, one amplitude per mode.
  static DensityMatrix coherent(const HilbertSpace& space, std::span<const Complex> alphas);
  static DensityMatrix maximally_mixed(const HilbertSpace& space);
  static DensityMatrix product(const DensityMatrix& a, const DensityMatrix& b);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

  double trace() const;
  double purity() const;
  double min_eigenvalue() const;
  /// Largest population of the highest Fock level over all modes.
  double edge_population() const;

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

/// Tr(O rho).
Complex expectation(const DensityMatrix& rho, const Operator& op);

/// Largest highest-level population of `rho` over the modes of `space`;
/// works on unvalidated matrices during integration.
double edge_population(const HilbertSpace& space, const Matrix& rho);

/// Projects onto the Hermitian part and rescales to unit trace.
Matrix hermitize_normalized(const Matrix& rho);

/// Trace distance 0.5 * ||a - b||_1.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace nonrecip::fock
