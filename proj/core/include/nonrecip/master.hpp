#pragma once

// Lindblad generators, their column-stacked superoperator matrices, RK4
// integration and steady states.
//
// Vectorization: vec(rho) stacks columns, so vec(L rho R) = (R^T kron L) vec(rho).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nonrecip/fock.hpp"

namespace nonrecip::master {

using fock::Complex;
using fock::DensityMatrix;
using fock::HilbertSpace;
using fock::Matrix;
using fock::Operator;
using Superoperator = Eigen::MatrixXcd;

struct JumpTerm {
  double rate = 0.0;
  Operator op;
};

/// d rho/dt = -i[H, rho] + sum_j rate_j L[o_j] rho.
class LindbladModel {
 public:
  /// Throws ValidationError on non-Hermitian H, negative rates or mixed spaces.
  LindbladModel(Operator hamiltonian, std::vector<JumpTerm> jumps);

  const HilbertSpace& space() const { return hamiltonian_.space(); }
  const Operator& hamiltonian() const { return hamiltonian_; }
  const std::vector<JumpTerm>& jumps() const { return jumps_; }

 private:
  Operator hamiltonian_;
  std::vector<JumpTerm> jumps_;
};

/// coeff * left * rho * right.
struct SandwichTerm {
  Complex coeff;
  Matrix left;
  Matrix right;
};

/// A Lindblad part plus optional explicit sandwich terms. Generators that are
/// only Lindblad after rewriting (the feedback master equation) keep their
/// printed structure this way.
class Generator {
 public:
  Generator(const LindbladModel& model);  // NOLINT(google-explicit-constructor)
  Generator(LindbladModel model, std::vector<SandwichTerm> extra);

  const HilbertSpace& space() const { return model_.space(); }
  const LindbladModel& lindblad_part() const { return model_; }
  const std::vector<SandwichTerm>& extra() const { return extra_; }

  /// d rho/dt for an arbitrary (not necessarily physical) matrix.
  Matrix apply(const Matrix& rho) const;

  /// Upper bound on the magnitude of the individual generator pieces; used to
  /// pick integration steps.
  double rate_bound() const;

 private:
  void prepare();

  LindbladModel model_;
  std::vector<SandwichTerm> extra_;
  Matrix h_eff_;
  std::vector<Matrix> scaled_jumps_;
  double rate_bound_ = 0.0;
};

Superoperator liouvillian_matrix(const Generator& gen);
/// L[o] alone, unit rate.
Superoperator dissipator_matrix(const Operator& op);
/// Matrix of rho -> left * rho * right.
Superoperator sandwich_matrix(const Matrix& left, const Matrix& right);

struct RecipeParams {
  double lam = 0.0;
  double Gamma = 0.0;
  double eta = 0.0;
  double phi = 0.0;

  /// Gamma * eta == lam and phi == +-pi/2.
  bool directional(double tol = 1e-12) const;
  void validate() const;
};

struct FeedforwardParams {
  double k = 0.0;
  double alpha_ff = 0.0;
  double tau = 0.0;

  void validate() const;
};

/// H = (lam/2)(AB + h.c.), jump Gamma * L[A + e^{i phi} eta B^dag].
LindbladModel build_directional_model(const Operator& A, const Operator& B, const RecipeParams& p);
/// Same Hamiltonian, jump A^dag - e^{-i phi} eta B.
LindbladModel build_alternate_model(const Operator& A, const Operator& B, const RecipeParams& p);
/// (k/4) L[A] + alpha L[B] - i (sqrt(k alpha)/2) [B, A rho + rho A].
Generator build_feedforward_model(const Operator& A, const Operator& B, const FeedforwardParams& p);
/// The same generator written as sqrt(k/4) A - i sqrt(alpha) B with
/// H = (sqrt(k alpha)/4)(AB + BA).
LindbladModel feedforward_lindblad_form(const Operator& A, const Operator& B, const FeedforwardParams& p);

/// k = 4 Gamma, alpha = eta^2 Gamma, tau = 0.
FeedforwardParams ff_param_map(double Gamma, double eta);
/// Inverse map onto the balanced recipe with phi = -pi/2.
RecipeParams recipe_from_feedforward(const FeedforwardParams& p);

/// 0.01 / rate_bound, the default fixed RK4 step.
double default_time_step(const Generator& gen);

struct Evolution {
  std::vector<double> times;
  std::vector<Matrix> states;
  /// Largest top-Fock-level population seen at any step.
  double max_edge_population = 0.0;
};

/// Fixed-step RK4. The step is shrunk so that it divides t exactly; states are
/// stored every `sample_every` steps plus t = 0 and the final time.
Evolution evolve_sampled(const Generator& gen, const DensityMatrix& rho0, double t, double dt,
                         std::size_t sample_every);
DensityMatrix evolve(const Generator& gen, const DensityMatrix& rho0, double t, double dt);
/// exp(L t) vec(rho0) through a dense matrix exponential.
DensityMatrix evolve_exact(const Generator& gen, const DensityMatrix& rho0, double t);

/// Unique trace-one null vector of the Liouvillian.
DensityMatrix steady_state(const Generator& gen);

enum class Side { A, B };

struct Bipartition {
  std::vector<std::size_t> a_modes;
  bool contains_a(std::size_t mode) const;
};

struct DirectionalityOptions {
  double t_final = 2.0;
  std::size_t samples = 20;
  double dt = 0.0;  // 0 selects default_time_step
  std::size_t pairs = 2;
  std::uint64_t seed = 7;
};

struct DirectionalityReport {
  Side side = Side::A;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  double max_edge_population = 0.0;
  bool passed = false;
};

/// Evolves pairs of product states that agree on `side` and differ on the other
/// side; side-probe expectations must agree within `tol` at every sample.
DirectionalityReport check_directionality(const Generator& gen, const Bipartition& partition, Side side,
                                          const std::vector<Operator>& probes, double tol,
                                          const DirectionalityOptions& opts = {});

}  // namespace nonrecip::master
