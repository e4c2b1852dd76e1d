#pragma once

// Continuous homodyne measurement of A with optional feed-forward onto B.
//
// Record: dI = sqrt(k) <A> dt + dW. Conditional update (Ito):
//   d rho = (k/4) L[A] rho dt + (sqrt(k)/2)(A rho + rho A - 2 <A> rho) dW.
// Feed-forward: H_FF = sqrt(alpha) I(t - tau) B, applied as the unitary kick
// exp(-i sqrt(alpha) dI B) after the measurement update of the same step.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "nonrecip/fock.hpp"
#include "nonrecip/master.hpp"

namespace nonrecip::trajectories {

using fock::DensityMatrix;
using fock::Matrix;
using fock::Operator;

enum class Scheme {
  /// Gaussian Kraus step exp((sqrt(k)/2) A dI - (k/4) A^2 dt) with the record
  /// increment drawn from its exact distribution. Positive by construction and
  /// unbiased in the ensemble mean for any dt.
  kraus,
  /// Plain Euler-Maruyama step of the Ito equation, renormalized every step.
  euler_maruyama,
};

struct MeasurementRecord {
  double dt = 0.0;
  /// dI per step.
  std::vector<double> samples;
  /// dI - sqrt(k) <A> dt per step, with <A> taken before the step.
  std::vector<double> noise;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  double total_time() const { return dt * static_cast<double>(samples.size()); }
};

struct TrajectoryResult {
  std::vector<double> times;
  std::vector<Matrix> conditional_states;
  MeasurementRecord record;
  /// Smallest eigenvalue seen at the positivity checks.
  double min_eigenvalue = 0.0;
};

struct TrajectoryOptions {
  double t = 1.0;
  double dt = 1e-3;
  /// Store a state every this many steps (plus t = 0 and the final time).
  std::size_t sample_every = 1;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  Scheme scheme = Scheme::kraus;
};

/// Negative eigenvalues below this abort a trajectory.
inline constexpr double kPositivityFloor = -1e-6;

/// Independent generator for trajectory `index` of the ensemble keyed by `seed`.
std::mt19937_64 trajectory_stream(std::uint64_t seed, std::uint64_t index);

/// Measurement of A at rate k on top of the free dynamics `model_free`.
TrajectoryResult simulate_conditional(const master::LindbladModel& model_free, const Operator& A, double k,
                                      const DensityMatrix& rho0, const TrajectoryOptions& opts);

/// Measurement of A plus feed-forward onto B. delay_steps = 1 kicks with the
/// increment recorded in the same step; larger values use the increment from
/// delay_steps - 1 steps earlier (no kick before it exists).
/// The Kraus scheme needs [A, B] = 0.
TrajectoryResult simulate_feedforward(const Operator& A, const Operator& B, const master::FeedforwardParams& p,
                                      const DensityMatrix& rho0, std::size_t delay_steps,
                                      const TrajectoryOptions& opts);

/// Mean of the conditional states, sample by sample.
std::vector<Matrix> ensemble_average(const std::vector<TrajectoryResult>& results);

struct EnsembleSummary {
  std::size_t trajectories = 0;
  std::vector<double> times;
  std::vector<Matrix> mean_states;
  /// Per-step mean and variance of dI / dt across the ensemble.
  std::vector<double> record_rate_mean;
  std::vector<double> record_rate_variance;
  /// Per-step mean and variance of the innovation dW.
  std::vector<double> noise_mean;
  std::vector<double> noise_variance;
  double min_eigenvalue = 0.0;
};

/// Runs trajectories 0..count-1 (stream index = trajectory index) without
/// storing them; parallel over fixed chunks and reduced in chunk order.
EnsembleSummary conditional_ensemble(const master::LindbladModel& model_free, const Operator& A, double k,
                                     const DensityMatrix& rho0, const TrajectoryOptions& opts, std::size_t count,
                                     std::size_t workers = 0);
EnsembleSummary feedforward_ensemble(const Operator& A, const Operator& B, const master::FeedforwardParams& p,
                                     const DensityMatrix& rho0, std::size_t delay_steps,
                                     const TrajectoryOptions& opts, std::size_t count, std::size_t workers = 0);

}  // namespace nonrecip::trajectories
