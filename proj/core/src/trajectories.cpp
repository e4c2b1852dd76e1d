#include "nonrecip/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "nonrecip/errors.hpp"
#include "nonrecip/parallel.hpp"

namespace nonrecip::trajectories {

using fock::Complex;
using fock::Vector;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr std::size_t kChunk = 32;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Everything a trajectory needs, expressed in the working basis where A (and B
// for feed-forward) is diagonal.
struct Plan {
  fock::HilbertSpace space{{2}};
  Matrix V;  // working basis vectors as columns
  Eigen::VectorXd a;
  Eigen::VectorXd b;  // empty without feed-forward
  double sqrt_k = 0.0;
  double k = 0.0;
  double sqrt_alpha = 0.0;
  std::size_t delay = 1;
  std::optional<master::Generator> free_gen;  // working basis
  Matrix free_prop;                           // exp(L_free h), working basis, column-stacked
  std::size_t steps = 0;
  double h = 0.0;
  std::size_t sample_every = 1;
  Scheme scheme = Scheme::kraus;
  Matrix rho0;  // working basis
  bool pure = false;
  Vector psi0;  // working basis, valid when pure
};

std::vector<std::size_t> sample_steps(const Plan& plan) {
  std::vector<std::size_t> out{0};
  for (std::size_t n = 1; n <= plan.steps; ++n) {
    if (n == plan.steps || n % plan.sample_every == 0) out.push_back(n);
  }
  return out;
}

void check_options(const TrajectoryOptions& opts, double k) {
  if (!(opts.t > 0.0) || !std::isfinite(opts.t)) throw ValidationError("trajectory time must be > 0");
  if (!(opts.dt > 0.0)) throw ValidationError("trajectory step must be > 0");
  if (!(k >= 0.0) || !std::isfinite(k)) throw ValidationError("measurement rate k must be >= 0");
  if (k > 0.0 && opts.dt > (0.01 / k) * (1.0 + 1e-12)) {
    throw ValidationError("time step " + std::to_string(opts.dt) + " exceeds 0.01/k = " + std::to_string(0.01 / k));
  }
  if (opts.sample_every == 0) throw ValidationError("sample_every must be >= 1");
}

void fill_common(Plan& plan, const DensityMatrix& rho0, const TrajectoryOptions& opts) {
  plan.steps = static_cast<std::size_t>(std::ceil(opts.t / opts.dt - 1e-9));
  plan.h = opts.t / static_cast<double>(plan.steps);
  plan.sample_every = opts.sample_every;
  plan.scheme = opts.scheme;
  plan.rho0 = plan.V.adjoint() * rho0.matrix() * plan.V;
  if (!plan.free_gen && plan.scheme == Scheme::kraus && rho0.purity() > 1.0 - 1e-12) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(plan.rho0);
    const auto top = es.eigenvalues().size() - 1;
    plan.pure = true;
    plan.psi0 = es.eigenvectors().col(top);
  }
}

Matrix rotate_free_operator(const Matrix& V, const Matrix& op) { return V.adjoint() * op * V; }

// Working basis for commuting Hermitian A and B.
Matrix joint_eigenbasis(const Matrix& A, const Matrix& B) {
  const double scale = std::max({1.0, A.norm(), B.norm()});
  for (double c : {0.7548776662466927, 0.5698402909980532, 1.3247179572447460}) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A + c * B);
    const Matrix& V = es.eigenvectors();
    const Matrix a = V.adjoint() * A * V;
    const Matrix b = V.adjoint() * B * V;
    const double off = (a - Matrix(a.diagonal().asDiagonal())).norm() + (b - Matrix(b.diagonal().asDiagonal())).norm();
    if (off < 1e-9 * scale) return V;
  }
  throw NumericalError("could not find a joint eigenbasis of A and B");
}

double min_eig(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void positivity_abort(double value, std::size_t step, double h) {
  throw NumericalError("conditional state lost positivity: eigenvalue " + std::to_string(value) + " at step " +
                       std::to_string(step) + " (t = " + std::to_string(static_cast<double>(step) * h) +
                       "); reduce dt");
}

struct StepSink {
  virtual ~StepSink() = default;
  virtual void record(std::size_t step, double dI, double dW) = 0;
  // State in the working basis.
  virtual void sample(std::size_t slot, const Matrix& rho) = 0;
};

// Propagates one trajectory, reporting record increments and sampled states.
double run_one(const Plan& plan, std::mt19937_64& rng, StepSink& sink) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto d = plan.a.size();
  const double h = plan.h;
  const double sqrt_h = std::sqrt(h);
  const bool ff = plan.b.size() > 0;
  std::deque<double> pending;  // record increments awaiting their kick
  double worst = 0.0;

  Matrix rho;
  Vector psi;
  if (plan.pure) {
    psi = plan.psi0;
  } else {
    rho = plan.rho0;
  }
  std::size_t slot = 0;
  auto emit = [&](std::size_t n) {
    if (plan.pure) {
      sink.sample(slot++, psi * psi.adjoint());
      return;
    }
    if (plan.scheme == Scheme::kraus) {
      const double m = min_eig(rho);
      worst = std::min(worst, m);
      if (m < kPositivityFloor) positivity_abort(m, n, h);
    }
    sink.sample(slot++, rho);
  };

  Eigen::VectorXd probs(d);
  Eigen::VectorXcd u(d);
  emit(0);
  for (std::size_t n = 1; n <= plan.steps; ++n) {
    // Populations in the working basis give both <A> and the outcome law.
    for (Eigen::Index i = 0; i < d; ++i) {
      probs(i) = std::max(0.0, plan.pure ? std::norm(psi(i)) : rho(i, i).real());
    }
    probs /= probs.sum();
    const double mean_a = probs.dot(plan.a);

    double dI = 0.0;
    if (plan.scheme == Scheme::kraus) {
      const double r = uniform(rng);
      Eigen::Index pick = 0;
      double acc = probs(0);
      while (pick + 1 < d && r >= acc) acc += probs(++pick);
      dI = plan.sqrt_k * plan.a(pick) * h + sqrt_h * normal(rng);
    } else {
      dI = plan.sqrt_k * mean_a * h + sqrt_h * normal(rng);
    }
    const double dW = dI - plan.sqrt_k * mean_a * h;
    sink.record(n - 1, dI, dW);

    double kick = 0.0;
    if (ff) {
      pending.push_back(dI);
      if (pending.size() >= plan.delay) {
        kick = pending.front();
        pending.pop_front();
      }
    }

    if (plan.scheme == Scheme::kraus) {
      for (Eigen::Index i = 0; i < d; ++i) {
        const double ai = plan.a(i);
        Complex ui = std::exp(0.5 * plan.sqrt_k * ai * dI - 0.25 * plan.k * ai * ai * h);
        if (ff) ui *= std::exp(-kI * (plan.sqrt_alpha * kick * plan.b(i)));
        u(i) = ui;
      }
      if (plan.pure) {
        psi = psi.cwiseProduct(u);
        psi /= psi.norm();
      } else {
        rho = u.asDiagonal() * rho * u.conjugate().asDiagonal();
        if (plan.free_gen) {
          const Eigen::VectorXcd v = plan.free_prop * Eigen::Map<const Eigen::VectorXcd>(rho.data(), d * d);
          rho = Eigen::Map<const Matrix>(v.data(), d, d);
        }
        rho = 0.5 * (rho + rho.adjoint()).eval();
        rho /= rho.trace().real();
      }
    } else {
      Matrix drho = Matrix::Zero(d, d);
      if (plan.free_gen) drho = plan.free_gen->apply(rho) * h;
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
          const double ai = plan.a(i);
          const double aj = plan.a(j);
          const double lind = -0.5 * (ai - aj) * (ai - aj) * 0.25 * plan.k * h;
          const double meas = 0.5 * plan.sqrt_k * (ai + aj - 2.0 * mean_a) * dW;
          drho(i, j) += (lind + meas) * rho(i, j);
        }
      }
      rho += drho;
      if (ff && kick != 0.0) {
        for (Eigen::Index i = 0; i < d; ++i) u(i) = std::exp(-kI * (plan.sqrt_alpha * kick * plan.b(i)));
        rho = u.asDiagonal() * rho * u.conjugate().asDiagonal();
      }
      rho = 0.5 * (rho + rho.adjoint()).eval();
      rho /= rho.trace().real();
      const double m = min_eig(rho);
      worst = std::min(worst, m);
      if (m < kPositivityFloor) positivity_abort(m, n, h);
    }

    if (n == plan.steps || n % plan.sample_every == 0) emit(n);
  }
  return worst;
}

Plan conditional_plan(const master::LindbladModel& model_free, const Operator& A, double k, const DensityMatrix& rho0,
                      const TrajectoryOptions& opts) {
  check_options(opts, k);
  if (!A.is_hermitian(1e-12)) throw ValidationError("measured operator must be Hermitian");
  if (!(A.space() == model_free.space()) || !(rho0.space() == A.space())) {
    throw ValidationError("model, operator and state must share one space");
  }
  Plan plan;
  plan.space = A.space();
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.matrix());
  plan.V = es.eigenvectors();
  plan.a = es.eigenvalues();
  plan.k = k;
  plan.sqrt_k = std::sqrt(k);
  const bool trivial =
      model_free.hamiltonian().matrix().norm() == 0.0 &&
      std::all_of(model_free.jumps().begin(), model_free.jumps().end(), [](const master::JumpTerm& j) { return j.rate == 0.0; });
  if (!trivial) {
    std::vector<master::JumpTerm> jumps;
    for (const master::JumpTerm& j : model_free.jumps()) {
      jumps.push_back({j.rate, Operator(plan.space, rotate_free_operator(plan.V, j.op.matrix()))});
    }
    master::LindbladModel rotated(Operator(plan.space, rotate_free_operator(plan.V, model_free.hamiltonian().matrix())),
                                  std::move(jumps));
    plan.free_gen.emplace(rotated);
    plan.steps = static_cast<std::size_t>(std::ceil(opts.t / opts.dt - 1e-9));
    const double h = opts.t / static_cast<double>(plan.steps);
    if (opts.scheme == Scheme::kraus) plan.free_prop = (master::liouvillian_matrix(*plan.free_gen) * Complex(h)).exp();
  }
  fill_common(plan, rho0, opts);
  return plan;
}

Plan feedforward_plan(const Operator& A, const Operator& B, const master::FeedforwardParams& p,
                      const DensityMatrix& rho0, std::size_t delay_steps, const TrajectoryOptions& opts) {
  p.validate();
  check_options(opts, p.k);
  if (delay_steps == 0) throw ValidationError("delay_steps must be >= 1; a zero delay is acausal");
  if (!A.is_hermitian(1e-12) || !B.is_hermitian(1e-12)) throw ValidationError("feed-forward needs Hermitian A and B");
  if (!(A.space() == B.space()) || !(rho0.space() == A.space())) {
    throw ValidationError("operators and state must share one space");
  }
  if (fock::commutator(A, B).matrix().norm() > 1e-10) throw ValidationError("A and B must commute");
  Plan plan;
  plan.space = A.space();
  plan.V = joint_eigenbasis(A.matrix(), B.matrix());
  plan.a = (plan.V.adjoint() * A.matrix() * plan.V).diagonal().real();
  plan.b = (plan.V.adjoint() * B.matrix() * plan.V).diagonal().real();
  plan.k = p.k;
  plan.sqrt_k = std::sqrt(p.k);
  plan.sqrt_alpha = std::sqrt(p.alpha_ff);
  plan.delay = delay_steps;
  fill_common(plan, rho0, opts);
  return plan;
}

struct SingleSink final : StepSink {
  const Plan& plan;
  TrajectoryResult& out;
  SingleSink(const Plan& p, TrajectoryResult& o) : plan(p), out(o) {}
  void record(std::size_t, double dI, double dW) override {
    out.record.samples.push_back(dI);
    out.record.noise.push_back(dW);
  }
  void sample(std::size_t, const Matrix& rho) override {
    out.conditional_states.push_back(plan.V * rho * plan.V.adjoint());
  }
};

TrajectoryResult run_single(const Plan& plan, const TrajectoryOptions& opts) {
  TrajectoryResult out;
  out.record.dt = plan.h;
  out.record.seed = opts.seed;
  out.record.index = opts.index;
  out.record.samples.reserve(plan.steps);
  out.record.noise.reserve(plan.steps);
  for (std::size_t n : sample_steps(plan)) out.times.push_back(static_cast<double>(n) * plan.h);
  std::mt19937_64 rng = trajectory_stream(opts.seed, opts.index);
  SingleSink sink(plan, out);
  out.min_eigenvalue = run_one(plan, rng, sink);
  return out;
}

struct Partial {
  std::vector<Matrix> states;
  std::vector<double> rec_sum, rec_sq, noise_sum, noise_sq;
  double worst = 0.0;
};

struct AccumulatingSink final : StepSink {
  Partial& acc;
  explicit AccumulatingSink(Partial& a) : acc(a) {}
  void record(std::size_t step, double dI, double dW) override {
    acc.rec_sum[step] += dI;
    acc.rec_sq[step] += dI * dI;
    acc.noise_sum[step] += dW;
    acc.noise_sq[step] += dW * dW;
  }
  void sample(std::size_t slot, const Matrix& rho) override { acc.states[slot] += rho; }
};

EnsembleSummary run_ensemble(const Plan& plan, const TrajectoryOptions& opts, std::size_t count, std::size_t workers) {
  if (count == 0) throw ValidationError("ensemble needs at least one trajectory");
  const std::vector<std::size_t> steps = sample_steps(plan);
  const auto d = static_cast<Eigen::Index>(plan.a.size());
  auto fresh = [&] {
    Partial p;
    p.states.assign(steps.size(), Matrix::Zero(d, d));
    p.rec_sum.assign(plan.steps, 0.0);
    p.rec_sq.assign(plan.steps, 0.0);
    p.noise_sum.assign(plan.steps, 0.0);
    p.noise_sq.assign(plan.steps, 0.0);
    return p;
  };
  std::vector<Partial> partials(parallel::chunk_count(count, kChunk));
  parallel::for_chunks(
      count, kChunk,
      [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Partial acc = fresh();
        AccumulatingSink sink(acc);
        for (std::size_t idx = begin; idx < end; ++idx) {
          std::mt19937_64 rng = trajectory_stream(opts.seed, idx);
          acc.worst = std::min(acc.worst, run_one(plan, rng, sink));
        }
        partials[chunk] = std::move(acc);
      },
      workers);

  Partial total = fresh();
  for (const Partial& p : partials) {
    for (std::size_t s = 0; s < steps.size(); ++s) total.states[s] += p.states[s];
    for (std::size_t n = 0; n < plan.steps; ++n) {
      total.rec_sum[n] += p.rec_sum[n];
      total.rec_sq[n] += p.rec_sq[n];
      total.noise_sum[n] += p.noise_sum[n];
      total.noise_sq[n] += p.noise_sq[n];
    }
    total.worst = std::min(total.worst, p.worst);
  }

  EnsembleSummary out;
  out.trajectories = count;
  out.min_eigenvalue = total.worst;
  const double m = static_cast<double>(count);
  for (std::size_t s = 0; s < steps.size(); ++s) {
    out.times.push_back(static_cast<double>(steps[s]) * plan.h);
    out.mean_states.push_back(plan.V * (total.states[s] / m) * plan.V.adjoint());
  }
  const double bessel = count > 1 ? m / (m - 1.0) : 1.0;
  for (std::size_t n = 0; n < plan.steps; ++n) {
    const double rm = total.rec_sum[n] / m;
    const double nm = total.noise_sum[n] / m;
    out.record_rate_mean.push_back(rm / plan.h);
    out.record_rate_variance.push_back(std::max(0.0, total.rec_sq[n] / m - rm * rm) * bessel / (plan.h * plan.h));
    out.noise_mean.push_back(nm);
    out.noise_variance.push_back(std::max(0.0, total.noise_sq[n] / m - nm * nm) * bessel);
  }
  return out;
}

}  // namespace

std::mt19937_64 trajectory_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + 0x632BE59BD9B4E019ULL)));
}

TrajectoryResult simulate_conditional(const master::LindbladModel& model_free, const Operator& A, double k,
                                      const DensityMatrix& rho0, const TrajectoryOptions& opts) {
  return run_single(conditional_plan(model_free, A, k, rho0, opts), opts);
}

TrajectoryResult simulate_feedforward(const Operator& A, const Operator& B, const master::FeedforwardParams& p,
                                      const DensityMatrix& rho0, std::size_t delay_steps,
                                      const TrajectoryOptions& opts) {
  return run_single(feedforward_plan(A, B, p, rho0, delay_steps, opts), opts);
}

std::vector<Matrix> ensemble_average(const std::vector<TrajectoryResult>& results) {
  if (results.empty()) throw ValidationError("ensemble_average needs at least one trajectory");
  const TrajectoryResult& first = results.front();
  std::vector<Matrix> mean = first.conditional_states;
  for (std::size_t r = 1; r < results.size(); ++r) {
    const TrajectoryResult& t = results[r];
    if (t.times.size() != first.times.size() || t.conditional_states.size() != mean.size()) {
      throw ValidationError("trajectories have different sample grids");
    }
    for (std::size_t s = 0; s < t.times.size(); ++s) {
      if (std::abs(t.times[s] - first.times[s]) > 1e-12 * std::max(1.0, first.times[s])) {
        throw ValidationError("trajectories have different sample grids");
      }
      if (t.conditional_states[s].rows() != mean[s].rows()) throw ValidationError("trajectory dimension mismatch");
      mean[s] += t.conditional_states[s];
    }
  }
  for (Matrix& m : mean) m /= static_cast<double>(results.size());
  return mean;
}

EnsembleSummary conditional_ensemble(const master::LindbladModel& model_free, const Operator& A, double k,
                                     const DensityMatrix& rho0, const TrajectoryOptions& opts, std::size_t count,
                                     std::size_t workers) {
  return run_ensemble(conditional_plan(model_free, A, k, rho0, opts), opts, count, workers);
}

EnsembleSummary feedforward_ensemble(const Operator& A, const Operator& B, const master::FeedforwardParams& p,
                                     const DensityMatrix& rho0, std::size_t delay_steps,
                                     const TrajectoryOptions& opts, std::size_t count, std::size_t workers) {
  return run_ensemble(feedforward_plan(A, B, p, rho0, delay_steps, opts), opts, count, workers);
}

}  // namespace nonrecip::trajectories
