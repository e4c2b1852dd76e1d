#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "nonrecip/errors.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/trajectories.hpp"

using namespace nonrecip;
using namespace nonrecip::trajectories;
using fock::Complex;
using fock::HilbertSpace;
using fock::quadrature_p;
using fock::quadrature_x;
using master::FeedforwardParams;
using master::LindbladModel;

namespace {

DensityMatrix coherent2(const HilbertSpace& s, Complex a0, Complex a1) {
  const std::array<Complex, 2> alphas{a0, a1};
  return DensityMatrix::coherent(s, alphas);
}

LindbladModel free_model(const HilbertSpace& s) { return LindbladModel(Operator::zero(s), {}); }

double real_trace(const Matrix& rho, const Operator& op) { return (rho * op.matrix()).trace().real(); }

}  // namespace

TEST(Conditional, ZeroRateIsDeterministicAndRecordIsNoise) {
  HilbertSpace s({4});
  const auto rho0 = DensityMatrix::coherent(s, std::array<Complex, 1>{Complex(0.3, 0.1)});
  TrajectoryOptions opts;
  opts.t = 0.2;
  opts.dt = 1e-3;
  opts.seed = 9;
  const auto r = simulate_conditional(free_model(s), quadrature_x(s, 0), 0.0, rho0, opts);
  EXPECT_LT((r.conditional_states.back() - rho0.matrix()).norm(), 1e-12);
  ASSERT_EQ(r.record.samples.size(), r.record.noise.size());
  for (std::size_t i = 0; i < r.record.samples.size(); ++i)
    EXPECT_DOUBLE_EQ(r.record.samples[i], r.record.noise[i]);
}

TEST(Conditional, SameSeedAndIndexReproduce) {
  HilbertSpace s({3});
  TrajectoryOptions opts;
  opts.t = 0.1;
  opts.dt = 1e-3;
  opts.seed = 42;
  opts.index = 3;
  const auto rho0 = DensityMatrix::maximally_mixed(s);
  const auto a = simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, rho0, opts);
  const auto b = simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, rho0, opts);
  EXPECT_EQ(a.record.samples, b.record.samples);
  opts.index = 4;
  const auto c = simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, rho0, opts);
  EXPECT_NE(a.record.samples, c.record.samples);
}

TEST(Conditional, InnovationHasWienerStatistics) {
  HilbertSpace s({3});
  TrajectoryOptions opts;
  opts.t = 0.05;
  opts.dt = 1e-3;
  opts.seed = 1;
  const auto summary =
      conditional_ensemble(free_model(s), quadrature_x(s, 0), 2.0, DensityMatrix::maximally_mixed(s), opts, 4000);
  const double n = static_cast<double>(summary.trajectories);
  for (std::size_t i = 0; i < summary.noise_mean.size(); ++i) {
    // Standard error of the mean of dW is sqrt(dt / n).
    EXPECT_LT(std::abs(summary.noise_mean[i]), 5.0 * std::sqrt(opts.dt / n));
    EXPECT_NEAR(summary.noise_variance[i] / opts.dt, 1.0, 5.0 * std::sqrt(2.0 / n));
  }
}

TEST(Conditional, RecordMeanTracksSignal) {
  HilbertSpace s({6});
  const Complex alpha{0.4, 0.0};
  const auto rho0 = DensityMatrix::coherent(s, std::array<Complex, 1>{alpha});
  const double k = 1.0;
  TrajectoryOptions opts;
  opts.t = 0.02;
  opts.dt = 1e-3;
  opts.seed = 2;
  const std::size_t count = 10000;
  const auto summary = conditional_ensemble(free_model(s), quadrature_x(s, 0), k, rho0, opts, count);
  const double expected = std::sqrt(k) * expectation(rho0, quadrature_x(s, 0)).real();
  // Measuring X leaves <X> unchanged in the ensemble, so every step has the same mean.
  for (std::size_t i = 0; i < summary.record_rate_mean.size(); ++i) {
    const double se = std::sqrt(summary.record_rate_variance[i] / static_cast<double>(count));
    EXPECT_LT(std::abs(summary.record_rate_mean[i] - expected), 3.5 * se);
  }
}

TEST(Conditional, MeasurementKeepsPureStatesPure) {
  HilbertSpace s({6});
  const auto rho0 = DensityMatrix::coherent(s, std::array<Complex, 1>{Complex(0.2, 0.3)});
  TrajectoryOptions opts;
  opts.t = 1.0;
  opts.dt = 1e-3;
  opts.sample_every = 100;
  opts.seed = 17;
  const auto r = simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, rho0, opts);
  for (const auto& rho : r.conditional_states) {
    EXPECT_GT((rho * rho).trace().real(), 1.0 - 1e-3);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
  }
  EXPECT_GE(r.min_eigenvalue, kPositivityFloor);
}

TEST(Conditional, EulerMaruyamaStaysPositiveAtSmallStep) {
  HilbertSpace s({4});
  TrajectoryOptions opts;
  opts.t = 0.5;
  opts.dt = 1e-3;
  opts.seed = 5;
  opts.scheme = Scheme::euler_maruyama;
  const auto r = simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, DensityMatrix::maximally_mixed(s), opts);
  EXPECT_GE(r.min_eigenvalue, kPositivityFloor);
}

TEST(Conditional, RejectsInvalidOptions) {
  HilbertSpace s({3});
  const auto rho0 = DensityMatrix::vacuum(s);
  TrajectoryOptions opts;
  opts.t = 0.1;
  opts.dt = 0.02;
  EXPECT_THROW(simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, rho0, opts), ValidationError);
  opts.dt = 1e-3;
  EXPECT_THROW(simulate_conditional(free_model(s), fock::annihilation(s, 0), 1.0, rho0, opts), ValidationError);
  EXPECT_THROW(simulate_conditional(free_model(s), quadrature_x(s, 0), -1.0, rho0, opts), ValidationError);
  opts.sample_every = 0;
  EXPECT_THROW(simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, rho0, opts), ValidationError);
}

TEST(Feedforward, ZeroDelayIsRejected) {
  HilbertSpace s({3, 3});
  TrajectoryOptions opts;
  opts.t = 0.1;
  opts.dt = 1e-3;
  EXPECT_THROW(simulate_feedforward(quadrature_x(s, 0), quadrature_x(s, 1), {1.0, 0.5, 0.0},
                                    DensityMatrix::vacuum(s), 0, opts),
               ValidationError);
}

TEST(Feedforward, NonCommutingOperatorsAreRejected) {
  HilbertSpace s({3, 3});
  TrajectoryOptions opts;
  opts.t = 0.1;
  opts.dt = 1e-3;
  EXPECT_THROW(simulate_feedforward(quadrature_x(s, 0), quadrature_p(s, 0), {1.0, 0.5, 0.0},
                                    DensityMatrix::vacuum(s), 1, opts),
               ValidationError);
}

TEST(Feedforward, ZeroGainMatchesConditionalMeasurement) {
  HilbertSpace s({3, 3});
  // Mixed start: the Euler-Maruyama step on a pure state goes negative at O(dt).
  const auto rho0 = DensityMatrix::maximally_mixed(s);
  TrajectoryOptions opts;
  opts.t = 0.3;
  opts.dt = 1e-3;
  opts.sample_every = 50;
  opts.seed = 8;
  // Both paths draw one Gaussian increment per step under Euler-Maruyama.
  opts.scheme = Scheme::euler_maruyama;
  const Operator A = quadrature_x(s, 0);
  const auto ff = simulate_feedforward(A, quadrature_x(s, 1), {2.0, 0.0, 0.0}, rho0, 1, opts);
  const auto cond = simulate_conditional(free_model(s), A, 2.0, rho0, opts);
  ASSERT_EQ(ff.conditional_states.size(), cond.conditional_states.size());
  ASSERT_EQ(ff.record.samples.size(), cond.record.samples.size());
  for (std::size_t i = 0; i < ff.record.samples.size(); ++i)
    EXPECT_NEAR(ff.record.samples[i], cond.record.samples[i], 1e-12);
  EXPECT_LT((ff.conditional_states.back() - cond.conditional_states.back()).norm(), 1e-12);
}

TEST(Feedforward, EnsembleStatisticsMatchFeedbackMasterEquation) {
  HilbertSpace s({6, 6});
  const Operator A = quadrature_x(s, 0), B = quadrature_x(s, 1);
  const FeedforwardParams p = master::ff_param_map(0.5, 0.6);
  const auto rho0 = coherent2(s, 0.3, Complex(0.0, 0.2));
  TrajectoryOptions opts;
  opts.t = 0.5;
  opts.dt = 1e-3;
  opts.sample_every = 500;
  opts.seed = 31;
  const auto fme = master::evolve(master::build_feedforward_model(A, B, p), rho0, opts.t, 1e-3);

  const std::size_t count = 400;
  const Operator pa2 = quadrature_p(s, 0) * quadrature_p(s, 0);
  const Operator pb2 = quadrature_p(s, 1) * quadrature_p(s, 1);
  std::vector<double> va, vb;
  for (std::size_t i = 0; i < count; ++i) {
    opts.index = i;
    const auto r = simulate_feedforward(A, B, p, rho0, 1, opts);
    va.push_back(real_trace(r.conditional_states.back(), pa2));
    vb.push_back(real_trace(r.conditional_states.back(), pb2));
  }
  auto check = [&](const std::vector<double>& v, double expected) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / (n - 1.0) / n);
    EXPECT_LT(std::abs(mean - expected), 3.5 * se + 1e-3) << mean << " vs " << expected;
  };
  check(va, expectation(fme, pa2).real());
  check(vb, expectation(fme, pb2).real());
}

TEST(Ensemble, IndependentOfWorkerCount) {
  HilbertSpace s({3, 3});
  TrajectoryOptions opts;
  opts.t = 0.1;
  opts.dt = 1e-3;
  opts.sample_every = 20;
  opts.seed = 77;
  const auto rho0 = coherent2(s, 0.2, 0.1);
  const FeedforwardParams p{2.0, 0.5, 0.0};
  const auto one = feedforward_ensemble(quadrature_x(s, 0), quadrature_x(s, 1), p, rho0, 1, opts, 64, 1);
  const auto four = feedforward_ensemble(quadrature_x(s, 0), quadrature_x(s, 1), p, rho0, 1, opts, 64, 4);
  ASSERT_EQ(one.mean_states.size(), four.mean_states.size());
  for (std::size_t i = 0; i < one.mean_states.size(); ++i)
    EXPECT_EQ((one.mean_states[i] - four.mean_states[i]).norm(), 0.0);
  EXPECT_EQ(one.record_rate_mean, four.record_rate_mean);
}

TEST(Ensemble, AverageOfOneIsItself) {
  HilbertSpace s({3});
  TrajectoryOptions opts;
  opts.t = 0.05;
  opts.dt = 1e-3;
  opts.sample_every = 10;
  const auto r = simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, DensityMatrix::vacuum(s), opts);
  const auto avg = ensemble_average({r});
  ASSERT_EQ(avg.size(), r.conditional_states.size());
  EXPECT_EQ((avg.back() - r.conditional_states.back()).norm(), 0.0);
  EXPECT_THROW(ensemble_average({}), ValidationError);
}

TEST(Ensemble, MismatchedGridsThrow) {
  HilbertSpace s({3});
  TrajectoryOptions opts;
  opts.t = 0.05;
  opts.dt = 1e-3;
  opts.sample_every = 10;
  const auto a = simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, DensityMatrix::vacuum(s), opts);
  opts.sample_every = 5;
  const auto b = simulate_conditional(free_model(s), quadrature_x(s, 0), 1.0, DensityMatrix::vacuum(s), opts);
  EXPECT_THROW(ensemble_average({a, b}), ValidationError);
}

TEST(Parallel, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(103);
  parallel::for_chunks(
      hits.size(), 10,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) hits[i]++;
      },
      3);
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_EQ(parallel::chunk_count(103, 10), 11u);
}

TEST(Parallel, RethrowsChunkException) {
  EXPECT_THROW(parallel::for_chunks(
                   20, 5,
                   [](std::size_t chunk, std::size_t, std::size_t) {
                     if (chunk == 2) throw std::runtime_error("boom");
                   },
                   2),
               std::runtime_error);
}
