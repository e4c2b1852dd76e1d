#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "nonrecip/errors.hpp"
#include "nonrecip/master.hpp"

namespace nonrecip::master {

bool Bipartition::contains_a(std::size_t mode) const {
  return std::find(a_modes.begin(), a_modes.end(), mode) != a_modes.end();
}

namespace {

// Pure single-mode state spread over the lowest two levels.
fock::Vector random_low_ket(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  fock::Vector v = fock::Vector::Zero(static_cast<Eigen::Index>(dim));
  v(0) = Complex(1.0 + std::abs(g(rng)), 0.0);
  v(1) = Complex(g(rng), g(rng)) * 0.6;
  return v / v.norm();
}

fock::Vector product_ket(const std::vector<fock::Vector>& kets) {
  fock::Vector out = fock::Vector::Ones(1);
  for (const fock::Vector& k : kets) out = Eigen::kroneckerProduct(out, k).eval();
  return out;
}

}  // namespace

DirectionalityReport check_directionality(const Generator& gen, const Bipartition& partition, Side side,
                                          const std::vector<Operator>& probes, double tol,
                                          const DirectionalityOptions& opts) {
  const HilbertSpace& space = gen.space();
  for (std::size_t m : partition.a_modes) {
    if (m >= space.num_modes()) throw ValidationError("bipartition names a mode outside the space");
  }
  for (const Operator& p : probes) {
    if (!(p.space() == space)) throw ValidationError("probe lives on a different space");
  }
  if (opts.samples == 0 || opts.pairs == 0) throw ValidationError("need at least one sample and one pair");

  const double dt = opts.dt > 0.0 ? opts.dt : default_time_step(gen);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(opts.t_final / dt - 1e-9)));
  const std::size_t every = std::max<std::size_t>(1, steps / opts.samples);

  std::mt19937_64 rng(opts.seed);
  DirectionalityReport report;
  report.side = side;
  report.tolerance = tol;
  for (std::size_t pair = 0; pair < opts.pairs; ++pair) {
    std::vector<fock::Vector> first;
    std::vector<fock::Vector> second;
    for (std::size_t m = 0; m < space.num_modes(); ++m) {
      const bool on_probe_side = partition.contains_a(m) == (side == Side::A);
      const fock::Vector k = random_low_ket(space.mode_dim(m), rng);
      first.push_back(k);
      second.push_back(on_probe_side ? k : random_low_ket(space.mode_dim(m), rng));
    }
    const DensityMatrix rho1 = DensityMatrix::from_ket(space, product_ket(first));
    const DensityMatrix rho2 = DensityMatrix::from_ket(space, product_ket(second));
    const Evolution e1 = evolve_sampled(gen, rho1, opts.t_final, dt, every);
    const Evolution e2 = evolve_sampled(gen, rho2, opts.t_final, dt, every);
    report.max_edge_population =
        std::max({report.max_edge_population, e1.max_edge_population, e2.max_edge_population});
    for (std::size_t s = 0; s < e1.states.size(); ++s) {
      const Matrix diff = e1.states[s] - e2.states[s];
      for (const Operator& p : probes) {
        const double dev = std::abs((p.matrix().transpose().cwiseProduct(diff)).sum());
        report.max_deviation = std::max(report.max_deviation, dev);
      }
    }
  }
  report.passed = report.max_deviation < tol;
  return report;
}

}  // namespace nonrecip::master
