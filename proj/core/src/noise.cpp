#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "nonrecip/errors.hpp"
#include "nonrecip/gaussian.hpp"

namespace nonrecip::gaussian {

namespace {

void require_port(const GaussianModel& model, std::size_t port) {
  if (port >= model.port_channels().size()) {
    throw ValidationError("port " + std::to_string(port) + " out of range (" +
                          std::to_string(model.port_channels().size()) + " ports)");
  }
}

double forward_gain(const GaussianModel& model, std::size_t in_port, std::size_t out_port, double omega) {
  return block_gain(port_block(scattering(model, omega), out_port, in_port));
}

// First crossing of G(w) = target moving away from 0 in direction `sign`.
double half_max_crossing(const GaussianModel& model, std::size_t in_port, std::size_t out_port, double target,
                         double sign) {
  Eigen::EigenSolver<RealMatrix> es(model.drift(), false);
  double step = std::max(1e-12, es.eigenvalues().cwiseAbs().minCoeff()) * 1e-2;
  auto f = [&](double w) { return forward_gain(model, in_port, out_port, sign * w) - target; };
  double lo = 0.0;
  double hi = step;
  for (int i = 0; i < 200 && f(hi) > 0.0; ++i) {
    lo = hi;
    hi *= 1.5;
  }
  if (f(hi) > 0.0) throw NumericalError("gain never falls to half maximum");
  std::uintmax_t iters = 200;
  const auto bracket =
      boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return sign * 0.5 * (bracket.first + bracket.second);
}

}  // namespace

GainCurve gains(const GaussianModel& model, const std::vector<double>& omega_grid, std::size_t in_port,
                std::size_t out_port) {
  require_port(model, in_port);
  require_port(model, out_port);
  GainCurve curve;
  for (double w : omega_grid) {
    const ScatteringMatrix s = scattering(model, w);
    curve.omega.push_back(w);
    curve.forward.push_back(block_gain(port_block(s, out_port, in_port)));
    curve.reverse.push_back(block_gain(port_block(s, in_port, out_port)));
  }
  return curve;
}

double gain_fwhm(const GaussianModel& model, std::size_t in_port, std::size_t out_port) {
  require_port(model, in_port);
  require_port(model, out_port);
  const double g0 = forward_gain(model, in_port, out_port, 0.0);
  if (!(g0 > 0.0)) throw NumericalError("zero forward gain at w = 0");
  const double target = 0.5 * g0;
  return half_max_crossing(model, in_port, out_port, target, 1.0) -
         half_max_crossing(model, in_port, out_port, target, -1.0);
}

ComplexMatrix output_noise_spectrum(const GaussianModel& model, std::size_t out_port, double omega) {
  require_port(model, out_port);
  const ComplexMatrix s = channel_scattering(model, omega);
  const auto out = static_cast<Eigen::Index>(2 * model.port_channels()[out_port]);
  ComplexMatrix spectrum = ComplexMatrix::Zero(2, 2);
  for (std::size_t c = 0; c < model.channels().size(); ++c) {
    const ComplexMatrix b = s.block(out, static_cast<Eigen::Index>(2 * c), 2, 2);
    spectrum += (model.channels()[c].occupation + 0.5) * b * b.adjoint();
  }
  return spectrum;
}

NoiseReport added_noise(const GaussianModel& model, std::size_t signal_port, std::size_t out_port, double omega) {
  require_port(model, signal_port);
  require_port(model, out_port);
  const ComplexMatrix s = channel_scattering(model, omega);
  const std::size_t signal = model.port_channels()[signal_port];
  const auto out = static_cast<Eigen::Index>(2 * model.port_channels()[out_port]);
  NoiseReport report;
  report.g0 = block_gain(s.block(out, static_cast<Eigen::Index>(2 * signal), 2, 2));
  if (!(report.g0 > 0.0)) throw ValidationError("added noise needs a positive gain from the signal port");
  for (std::size_t c = 0; c < model.channels().size(); ++c) {
    if (c == signal) continue;
    const double g = block_gain(s.block(out, static_cast<Eigen::Index>(2 * c), 2, 2));
    const double quanta = (model.channels()[c].occupation + 0.5) * g / report.g0;
    report.breakdown.push_back({model.channels()[c].label, quanta});
    report.n_add += quanta;
  }
  return report;
}

bool is_physical(const RealMatrix& covariance, double tol) {
  const auto n = covariance.rows();
  if (n == 0 || n % 2 != 0 || covariance.cols() != n) return false;
  const ComplexMatrix m =
      covariance.cast<Complex>() + Complex(0.0, 0.5) * symplectic_form(static_cast<std::size_t>(n / 2)).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

double log_negativity(const RealMatrix& covariance, const std::vector<std::size_t>& a_modes) {
  if (!is_physical(covariance)) throw ValidationError("covariance violates the uncertainty principle");
  const auto n = covariance.rows();
  const auto n_modes = static_cast<std::size_t>(n / 2);
  RealVector flip = RealVector::Ones(n);
  for (std::size_t m = 0; m < n_modes; ++m) {
    const bool in_a = std::find(a_modes.begin(), a_modes.end(), m) != a_modes.end();
    if (!in_a) flip(static_cast<Eigen::Index>(2 * m + 1)) = -1.0;
  }
  const RealMatrix vt = flip.asDiagonal() * covariance * flip.asDiagonal();
  const ComplexMatrix m = Complex(0.0, 1.0) * (symplectic_form(n_modes) * vt).cast<Complex>();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  // Each symplectic eigenvalue appears as +-nu.
  double total = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double nu = std::abs(es.eigenvalues()(i));
    total += std::max(0.0, -std::log(2.0 * nu));
  }
  return 0.5 * total;
}

Moments fock_moments(const fock::DensityMatrix& rho) {
  const fock::HilbertSpace& space = rho.space();
  std::vector<fock::Operator> r;
  for (std::size_t m = 0; m < space.num_modes(); ++m) {
    r.push_back(fock::quadrature_x(space, m));
    r.push_back(fock::quadrature_p(space, m));
  }
  const auto n = static_cast<Eigen::Index>(r.size());
  Moments out{RealVector(n), RealMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) out.mean(i) = fock::expectation(rho, r[static_cast<std::size_t>(i)]).real();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const auto& ri = r[static_cast<std::size_t>(i)];
      const auto& rj = r[static_cast<std::size_t>(j)];
      const double sym = 0.5 * (fock::expectation(rho, ri * rj) + fock::expectation(rho, rj * ri)).real();
      out.covariance(i, j) = out.covariance(j, i) = sym - out.mean(i) * out.mean(j);
    }
  }
  return out;
}

}  // namespace nonrecip::gaussian
