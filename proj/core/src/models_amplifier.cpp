#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "nonrecip/errors.hpp"
#include "nonrecip/models.hpp"

namespace nonrecip::models {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

LinearForm widen(const LinearForm& f, std::size_t n_modes) {
  gaussian::ComplexVector c = gaussian::ComplexVector::Zero(static_cast<Eigen::Index>(2 * n_modes));
  c.head(f.coeffs().size()) = f.coeffs();
  return LinearForm(c);
}

}  // namespace

double sign_value(CoherentSign s) { return s == CoherentSign::plus ? 1.0 : -1.0; }

std::string to_string(CoherentSign s) { return s == CoherentSign::plus ? "plus" : "minus"; }

std::string to_string(DissipatorBasis b) { return b == DissipatorBasis::quadrature ? "quadrature" : "d_basis"; }

bool AmplifierConfig::directional(double tol) const {
  return std::abs(J - eta * Gamma) <= tol * std::max(1.0, std::abs(J));
}

void AmplifierConfig::validate() const {
  if (!std::isfinite(J)) throw ValidationError("amplifier J must be finite");
  if (!finite_nonneg(Gamma) || !finite_nonneg(eta)) throw ValidationError("amplifier Gamma and eta must be >= 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("amplifier kappa must be > 0");
  if (!finite_nonneg(n_r1) || !finite_nonneg(n_r2) || !finite_nonneg(n_1) || !finite_nonneg(n_2)) {
    throw ValidationError("occupations must be >= 0");
  }
}

AmplifierConfig AmplifierConfig::tuned(double g0, double kappa, CoherentSign sign) {
  if (!(g0 > 0.0)) throw ValidationError("target gain must be > 0");
  AmplifierConfig cfg;
  cfg.kappa = kappa;
  cfg.sign = sign;
  cfg.Gamma = 0.25 * kappa;
  cfg.eta = 0.5 * std::sqrt(g0);
  cfg.J = cfg.eta * cfg.Gamma;
  cfg.validate();
  return cfg;
}

LinearSystem amplifier_system(const AmplifierConfig& cfg) {
  cfg.validate();
  constexpr std::size_t n = 2;
  const double s = sign_value(cfg.sign);
  const Complex ie{0.0, cfg.eta};
  QuadraticHamiltonian h(n);
  h.add(Complex(0.5 * cfg.J), LinearForm::x(n, 0), LinearForm::x(n, 1));
  h.add(Complex(0.5 * s * cfg.J), LinearForm::p(n, 0), LinearForm::p(n, 1));

  LinearForm j1 = LinearForm::zero(n);
  LinearForm j2 = LinearForm::zero(n);
  if (cfg.basis == DissipatorBasis::quadrature) {
    j1 = LinearForm::x(n, 0) - LinearForm::x(n, 1) * ie;
    j2 = LinearForm::p(n, 0) - LinearForm::p(n, 1) * (s * ie);
  } else if (cfg.sign == CoherentSign::plus) {
    j1 = LinearForm::lowering(n, 0) - LinearForm::lowering(n, 1) * ie;
    j2 = LinearForm::raising(n, 0) - LinearForm::raising(n, 1) * ie;
  } else {
    j1 = LinearForm::lowering(n, 0) - LinearForm::raising(n, 1) * ie;
    j2 = LinearForm::raising(n, 0) - LinearForm::lowering(n, 1) * ie;
  }
  return LinearSystem{
      h,
      {Dissipator{j1, cfg.Gamma, cfg.n_r1, 0.0, "r1"}, Dissipator{j2, cfg.Gamma, cfg.n_r2, 0.0, "r2"}},
      {Port{0, cfg.kappa, cfg.n_1, "port1"}, Port{1, cfg.kappa, cfg.n_2, "port2"}},
  };
}

GaussianModel amplifier_model(const AmplifierConfig& cfg) { return amplifier_system(cfg).gaussian(); }

master::LindbladModel amplifier_fock_model(const AmplifierConfig& cfg, std::size_t truncation) {
  return amplifier_system(cfg).lindblad(fock::HilbertSpace({truncation, truncation}));
}

NoiseOptimum locate_noise_optimum(const AmplifierConfig& cfg) {
  cfg.validate();
  if (!(cfg.J > 0.0)) throw ValidationError("noise optimum search needs J > 0");
  auto n_add = [&](double log_gamma) {
    AmplifierConfig c = cfg;
    c.Gamma = std::exp(log_gamma);
    c.eta = cfg.J / c.Gamma;
    return gaussian::added_noise(amplifier_model(c), 0, 1).n_add;
  };
  const double lo = std::log(1e-3 * cfg.kappa);
  const double hi = std::log(1e3 * cfg.kappa);
  std::uintmax_t iters = 500;
  const auto best = boost::math::tools::brent_find_minima(n_add, lo, hi, 52, iters);
  NoiseOptimum out;
  out.Gamma = std::exp(best.first);
  out.eta = cfg.J / out.Gamma;
  out.n_add = best.second;
  return out;
}

double adiabatic_effective_rate(double lambda, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("auxiliary decay rate must be > 0");
  return 4.0 * lambda * lambda / gamma;
}

AuxiliaryPair auxiliary_reservoir(const LinearForm& z, double lambda, double gamma, double kappa) {
  if (z.n_modes() != 2) throw ValidationError("auxiliary reservoir expects a two-cavity jump form");
  const double rate = adiabatic_effective_rate(lambda, gamma);
  const double gauge = -0.5 * std::numbers::pi;
  const std::vector<Port> cavity_ports{Port{0, kappa, 0.0, "port1"}, Port{1, kappa, 0.0, "port2"}};

  QuadraticHamiltonian full_h(3);
  full_h.add(Complex(lambda), LinearForm::raising(3, 2), widen(z, 3));
  std::vector<Port> full_ports = cavity_ports;
  full_ports.push_back(Port{2, gamma, 0.0, "aux"});

  return AuxiliaryPair{
      gaussian::from_quadratic(full_h, {}, full_ports),
      gaussian::from_quadratic(QuadraticHamiltonian(2), {Dissipator{z, rate, 0.0, gauge, "aux"}}, cavity_ports),
  };
}

}  // namespace nonrecip::models
