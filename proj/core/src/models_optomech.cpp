#include <cmath>
#include <numbers>

#include "nonrecip/errors.hpp"
#include "nonrecip/models.hpp"

namespace nonrecip::models {

bool OptomechConfig::directional(double tol) const {
  if (!(gamma > 0.0)) return false;
  const Complex lhs = Complex(0.0, 1.0) * (2.0 * lambda * lambda / gamma) * (eta - std::conj(eta));
  return std::abs(lhs - J) <= tol * std::max(1.0, std::abs(J));
}

void OptomechConfig::validate() const {
  if (!std::isfinite(lambda) || !(lambda >= 0.0)) throw ValidationError("optomechanical lambda must be >= 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("mechanical decay gamma must be > 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be > 0");
  if (!std::isfinite(J) || !std::isfinite(eta.real()) || !std::isfinite(eta.imag())) {
    throw ValidationError("J and eta must be finite");
  }
  for (double n : {n_m1, n_m2, n_c1, n_c2}) {
    if (!(n >= 0.0) || !std::isfinite(n)) throw ValidationError("occupations must be >= 0");
  }
}

OptomechConfig OptomechConfig::tuned(double g0, double gamma, double kappa) {
  if (!(g0 > 0.0)) throw ValidationError("target gain must be > 0");
  OptomechConfig cfg;
  cfg.gamma = gamma;
  cfg.kappa = kappa;
  cfg.lambda = std::sqrt(kappa * gamma / 16.0);
  cfg.eta = Complex(0.0, 0.5 * std::sqrt(g0));
  cfg.J = (Complex(0.0, 1.0) * (2.0 * cfg.lambda * cfg.lambda / gamma) * (cfg.eta - std::conj(cfg.eta))).real();
  cfg.validate();
  return cfg;
}

OptomechModels optomech_model(const OptomechConfig& cfg) {
  cfg.validate();
  const double gauge = -0.5 * std::numbers::pi;

  constexpr std::size_t nf = 4;
  QuadraticHamiltonian full(nf);
  full.add(Complex(cfg.lambda), LinearForm::raising(nf, 2),
           LinearForm::lowering(nf, 0) + LinearForm::lowering(nf, 1) * cfg.eta);
  full.add(Complex(cfg.lambda), LinearForm::raising(nf, 3),
           LinearForm::raising(nf, 0) + LinearForm::raising(nf, 1) * cfg.eta);
  full.add(Complex(cfg.J), LinearForm::lowering(nf, 0), LinearForm::raising(nf, 1));
  const std::vector<Port> full_ports{Port{0, cfg.kappa, cfg.n_c1, "port1"}, Port{1, cfg.kappa, cfg.n_c2, "port2"},
                                     Port{2, cfg.gamma, cfg.n_m1, "mech1"}, Port{3, cfg.gamma, cfg.n_m2, "mech2"}};

  constexpr std::size_t ne = 2;
  QuadraticHamiltonian elim(ne);
  elim.add(Complex(cfg.J), LinearForm::lowering(ne, 0), LinearForm::raising(ne, 1));
  const double rate = adiabatic_effective_rate(cfg.lambda, cfg.gamma);
  const LinearForm z1 = LinearForm::lowering(ne, 0) + LinearForm::lowering(ne, 1) * cfg.eta;
  const LinearForm z2 = LinearForm::raising(ne, 0) + LinearForm::raising(ne, 1) * cfg.eta;
  const std::vector<Dissipator> reservoirs{Dissipator{z1, rate, cfg.n_m1, gauge, "mech1"},
                                           Dissipator{z2, rate, cfg.n_m2, gauge, "mech2"}};
  const std::vector<Port> elim_ports{Port{0, cfg.kappa, cfg.n_c1, "port1"}, Port{1, cfg.kappa, cfg.n_c2, "port2"}};

  return OptomechModels{gaussian::from_quadratic(full, {}, full_ports),
                        gaussian::from_quadratic(elim, reservoirs, elim_ports)};
}

}  // namespace nonrecip::models
