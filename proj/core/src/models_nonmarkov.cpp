#include <algorithm>
#include <cmath>

#include "nonrecip/errors.hpp"
#include "nonrecip/models.hpp"

namespace nonrecip::models {

bool NonMarkovConfig::directional(double tol) const {
  if (!(gamma > 0.0)) return false;
  return std::abs(J - 2.0 * lambda1 * lambda2 / gamma) <= tol * std::max(1.0, std::abs(J));
}

void NonMarkovConfig::validate() const {
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2) || !std::isfinite(J)) {
    throw ValidationError("couplings must be finite");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("auxiliary decay gamma must be > 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be > 0");
}

double NonMarkovConfig::g0() const {
  const double a = 8.0 * J / kappa;
  return a * a;
}

NonMarkovConfig NonMarkovConfig::tuned(double g0, double gamma, double kappa, CoherentSign sign) {
  if (!(g0 > 0.0)) throw ValidationError("target gain must be > 0");
  NonMarkovConfig cfg;
  cfg.gamma = gamma;
  cfg.kappa = kappa;
  cfg.sign = sign;
  cfg.J = kappa * std::sqrt(g0) / 8.0;
  cfg.lambda1 = cfg.lambda2 = std::sqrt(0.5 * cfg.J * gamma);
  cfg.validate();
  return cfg;
}

GaussianModel nonmarkovian_model(const NonMarkovConfig& cfg) {
  cfg.validate();
  constexpr std::size_t n = 4;
  const double s = sign_value(cfg.sign);
  QuadraticHamiltonian h(n);
  h.add(Complex(0.5 * cfg.J), LinearForm::x(n, 0), LinearForm::x(n, 1));
  h.add(Complex(0.5 * s * cfg.J), LinearForm::p(n, 0), LinearForm::p(n, 1));
  // lambda1 (X1 V1 + P1 V2), V_n = X of aux n
  h.add(Complex(0.5 * cfg.lambda1), LinearForm::x(n, 0), LinearForm::x(n, 2));
  h.add(Complex(0.5 * cfg.lambda1), LinearForm::p(n, 0), LinearForm::x(n, 3));
  // lambda2 (X2 U1 + s P2 U2), U_n = -P of aux n
  h.add(Complex(-0.5 * cfg.lambda2), LinearForm::x(n, 1), LinearForm::p(n, 2));
  h.add(Complex(-0.5 * s * cfg.lambda2), LinearForm::p(n, 1), LinearForm::p(n, 3));
  return gaussian::from_quadratic(h, {},
                                  {Port{0, cfg.kappa, 0.0, "port1"}, Port{1, cfg.kappa, 0.0, "port2"},
                                   Port{2, cfg.gamma, 0.0, "aux1"}, Port{3, cfg.gamma, 0.0, "aux2"}});
}

ClosedFormGain closed_form_gains(const NonMarkovConfig& cfg, double omega) {
  const Complex i{0.0, 1.0};
  const double g0 = cfg.g0();
  const double x = omega / cfg.gamma;
  const double y = omega / cfg.kappa;
  const double num = g0 * (1.0 + x * x) * (1.0 + 4.0 * x * x);
  const Complex a = (1.0 - 2.0 * i * x) * (1.0 - 2.0 * i * x) * (1.0 - 2.0 * i * y) * (1.0 - 2.0 * i * y);
  const Complex b = 0.25 * i * x * g0 * (1.0 - i * x);
  const Complex den = a - sign_value(cfg.sign) * b;
  ClosedFormGain out;
  out.forward = num / std::norm(den);
  out.reverse = x * x / (1.0 + x * x) * out.forward;
  return out;
}

std::vector<std::size_t> find_peaks(const std::vector<double>& values, double min_prominence) {
  std::vector<std::size_t> peaks;
  const std::size_t n = values.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(values[i] > values[i - 1])) continue;
    // Walk across a plateau; the peak sits at its middle.
    std::size_t j = i;
    while (j + 1 < n && values[j + 1] == values[i]) ++j;
    if (j + 1 >= n || !(values[j + 1] < values[i])) {
      i = j;
      continue;
    }
    const std::size_t peak = (i + j) / 2;
    const double h = values[peak];
    double left_min = h;
    for (std::size_t k = i; k-- > 0;) {
      if (values[k] > h) break;
      left_min = std::min(left_min, values[k]);
    }
    double right_min = h;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (values[k] > h) break;
      right_min = std::min(right_min, values[k]);
    }
    if (h - std::max(left_min, right_min) >= min_prominence) peaks.push_back(peak);
    i = j;
  }
  return peaks;
}

}  // namespace nonrecip::models
