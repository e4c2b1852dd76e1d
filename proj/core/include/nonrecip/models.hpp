#pragma once

// Scenario builders: cascaded waveguide mapping, Hermitian decomposition, the
// two-reservoir amplifier, reservoir memory via auxiliary modes, and the
// optomechanical realization.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "nonrecip/fock.hpp"
#include "nonrecip/gaussian.hpp"
#include "nonrecip/master.hpp"

namespace nonrecip::models {

using Complex = std::complex<double>;
using fock::Operator;
using gaussian::Dissipator;
using gaussian::GaussianModel;
using gaussian::LinearForm;
using gaussian::Port;
using gaussian::QuadraticHamiltonian;
using master::RecipeParams;

/// Quadratic Hamiltonian plus linear dissipators and ports; convertible to
/// either representation.
struct LinearSystem {
  QuadraticHamiltonian hamiltonian;
  std::vector<Dissipator> dissipators;
  std::vector<Port> ports;

  std::size_t n_modes() const { return hamiltonian.n_modes(); }
  GaussianModel gaussian() const;
  master::LindbladModel lindblad(const fock::HilbertSpace& space) const;
};

// --- chiral waveguide ------------------------------------------------------

struct WaveguideParams {
  double kappa_A = 0.0;
  double kappa_B = 0.0;
};

struct CascadedMapping {
  RecipeParams recipe;
  /// B_recipe = b_gauge * B_waveguide.
  Complex b_gauge{0.0, -1.0};
};

/// lam = sqrt(kA kB), Gamma = kA, eta = sqrt(kB/kA), phi = -pi/2.
CascadedMapping cascaded_params(const WaveguideParams& w);

/// Cascaded master equation of A (upstream, emitting through A) and B
/// (downstream, coupled through B^dag): L[c1 + c2] - (1/2)[c2^dag c1 - c1^dag c2, .]
/// with c1 = sqrt(kA) A, c2 = sqrt(kB) B^dag.
master::LindbladModel cascaded_model(const Operator& A, const Operator& B, const WaveguideParams& w);

/// Two-dissipator model from A = A1 + i A2, B = B1 + i B2:
/// H = lam (A1 B1 - A2 B2), Gamma L[A1 + e^{i phi} eta B1] + Gamma L[A2 - e^{i phi} eta B2].
/// The second dissipator is dropped when A2 = B2 = 0.
master::LindbladModel hermitian_decomposition(const Operator& A, const Operator& B, const RecipeParams& p);

/// The recipe for linear coupling forms, with optional local ports.
LinearSystem linear_recipe(const LinearForm& A, const LinearForm& B, const RecipeParams& p,
                           const std::vector<Port>& ports = {});

// --- two-reservoir amplifier ----------------------------------------------

/// plus: J (X1 X2 + P1 P2), beam splitter. minus: J (X1 X2 - P1 P2), amplifier.
enum class CoherentSign { plus, minus };
enum class DissipatorBasis { quadrature, d_basis };

double sign_value(CoherentSign s);
std::string to_string(CoherentSign s);
std::string to_string(DissipatorBasis b);

struct AmplifierConfig {
  double J = 0.0;
  double Gamma = 0.0;
  double eta = 0.0;
  double kappa = 1.0;
  CoherentSign sign = CoherentSign::minus;
  double n_r1 = 0.0;
  double n_r2 = 0.0;
  double n_1 = 0.0;
  double n_2 = 0.0;
  DissipatorBasis basis = DissipatorBasis::quadrature;

  bool directional(double tol = 1e-12) const;
  void validate() const;

  /// Directional and at the zero-temperature noise optimum:
  /// Gamma = kappa/4, eta = sqrt(G0)/2, J = eta Gamma.
  static AmplifierConfig tuned(double g0, double kappa, CoherentSign sign);
};

/// Modes (cavity 1, cavity 2); ports "port1", "port2"; reservoirs "r1", "r2".
/// quadrature: Gamma L[X1 - i eta X2] and Gamma L[P1 - i s eta P2] (s = +1 for plus).
/// d_basis, plus: d1 - i eta d2 and d1^dag - i eta d2^dag;
/// d_basis, minus: d1 - i eta d2^dag and d1^dag - i eta d2.
LinearSystem amplifier_system(const AmplifierConfig& cfg);
GaussianModel amplifier_model(const AmplifierConfig& cfg);
master::LindbladModel amplifier_fock_model(const AmplifierConfig& cfg, std::size_t truncation);

struct NoiseOptimum {
  double Gamma = 0.0;
  double eta = 0.0;
  double n_add = 0.0;
};

/// Minimizes the zero-frequency added noise over Gamma with J fixed and
/// eta = J / Gamma (directional), using the occupations in cfg.
NoiseOptimum locate_noise_optimum(const AmplifierConfig& cfg);

/// 4 |lam|^2 / gamma.
double adiabatic_effective_rate(double lambda, double gamma);

/// Pump-mediated reservoir: cavities (0, 1) plus an auxiliary mode c (2) with
/// H = lam c^dag z + h.c. and decay gamma, next to the eliminated form
/// (4 lam^2/gamma) L[z]. Both carry ports kappa on the cavities.
struct AuxiliaryPair {
  GaussianModel full;
  GaussianModel eliminated;
};
AuxiliaryPair auxiliary_reservoir(const LinearForm& z, double lambda, double gamma, double kappa);

// --- reservoir memory (auxiliary-mode reservoirs) ---------------------------

struct NonMarkovConfig {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gamma = 0.0;
  double kappa = 1.0;
  double J = 0.0;
  CoherentSign sign = CoherentSign::minus;

  bool directional(double tol = 1e-12) const;
  void validate() const;
  double g0() const;

  /// J = kappa sqrt(G0)/8 and lambda1 = lambda2 = sqrt(J gamma / 2).
  static NonMarkovConfig tuned(double g0, double gamma, double kappa, CoherentSign sign);
};

/// Modes (cavity 1, cavity 2, aux 1, aux 2); ports "port1", "port2" (kappa) then
/// "aux1", "aux2" (gamma). Aux quadratures: V_n is X of aux n, U_n is -P of aux n.
GaussianModel nonmarkovian_model(const NonMarkovConfig& cfg);

struct ClosedFormGain {
  double forward = 0.0;
  double reverse = 0.0;
};
ClosedFormGain closed_form_gains(const NonMarkovConfig& cfg, double omega);

/// Local maxima whose topographic prominence is at least `min_prominence`.
std::vector<std::size_t> find_peaks(const std::vector<double>& values, double min_prominence);

// --- optomechanical realization ---------------------------------------------

struct OptomechConfig {
  double lambda = 0.0;
  double gamma = 0.0;
  double J = 0.0;
  double kappa = 1.0;
  Complex eta{0.0, 0.0};
  double n_m1 = 0.0;
  double n_m2 = 0.0;
  double n_c1 = 0.0;
  double n_c2 = 0.0;

  /// i (2 lam^2/gamma)(eta - eta^*) == J.
  bool directional(double tol = 1e-12) const;
  void validate() const;

  /// 4 lam^2/gamma = kappa/4, eta = (i/2) sqrt(G0), J from the directionality
  /// condition (J = -kappa sqrt(G0)/8).
  static OptomechConfig tuned(double g0, double gamma, double kappa);
};

struct OptomechModels {
  /// Modes (d1, d2, b1, b2); ports "port1", "port2", "mech1", "mech2".
  GaussianModel full;
  /// Modes (d1, d2); reservoirs "mech1", "mech2" as input channels, then ports.
  GaussianModel eliminated;
};
OptomechModels optomech_model(const OptomechConfig& cfg);

/// 2x2 quadrature block of out = alpha * in + beta * in^dag.
gaussian::ComplexMatrix mode_coefficient_block(Complex alpha, Complex beta);

}  // namespace nonrecip::models
