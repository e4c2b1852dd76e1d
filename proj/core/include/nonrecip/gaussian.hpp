#pragma once

// Linear (quadratic-Hamiltonian) bosonic models in quadrature space.
//
// r = (X_1, P_1, ..., X_N, P_N), X = (d + d^dag)/sqrt(2), P = -i(d - d^dag)/sqrt(2),
// [r_i, r_j] = i Omega_ij, covariance V = <{dr, dr}>/2 (vacuum: I/2).
//
// Every dissipator and every port is an input channel with two quadrature
// noise inputs xi of symmetrized spectrum (nbar + 1/2) I:
//   dr/dt = A r + sum_ch N_ch xi_ch,   xi_ch,out = xi_ch + M_ch r.
// Ports use d_out = d_in + sqrt(kappa) d, so N = -sqrt(kappa) and M = sqrt(kappa)
// on the port quadratures. Fourier convention r(w) = int r(t) e^{i w t} dt.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nonrecip/fock.hpp"
#include "nonrecip/master.hpp"

namespace nonrecip::gaussian {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Block-diagonal [[0, 1], [-1, 0]] over n_modes.
RealMatrix symplectic_form(std::size_t n_modes);

/// Operator c . r, linear in the quadratures.
class LinearForm {
 public:
  explicit LinearForm(ComplexVector coeffs);

  static LinearForm zero(std::size_t n_modes);
  static LinearForm lowering(std::size_t n_modes, std::size_t mode);
  static LinearForm raising(std::size_t n_modes, std::size_t mode);
  static LinearForm x(std::size_t n_modes, std::size_t mode);
  static LinearForm p(std::size_t n_modes, std::size_t mode);

  std::size_t n_modes() const { return static_cast<std::size_t>(coeffs_.size() / 2); }
  const ComplexVector& coeffs() const { return coeffs_; }
  LinearForm dagger() const { return LinearForm(coeffs_.conjugate()); }

  LinearForm& operator+=(const LinearForm& rhs);
  LinearForm& operator-=(const LinearForm& rhs);
  LinearForm& operator*=(Complex s);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(LinearForm a, Complex s) { return a *= s; }
  friend LinearForm operator*(Complex s, LinearForm a) { return a *= s; }

  /// The same operator on a truncated Fock space with matching mode count.
  fock::Operator to_operator(const fock::HilbertSpace& space) const;

 private:
  ComplexVector coeffs_;
};

/// H = (1/2) r^T M r with real symmetric M (constant offsets dropped).
class QuadraticHamiltonian {
 public:
  explicit QuadraticHamiltonian(std::size_t n_modes);
  explicit QuadraticHamiltonian(RealMatrix m);

  /// Adds coeff (u . r)(v . r) + h.c.
  QuadraticHamiltonian& add(Complex coeff, const LinearForm& u, const LinearForm& v);
  QuadraticHamiltonian& add_matrix(const RealMatrix& m);

  std::size_t n_modes() const { return static_cast<std::size_t>(m_.rows() / 2); }
  const RealMatrix& matrix() const { return m_; }
  fock::Operator to_operator(const fock::HilbertSpace& space) const;

 private:
  RealMatrix m_;
};

/// Thermal reservoir: rate (nbar + 1) L[o] + rate nbar L[o^dag]. input_phase
/// fixes the phase convention of the channel's output field.
struct Dissipator {
  LinearForm jump;
  double rate = 0.0;
  double occupation = 0.0;
  double input_phase = 0.0;
  std::string label;
};

/// Waveguide port on one mode.
struct Port {
  std::size_t mode = 0;
  double kappa = 0.0;
  double occupation = 0.0;
  std::string label;
};

struct Channel {
  std::string label;
  RealMatrix injection;  // 2N x 2
  RealMatrix readout;    // 2 x 2N
  double occupation = 0.0;
  bool is_port = false;
  std::size_t mode = 0;  // ports only
};

class GaussianModel {
 public:
  /// Validates shapes and that D is symmetric PSD within 1e-10.
  GaussianModel(std::size_t n_modes, RealMatrix drift, RealMatrix diffusion, std::vector<Channel> channels);

  std::size_t n_modes() const { return n_modes_; }
  const RealMatrix& drift() const { return drift_; }
  const RealMatrix& diffusion() const { return diffusion_; }
  const std::vector<Channel>& channels() const { return channels_; }
  /// Channel indices of the ports, in construction order.
  const std::vector<std::size_t>& port_channels() const { return ports_; }
  std::size_t channel_index(const std::string& label) const;

  /// All drift eigenvalues have negative real part.
  bool is_stable() const;
  double max_growth_rate() const;

 private:
  std::size_t n_modes_;
  RealMatrix drift_;
  RealMatrix diffusion_;
  std::vector<Channel> channels_;
  std::vector<std::size_t> ports_;
};

GaussianModel from_quadratic(const QuadraticHamiltonian& h, const std::vector<Dissipator>& dissipators,
                             const std::vector<Port>& ports);

/// The same dynamics as a Fock-space Lindblad model (thermal reservoirs become
/// the jump pair o, o^dag).
master::LindbladModel to_lindblad(const QuadraticHamiltonian& h, const std::vector<Dissipator>& dissipators,
                                  const std::vector<Port>& ports, const fock::HilbertSpace& space);

struct Moments {
  RealVector mean;
  RealMatrix covariance;
};

Moments vacuum_moments(std::size_t n_modes);
/// Exact propagation over time t.
Moments propagate(const GaussianModel& model, const Moments& initial, double t);
/// Solves A V + V A^T + D = 0; throws NumericalError when unstable or when the
/// residual exceeds 1e-10.
RealMatrix lyapunov_steady(const GaussianModel& model);
RealMatrix solve_lyapunov(const RealMatrix& a, const RealMatrix& d);

struct ScatteringMatrix {
  double omega = 0.0;
  ComplexMatrix s;
};

/// Port-only block: s = I - K^T (-i w - A)^{-1} K, ports in construction order.
ScatteringMatrix scattering(const GaussianModel& model, double omega);
/// All channels: S = I + M (-i w - A)^{-1} N, channel blocks in model order.
ComplexMatrix channel_scattering(const GaussianModel& model, double omega);

/// 2x2 block of `s` mapping port `in` to port `out`.
ComplexMatrix port_block(const ScatteringMatrix& s, std::size_t out, std::size_t in);
/// Photon-number gain of a 2x2 quadrature block: ||block||_F^2 / 2.
double block_gain(const ComplexMatrix& block);

struct GainCurve {
  std::vector<double> omega;
  std::vector<double> forward;  // port in -> port out
  std::vector<double> reverse;  // port out -> port in
};

GainCurve gains(const GaussianModel& model, const std::vector<double>& omega_grid, std::size_t in_port,
                std::size_t out_port);
/// Full width at half maximum of the forward gain around w = 0.
double gain_fwhm(const GaussianModel& model, std::size_t in_port, std::size_t out_port);

/// Symmetrized output spectrum (2x2) at port `out_port`.
ComplexMatrix output_noise_spectrum(const GaussianModel& model, std::size_t out_port, double omega);

struct NoiseContribution {
  std::string label;
  double quanta = 0.0;  // referred to the input
};

struct NoiseReport {
  double g0 = 0.0;
  double n_add = 0.0;
  std::vector<NoiseContribution> breakdown;
};

/// Output noise at `out_port` from every channel except the signal port,
/// divided by the gain from the signal port.
NoiseReport added_noise(const GaussianModel& model, std::size_t signal_port, std::size_t out_port,
                        double omega = 0.0);

/// V + i Omega / 2 is PSD within tol.
bool is_physical(const RealMatrix& covariance, double tol = 1e-8);
/// Logarithmic negativity across (a_modes | rest).
double log_negativity(const RealMatrix& covariance, const std::vector<std::size_t>& a_modes);

/// Fock-space quadrature means and covariance of `rho`.
Moments fock_moments(const fock::DensityMatrix& rho);

}  // namespace nonrecip::gaussian
