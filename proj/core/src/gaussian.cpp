#include "nonrecip/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "nonrecip/errors.hpp"

namespace nonrecip::gaussian {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_modes(std::size_t have, std::size_t want, const char* what) {
  if (have != want) {
    throw ValidationError(std::string(what) + ": expected " + std::to_string(want) + " modes, got " +
                          std::to_string(have));
  }
}

std::vector<fock::Operator> fock_quadratures(const fock::HilbertSpace& space) {
  std::vector<fock::Operator> r;
  for (std::size_t m = 0; m < space.num_modes(); ++m) {
    r.push_back(fock::quadrature_x(space, m));
    r.push_back(fock::quadrature_p(space, m));
  }
  return r;
}

}  // namespace

RealMatrix symplectic_form(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  RealMatrix omega = RealMatrix::Zero(n, n);
  for (Eigen::Index m = 0; m < n; m += 2) {
    omega(m, m + 1) = 1.0;
    omega(m + 1, m) = -1.0;
  }
  return omega;
}

// ---------------------------------------------------------------------------

LinearForm::LinearForm(ComplexVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0 || coeffs_.size() % 2 != 0) {
    throw ValidationError("linear form needs 2N quadrature coefficients");
  }
}

LinearForm LinearForm::zero(std::size_t n_modes) {
  return LinearForm(ComplexVector::Zero(static_cast<Eigen::Index>(2 * n_modes)));
}

LinearForm LinearForm::lowering(std::size_t n_modes, std::size_t mode) {
  if (mode >= n_modes) throw ValidationError("mode out of range");
  LinearForm f = zero(n_modes);
  f.coeffs_(static_cast<Eigen::Index>(2 * mode)) = kInvSqrt2;
  f.coeffs_(static_cast<Eigen::Index>(2 * mode + 1)) = kI * kInvSqrt2;
  return f;
}

LinearForm LinearForm::raising(std::size_t n_modes, std::size_t mode) { return lowering(n_modes, mode).dagger(); }

LinearForm LinearForm::x(std::size_t n_modes, std::size_t mode) {
  if (mode >= n_modes) throw ValidationError("mode out of range");
  LinearForm f = zero(n_modes);
  f.coeffs_(static_cast<Eigen::Index>(2 * mode)) = 1.0;
  return f;
}

LinearForm LinearForm::p(std::size_t n_modes, std::size_t mode) {
  if (mode >= n_modes) throw ValidationError("mode out of range");
  LinearForm f = zero(n_modes);
  f.coeffs_(static_cast<Eigen::Index>(2 * mode + 1)) = 1.0;
  return f;
}

LinearForm& LinearForm::operator+=(const LinearForm& rhs) {
  require_modes(rhs.n_modes(), n_modes(), "linear form sum");
  coeffs_ += rhs.coeffs_;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& rhs) {
  require_modes(rhs.n_modes(), n_modes(), "linear form difference");
  coeffs_ -= rhs.coeffs_;
  return *this;
}

LinearForm& LinearForm::operator*=(Complex s) {
  coeffs_ *= s;
  return *this;
}

fock::Operator LinearForm::to_operator(const fock::HilbertSpace& space) const {
  require_modes(space.num_modes(), n_modes(), "linear form to operator");
  const std::vector<fock::Operator> r = fock_quadratures(space);
  fock::Operator out = fock::Operator::zero(space);
  for (std::size_t j = 0; j < r.size(); ++j) {
    const Complex c = coeffs_(static_cast<Eigen::Index>(j));
    if (c != Complex(0.0)) out += r[j] * c;
  }
  return out;
}

// ---------------------------------------------------------------------------

QuadraticHamiltonian::QuadraticHamiltonian(std::size_t n_modes)
    : m_(RealMatrix::Zero(static_cast<Eigen::Index>(2 * n_modes), static_cast<Eigen::Index>(2 * n_modes))) {
  if (n_modes == 0) throw ValidationError("Hamiltonian needs at least one mode");
}

QuadraticHamiltonian::QuadraticHamiltonian(RealMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0 || m_.rows() % 2 != 0) {
    throw ValidationError("Hamiltonian matrix must be 2N x 2N");
  }
  if ((m_ - m_.transpose()).norm() > 1e-12 * std::max(1.0, m_.norm())) {
    throw ValidationError("Hamiltonian matrix must be symmetric");
  }
}

QuadraticHamiltonian& QuadraticHamiltonian::add(Complex coeff, const LinearForm& u, const LinearForm& v) {
  require_modes(u.n_modes(), n_modes(), "Hamiltonian term");
  require_modes(v.n_modes(), n_modes(), "Hamiltonian term");
  const RealMatrix c = 2.0 * (coeff * u.coeffs() * v.coeffs().transpose()).real();
  m_ += c + c.transpose();
  return *this;
}

QuadraticHamiltonian& QuadraticHamiltonian::add_matrix(const RealMatrix& m) {
  if (m.rows() != m_.rows() || m.cols() != m_.cols()) throw ValidationError("Hamiltonian matrix shape mismatch");
  m_ += 0.5 * (m + m.transpose());
  return *this;
}

fock::Operator QuadraticHamiltonian::to_operator(const fock::HilbertSpace& space) const {
  require_modes(space.num_modes(), n_modes(), "Hamiltonian to operator");
  const std::vector<fock::Operator> r = fock_quadratures(space);
  fock::Operator out = fock::Operator::zero(space);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double mij = m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (mij != 0.0) out += (r[i] * r[j]) * Complex(0.5 * mij);
    }
  }
  // Remove rounding asymmetry so the result passes Hermiticity checks.
  return fock::Operator(space, 0.5 * (out.matrix() + out.matrix().adjoint()));
}

// ---------------------------------------------------------------------------

GaussianModel::GaussianModel(std::size_t n_modes, RealMatrix drift, RealMatrix diffusion,
                             std::vector<Channel> channels)
    : n_modes_(n_modes), drift_(std::move(drift)), diffusion_(std::move(diffusion)), channels_(std::move(channels)) {
  const auto n = static_cast<Eigen::Index>(2 * n_modes_);
  if (n_modes_ == 0) throw ValidationError("Gaussian model needs at least one mode");
  if (drift_.rows() != n || drift_.cols() != n || diffusion_.rows() != n || diffusion_.cols() != n) {
    throw ValidationError("drift and diffusion must be 2N x 2N");
  }
  const double scale = std::max(1.0, diffusion_.norm());
  if ((diffusion_ - diffusion_.transpose()).norm() > 1e-10 * scale) {
    throw ValidationError("diffusion matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (diffusion_ + diffusion_.transpose()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw ValidationError("diffusion matrix is not positive semidefinite (eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    const Channel& ch = channels_[c];
    if (ch.injection.rows() != n || ch.injection.cols() != 2 || ch.readout.rows() != 2 || ch.readout.cols() != n) {
      throw ValidationError("channel '" + ch.label + "' has malformed coupling matrices");
    }
    if (!(ch.occupation >= 0.0)) throw ValidationError("channel occupation must be >= 0");
    if (ch.is_port) ports_.push_back(c);
  }
}

std::size_t GaussianModel::channel_index(const std::string& label) const {
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    if (channels_[c].label == label) return c;
  }
  throw ValidationError("no channel labelled '" + label + "'");
}

double GaussianModel::max_growth_rate() const {
  Eigen::EigenSolver<RealMatrix> es(drift_, false);
  return es.eigenvalues().real().maxCoeff();
}

bool GaussianModel::is_stable() const { return max_growth_rate() < -1e-12 * std::max(1.0, drift_.norm()); }

GaussianModel from_quadratic(const QuadraticHamiltonian& h, const std::vector<Dissipator>& dissipators,
                             const std::vector<Port>& ports) {
  const std::size_t n_modes = h.n_modes();
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  const RealMatrix omega = symplectic_form(n_modes);
  RealMatrix drift = omega * h.matrix();
  RealMatrix diffusion = RealMatrix::Zero(n, n);
  std::vector<Channel> channels;

  for (const Dissipator& d : dissipators) {
    require_modes(d.jump.n_modes(), n_modes, "dissipator");
    if (!(d.rate >= 0.0) || !std::isfinite(d.rate)) throw ValidationError("dissipator rate must be >= 0");
    if (!(d.occupation >= 0.0) || !std::isfinite(d.occupation)) {
      throw ValidationError("dissipator occupation must be >= 0");
    }
    const ComplexVector& c = d.jump.coeffs();
    const ComplexMatrix cc = c * c.adjoint();
    drift -= d.rate * omega * cc.imag();
    const Complex phase = std::exp(kI * d.input_phase);
    const ComplexVector w = -kI * std::sqrt(d.rate) * phase * (omega.cast<Complex>() * c.conjugate());
    Channel ch;
    ch.label = d.label;
    ch.occupation = d.occupation;
    ch.injection.resize(n, 2);
    ch.injection.col(0) = std::sqrt(2.0) * w.real();
    ch.injection.col(1) = -std::sqrt(2.0) * w.imag();
    const ComplexVector out = std::sqrt(d.rate) * std::conj(phase) * c;
    ch.readout.resize(2, n);
    ch.readout.row(0) = std::sqrt(2.0) * out.real().transpose();
    ch.readout.row(1) = std::sqrt(2.0) * out.imag().transpose();
    diffusion += (d.occupation + 0.5) * ch.injection * ch.injection.transpose();
    channels.push_back(std::move(ch));
  }

  for (const Port& p : ports) {
    if (p.mode >= n_modes) throw ValidationError("port mode out of range");
    if (!(p.kappa >= 0.0) || !std::isfinite(p.kappa)) throw ValidationError("port kappa must be >= 0");
    if (!(p.occupation >= 0.0) || !std::isfinite(p.occupation)) throw ValidationError("port occupation must be >= 0");
    const auto row = static_cast<Eigen::Index>(2 * p.mode);
    const double sk = std::sqrt(p.kappa);
    drift(row, row) -= 0.5 * p.kappa;
    drift(row + 1, row + 1) -= 0.5 * p.kappa;
    diffusion(row, row) += p.kappa * (p.occupation + 0.5);
    diffusion(row + 1, row + 1) += p.kappa * (p.occupation + 0.5);
    Channel ch;
    ch.label = p.label;
    ch.occupation = p.occupation;
    ch.is_port = true;
    ch.mode = p.mode;
    ch.injection = RealMatrix::Zero(n, 2);
    ch.injection(row, 0) = -sk;
    ch.injection(row + 1, 1) = -sk;
    ch.readout = RealMatrix::Zero(2, n);
    ch.readout(0, row) = sk;
    ch.readout(1, row + 1) = sk;
    channels.push_back(std::move(ch));
  }
  return GaussianModel(n_modes, std::move(drift), std::move(diffusion), std::move(channels));
}

master::LindbladModel to_lindblad(const QuadraticHamiltonian& h, const std::vector<Dissipator>& dissipators,
                                  const std::vector<Port>& ports, const fock::HilbertSpace& space) {
  std::vector<master::JumpTerm> jumps;
  for (const Dissipator& d : dissipators) {
    const fock::Operator o = d.jump.to_operator(space);
    jumps.push_back({d.rate * (d.occupation + 1.0), o});
    if (d.occupation > 0.0) jumps.push_back({d.rate * d.occupation, o.dagger()});
  }
  for (const Port& p : ports) {
    const fock::Operator a = fock::annihilation(space, p.mode);
    jumps.push_back({p.kappa * (p.occupation + 1.0), a});
    if (p.occupation > 0.0) jumps.push_back({p.kappa * p.occupation, a.dagger()});
  }
  return master::LindbladModel(h.to_operator(space), std::move(jumps));
}

// ---------------------------------------------------------------------------

Moments vacuum_moments(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  return Moments{RealVector::Zero(n), 0.5 * RealMatrix::Identity(n, n)};
}

Moments propagate(const GaussianModel& model, const Moments& initial, double t) {
  const RealMatrix& a = model.drift();
  const auto n = a.rows();
  if (initial.mean.size() != n || initial.covariance.rows() != n || initial.covariance.cols() != n) {
    throw ValidationError("initial moments do not match the model");
  }
  if (!(t >= 0.0)) throw ValidationError("propagation time must be >= 0");
  // Van Loan: exp([[-A, D], [0, A^T]] t) holds exp(A^T t) and the noise integral.
  RealMatrix block = RealMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = -a;
  block.topRightCorner(n, n) = model.diffusion();
  block.bottomRightCorner(n, n) = a.transpose();
  const RealMatrix f = (block * t).exp();
  const RealMatrix phi_t = f.bottomRightCorner(n, n).transpose();
  const RealMatrix q = f.bottomRightCorner(n, n).transpose() * f.topRightCorner(n, n);
  Moments out;
  out.mean = phi_t * initial.mean;
  out.covariance = phi_t * initial.covariance * phi_t.transpose() + q;
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

RealMatrix solve_lyapunov(const RealMatrix& a, const RealMatrix& d) {
  const auto n = a.rows();
  if (a.cols() != n || d.rows() != n || d.cols() != n) throw ValidationError("Lyapunov operands must be square");
  const RealMatrix id = RealMatrix::Identity(n, n);
  const RealMatrix op = Eigen::kroneckerProduct(id, a) + Eigen::kroneckerProduct(a, id);
  const RealVector rhs = -Eigen::Map<const RealVector>(d.data(), n * n);
  Eigen::FullPivLU<RealMatrix> lu(op);
  if (!lu.isInvertible()) throw NumericalError("Lyapunov operator is singular");
  const RealVector v = lu.solve(rhs);
  RealMatrix out = Eigen::Map<const RealMatrix>(v.data(), n, n);
  out = 0.5 * (out + out.transpose()).eval();
  const double residual = (a * out + out * a.transpose() + d).norm();
  if (residual > 1e-10 * std::max(1.0, d.norm())) {
    throw NumericalError("Lyapunov residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return out;
}

RealMatrix lyapunov_steady(const GaussianModel& model) {
  if (!model.is_stable()) {
    throw NumericalError("drift is unstable (max growth rate " + std::to_string(model.max_growth_rate()) + ")");
  }
  return solve_lyapunov(model.drift(), model.diffusion());
}

// ---------------------------------------------------------------------------

namespace {

ComplexMatrix resolvent(const GaussianModel& model, double omega) {
  const auto n = model.drift().rows();
  const ComplexMatrix m = Complex(0.0, -omega) * ComplexMatrix::Identity(n, n) - model.drift().cast<Complex>();
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  if (!(lu.rcond() > 1e-14)) {
    throw NumericalError("(-i w - A) is singular at w = " + std::to_string(omega));
  }
  return lu.inverse();
}

ComplexMatrix scatter_subset(const GaussianModel& model, double omega, const std::vector<std::size_t>& subset) {
  const ComplexMatrix g = resolvent(model, omega);
  const auto k = static_cast<Eigen::Index>(2 * subset.size());
  const auto n = model.drift().rows();
  RealMatrix inj(n, k);
  RealMatrix read(k, n);
  for (std::size_t s = 0; s < subset.size(); ++s) {
    const Channel& ch = model.channels()[subset[s]];
    inj.middleCols(static_cast<Eigen::Index>(2 * s), 2) = ch.injection;
    read.middleRows(static_cast<Eigen::Index>(2 * s), 2) = ch.readout;
  }
  return ComplexMatrix::Identity(k, k) + read.cast<Complex>() * g * inj.cast<Complex>();
}

}  // namespace

ScatteringMatrix scattering(const GaussianModel& model, double omega) {
  if (model.port_channels().empty()) throw ValidationError("model has no ports");
  return ScatteringMatrix{omega, scatter_subset(model, omega, model.port_channels())};
}

ComplexMatrix channel_scattering(const GaussianModel& model, double omega) {
  std::vector<std::size_t> all(model.channels().size());
  for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
  return scatter_subset(model, omega, all);
}

ComplexMatrix port_block(const ScatteringMatrix& s, std::size_t out, std::size_t in) {
  const auto ports = static_cast<std::size_t>(s.s.rows() / 2);
  if (out >= ports || in >= ports) throw ValidationError("port index out of range");
  return s.s.block(static_cast<Eigen::Index>(2 * out), static_cast<Eigen::Index>(2 * in), 2, 2);
}

double block_gain(const ComplexMatrix& block) { return 0.5 * block.squaredNorm(); }

}  // namespace nonrecip::gaussian
