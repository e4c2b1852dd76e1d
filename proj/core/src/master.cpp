#include "nonrecip/master.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "nonrecip/errors.hpp"

namespace nonrecip::master {

namespace {

constexpr Complex kI{0.0, 1.0};

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

void require_commuting(const Operator& A, const Operator& B) {
  if (!(A.space() == B.space())) throw ValidationError("A and B live on different spaces");
  const double c = fock::commutator(A, B).matrix().norm();
  if (c > 1e-10) {
    throw ValidationError("coupling operators must commute, ||[A,B]|| = " + std::to_string(c));
  }
}

Matrix vec_to_matrix(const Eigen::VectorXcd& v, Eigen::Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

}  // namespace

LindbladModel::LindbladModel(Operator hamiltonian, std::vector<JumpTerm> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  const double herm = (hamiltonian_.matrix() - hamiltonian_.matrix().adjoint()).norm();
  if (herm > 1e-12 * std::max(1.0, hamiltonian_.matrix().norm())) {
    throw ValidationError("Hamiltonian is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  for (const JumpTerm& j : jumps_) {
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) {
      throw ValidationError("jump rate must be finite and >= 0, got " + std::to_string(j.rate));
    }
    if (!(j.op.space() == hamiltonian_.space())) {
      throw ValidationError("jump operator lives on a different space than the Hamiltonian");
    }
  }
}

Generator::Generator(const LindbladModel& model) : model_(model) { prepare(); }

Generator::Generator(LindbladModel model, std::vector<SandwichTerm> extra)
    : model_(std::move(model)), extra_(std::move(extra)) {
  const auto d = static_cast<Eigen::Index>(model_.space().dim());
  for (const SandwichTerm& s : extra_) {
    if (s.left.rows() != d || s.left.cols() != d || s.right.rows() != d || s.right.cols() != d) {
      throw ValidationError("sandwich term does not match the space dimension");
    }
  }
  prepare();
}

void Generator::prepare() {
  const Matrix& h = model_.hamiltonian().matrix();
  h_eff_ = h;
  rate_bound_ = spectral_norm(h);
  scaled_jumps_.clear();
  for (const JumpTerm& j : model_.jumps()) {
    if (j.rate == 0.0) continue;
    const Matrix o = std::sqrt(j.rate) * j.op.matrix();
    h_eff_ -= 0.5 * kI * (o.adjoint() * o);
    scaled_jumps_.push_back(o);
    const double n = spectral_norm(o);
    rate_bound_ = std::max(rate_bound_, n * n);
  }
  for (const SandwichTerm& s : extra_) {
    rate_bound_ = std::max(rate_bound_, std::abs(s.coeff) * spectral_norm(s.left) * spectral_norm(s.right));
  }
}

Matrix Generator::apply(const Matrix& rho) const {
  Matrix out = -kI * (h_eff_ * rho);
  out += kI * (rho * h_eff_.adjoint());
  for (const Matrix& o : scaled_jumps_) out.noalias() += o * rho * o.adjoint();
  for (const SandwichTerm& s : extra_) out.noalias() += s.coeff * (s.left * rho * s.right);
  return out;
}

double Generator::rate_bound() const { return rate_bound_; }

Superoperator sandwich_matrix(const Matrix& left, const Matrix& right) {
  return Eigen::kroneckerProduct(right.transpose(), left);
}

Superoperator dissipator_matrix(const Operator& op) {
  const Matrix& o = op.matrix();
  const auto d = o.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix odo = o.adjoint() * o;
  return sandwich_matrix(o, o.adjoint()) - 0.5 * sandwich_matrix(odo, id) - 0.5 * sandwich_matrix(id, odo);
}

Superoperator liouvillian_matrix(const Generator& gen) {
  const LindbladModel& m = gen.lindblad_part();
  const Matrix& h = m.hamiltonian().matrix();
  const auto d = h.rows();
  const Matrix id = Matrix::Identity(d, d);
  Superoperator L = -kI * sandwich_matrix(h, id) + kI * sandwich_matrix(id, h);
  for (const JumpTerm& j : m.jumps()) {
    if (j.rate != 0.0) L += j.rate * dissipator_matrix(j.op);
  }
  for (const SandwichTerm& s : gen.extra()) L += s.coeff * sandwich_matrix(s.left, s.right);
  return L;
}

// ---------------------------------------------------------------------------

bool RecipeParams::directional(double tol) const {
  const double half_pi = 0.5 * std::numbers::pi;
  const bool balanced = std::abs(Gamma * eta - lam) <= tol * std::max(1.0, std::abs(lam));
  const bool phase = std::abs(std::abs(phi) - half_pi) <= tol;
  return balanced && phase;
}

void RecipeParams::validate() const {
  if (!(lam >= 0.0) || !(Gamma >= 0.0) || !(eta >= 0.0) || !std::isfinite(phi) || !std::isfinite(lam) ||
      !std::isfinite(Gamma) || !std::isfinite(eta)) {
    throw ValidationError("recipe parameters need finite lam, Gamma, eta >= 0 and finite phi");
  }
}

void FeedforwardParams::validate() const {
  if (!(k >= 0.0) || !(alpha_ff >= 0.0) || !(tau >= 0.0) || !std::isfinite(k) || !std::isfinite(alpha_ff) ||
      !std::isfinite(tau)) {
    throw ValidationError("feed-forward parameters need finite k, alpha_ff, tau >= 0");
  }
}

LindbladModel build_directional_model(const Operator& A, const Operator& B, const RecipeParams& p) {
  p.validate();
  require_commuting(A, B);
  const Operator ab = A * B;
  const Operator h = (ab + ab.dagger()) * Complex(0.5 * p.lam);
  const Operator jump = A + B.dagger() * (p.eta * std::exp(kI * p.phi));
  return LindbladModel(h, {JumpTerm{p.Gamma, jump}});
}

LindbladModel build_alternate_model(const Operator& A, const Operator& B, const RecipeParams& p) {
  p.validate();
  require_commuting(A, B);
  const Operator ab = A * B;
  const Operator h = (ab + ab.dagger()) * Complex(0.5 * p.lam);
  const Operator jump = A.dagger() - B * (p.eta * std::exp(-kI * p.phi));
  return LindbladModel(h, {JumpTerm{p.Gamma, jump}});
}

Generator build_feedforward_model(const Operator& A, const Operator& B, const FeedforwardParams& p) {
  p.validate();
  if (p.tau != 0.0) throw ValidationError("the feedback master equation needs tau = 0");
  if (!A.is_hermitian(1e-12) || !B.is_hermitian(1e-12)) {
    throw ValidationError("feed-forward needs Hermitian A and B");
  }
  require_commuting(A, B);
  LindbladModel lindblad(Operator::zero(A.space()), {JumpTerm{0.25 * p.k, A}, JumpTerm{p.alpha_ff, B}});
  const Complex c = -0.5 * kI * std::sqrt(p.k * p.alpha_ff);
  const Matrix& a = A.matrix();
  const Matrix& b = B.matrix();
  const auto d = a.rows();
  const Matrix id = Matrix::Identity(d, d);
  // -i(g/2)[B, A rho + rho A] = c (BA rho + B rho A - A rho B - rho AB)
  std::vector<SandwichTerm> extra{
      {c, b * a, id},
      {c, b, a},
      {-c, a, b},
      {-c, id, a * b},
  };
  return Generator(std::move(lindblad), std::move(extra));
}

LindbladModel feedforward_lindblad_form(const Operator& A, const Operator& B, const FeedforwardParams& p) {
  p.validate();
  if (!A.is_hermitian(1e-12) || !B.is_hermitian(1e-12)) {
    throw ValidationError("feed-forward needs Hermitian A and B");
  }
  const Operator jump = A * Complex(std::sqrt(0.25 * p.k)) - B * (kI * std::sqrt(p.alpha_ff));
  const Operator h = fock::anticommutator(A, B) * Complex(0.25 * std::sqrt(p.k * p.alpha_ff));
  return LindbladModel(h, {JumpTerm{1.0, jump}});
}

FeedforwardParams ff_param_map(double Gamma, double eta) {
  if (!(Gamma >= 0.0) || !(eta >= 0.0)) throw ValidationError("ff_param_map needs Gamma, eta >= 0");
  return FeedforwardParams{4.0 * Gamma, eta * eta * Gamma, 0.0};
}

RecipeParams recipe_from_feedforward(const FeedforwardParams& p) {
  p.validate();
  RecipeParams r;
  r.Gamma = 0.25 * p.k;
  r.eta = p.k > 0.0 ? std::sqrt(4.0 * p.alpha_ff / p.k) : 0.0;
  if (p.k == 0.0 && p.alpha_ff > 0.0) {
    throw ValidationError("alpha_ff > 0 with k = 0 has no recipe counterpart");
  }
  r.lam = r.Gamma * r.eta;
  r.phi = -0.5 * std::numbers::pi;
  return r;
}

// ---------------------------------------------------------------------------

double default_time_step(const Generator& gen) {
  const double r = gen.rate_bound();
  return r > 0.0 ? 0.01 / r : 0.01;
}

Evolution evolve_sampled(const Generator& gen, const DensityMatrix& rho0, double t, double dt,
                         std::size_t sample_every) {
  if (!(rho0.space() == gen.space())) throw ValidationError("initial state does not match the generator space");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("evolution time must be finite and >= 0");
  if (!(dt > 0.0)) throw ValidationError("time step must be > 0");
  const auto steps = static_cast<std::size_t>(std::max(0.0, std::ceil(t / dt - 1e-9)));
  const double h = steps > 0 ? t / static_cast<double>(steps) : 0.0;

  Evolution ev;
  Matrix rho = rho0.matrix();
  ev.times.push_back(0.0);
  ev.states.push_back(rho);
  ev.max_edge_population = fock::edge_population(gen.space(), rho);
  for (std::size_t n = 1; n <= steps; ++n) {
    const Matrix k1 = gen.apply(rho);
    const Matrix k2 = gen.apply(rho + 0.5 * h * k1);
    const Matrix k3 = gen.apply(rho + 0.5 * h * k2);
    const Matrix k4 = gen.apply(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!rho.allFinite()) throw NumericalError("integration diverged at t = " + std::to_string(n * h));
    ev.max_edge_population = std::max(ev.max_edge_population, fock::edge_population(gen.space(), rho));
    if (n == steps || (sample_every > 0 && n % sample_every == 0)) {
      ev.times.push_back(static_cast<double>(n) * h);
      ev.states.push_back(rho);
    }
  }
  return ev;
}

DensityMatrix evolve(const Generator& gen, const DensityMatrix& rho0, double t, double dt) {
  Evolution ev = evolve_sampled(gen, rho0, t, dt, 0);
  return DensityMatrix(gen.space(), fock::hermitize_normalized(ev.states.back()));
}

DensityMatrix evolve_exact(const Generator& gen, const DensityMatrix& rho0, double t) {
  if (!(rho0.space() == gen.space())) throw ValidationError("initial state does not match the generator space");
  const Superoperator L = liouvillian_matrix(gen);
  const Superoperator prop = (L * Complex(t)).exp();
  const auto d = static_cast<Eigen::Index>(gen.space().dim());
  const Eigen::VectorXcd v = prop * Eigen::Map<const Eigen::VectorXcd>(rho0.matrix().data(), d * d);
  return DensityMatrix(gen.space(), fock::hermitize_normalized(vec_to_matrix(v, d)));
}

DensityMatrix steady_state(const Generator& gen) {
  const Superoperator L = liouvillian_matrix(gen);
  const auto d = static_cast<Eigen::Index>(gen.space().dim());
  Eigen::ComplexEigenSolver<Superoperator> solver(L, true);
  if (solver.info() != Eigen::Success) throw NumericalError("Liouvillian eigendecomposition failed");
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  const double scale = std::max(1.0, gen.rate_bound());
  const double zero_tol = 1e-8 * scale;
  Eigen::Index best = 0;
  std::size_t near_zero = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i).real() > 1e-10 * scale) {
      throw NumericalError("Liouvillian has an eigenvalue with positive real part " + std::to_string(ev(i).real()));
    }
    if (std::abs(ev(i)) < std::abs(ev(best))) best = i;
    if (std::abs(ev(i)) < zero_tol) ++near_zero;
  }
  if (near_zero > 1) {
    throw NumericalError("steady state is not unique: null-space multiplicity " + std::to_string(near_zero));
  }
  const Matrix rho = vec_to_matrix(solver.eigenvectors().col(best), d);
  return DensityMatrix(gen.space(), fock::hermitize_normalized(rho / rho.trace()));
}

}  // namespace nonrecip::master
