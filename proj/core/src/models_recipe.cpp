#include <cmath>
#include <numbers>

#include "nonrecip/errors.hpp"
#include "nonrecip/models.hpp"

namespace nonrecip::models {

namespace {
constexpr Complex kI{0.0, 1.0};
}

GaussianModel LinearSystem::gaussian() const { return gaussian::from_quadratic(hamiltonian, dissipators, ports); }

master::LindbladModel LinearSystem::lindblad(const fock::HilbertSpace& space) const {
  return gaussian::to_lindblad(hamiltonian, dissipators, ports, space);
}

CascadedMapping cascaded_params(const WaveguideParams& w) {
  if (!(w.kappa_A >= 0.0) || !(w.kappa_B >= 0.0)) throw ValidationError("waveguide couplings must be >= 0");
  if (w.kappa_A == 0.0) {
    throw ValidationError("kappa_A = 0 leaves eta undefined");
  }
  CascadedMapping m;
  m.recipe.lam = std::sqrt(w.kappa_A * w.kappa_B);
  m.recipe.Gamma = w.kappa_A;
  m.recipe.eta = std::sqrt(w.kappa_B / w.kappa_A);
  m.recipe.phi = -0.5 * std::numbers::pi;
  return m;
}

master::LindbladModel cascaded_model(const Operator& A, const Operator& B, const WaveguideParams& w) {
  if (!(w.kappa_A >= 0.0) || !(w.kappa_B >= 0.0)) throw ValidationError("waveguide couplings must be >= 0");
  if (fock::commutator(A, B).matrix().norm() > 1e-10) throw ValidationError("A and B must commute");
  const Operator c1 = A * Complex(std::sqrt(w.kappa_A));
  const Operator c2 = B.dagger() * Complex(std::sqrt(w.kappa_B));
  // -(1/2)[X, rho] = -i[H, rho] with H = -(i/2) X, X = c2^dag c1 - c1^dag c2.
  const Operator x = c2.dagger() * c1 - c1.dagger() * c2;
  const Operator h = x * Complex(0.0, -0.5);
  return master::LindbladModel(fock::Operator(h.space(), 0.5 * (h.matrix() + h.matrix().adjoint())),
                               {master::JumpTerm{1.0, c1 + c2}});
}

master::LindbladModel hermitian_decomposition(const Operator& A, const Operator& B, const RecipeParams& p) {
  p.validate();
  if (fock::commutator(A, B).matrix().norm() > 1e-10) throw ValidationError("A and B must commute");
  const Operator a1 = (A + A.dagger()) * Complex(0.5);
  const Operator a2 = (A - A.dagger()) * Complex(0.0, -0.5);
  const Operator b1 = (B + B.dagger()) * Complex(0.5);
  const Operator b2 = (B - B.dagger()) * Complex(0.0, -0.5);
  const Complex phase = std::exp(kI * p.phi);
  const Operator h = (a1 * b1 - a2 * b2) * Complex(p.lam);
  std::vector<master::JumpTerm> jumps{{p.Gamma, a1 + b1 * (phase * p.eta)}};
  if (a2.matrix().norm() > 1e-14 || b2.matrix().norm() > 1e-14) {
    jumps.push_back({p.Gamma, a2 - b2 * (phase * p.eta)});
  }
  return master::LindbladModel(fock::Operator(h.space(), 0.5 * (h.matrix() + h.matrix().adjoint())),
                               std::move(jumps));
}

LinearSystem linear_recipe(const LinearForm& A, const LinearForm& B, const RecipeParams& p,
                           const std::vector<Port>& ports) {
  p.validate();
  if (A.n_modes() != B.n_modes()) throw ValidationError("coupling forms have different mode counts");
  QuadraticHamiltonian h(A.n_modes());
  h.add(Complex(0.5 * p.lam), A, B);
  const LinearForm jump = A + B.dagger() * (p.eta * std::exp(kI * p.phi));
  return LinearSystem{h, {Dissipator{jump, p.Gamma, 0.0, 0.0, "recipe"}}, ports};
}

gaussian::ComplexMatrix mode_coefficient_block(Complex alpha, Complex beta) {
  gaussian::ComplexMatrix b(2, 2);
  b << (alpha + beta).real(), -(alpha - beta).imag(), (alpha + beta).imag(), (alpha - beta).real();
  return b;
}

}  // namespace nonrecip::models
