#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "nonrecip/errors.hpp"
#include "nonrecip/gaussian.hpp"
#include "nonrecip/master.hpp"
#include "nonrecip/trajectories.hpp"
#include "sampling.hpp"

namespace nonrecip::app {

namespace {

using Clock = std::chrono::steady_clock;
using fock::HilbertSpace;
using fock::Operator;
using gaussian::ComplexMatrix;
using gaussian::GaussianModel;
using gaussian::LinearForm;
using gaussian::RealMatrix;
using models::AmplifierConfig;
using models::CoherentSign;

constexpr double kPi = std::numbers::pi;

template <class... Args>
std::string sformat(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) detail += " [FAIL]";
  }
};

GaussianModel amplifier(const AmplifierConfig& cfg, const AcceptanceOptions& o) {
  models::LinearSystem sys = models::amplifier_system(cfg);
  if (o.amplifier_mutation) o.amplifier_mutation(sys);
  return sys.gaussian();
}

ComplexMatrix block(const GaussianModel& m, double w, std::size_t out, std::size_t in) {
  return gaussian::port_block(gaussian::scattering(m, w), out, in);
}

// ---------------------------------------------------------------------------

Outcome ff_equivalence(const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  const HilbertSpace space({4, 4});
  constexpr int trials = 25;
  double worst = 0.0;
  double worst_lindblad = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Operator A = fock::embed(space, 0, random_hermitian(4, rng));
    const Operator B = fock::embed(space, 1, random_hermitian(4, rng));
    const double gamma = u(rng);
    const double eta = u(rng);
    const master::RecipeParams p{gamma * eta, gamma, eta, -0.5 * kPi};
    const auto ff = master::ff_param_map(gamma, eta);
    const auto l_dir = master::liouvillian_matrix(master::build_directional_model(A, B, p));
    const auto l_ff = master::liouvillian_matrix(master::build_feedforward_model(A, B, ff));
    const auto l_lb = master::liouvillian_matrix(master::feedforward_lindblad_form(A, B, ff));
    worst = std::max(worst, (l_dir - l_ff).norm());
    worst_lindblad = std::max(worst_lindblad, (l_lb - l_ff).norm());
  }
  Outcome out;
  out.require(worst < 1e-12, sformat("%d pairs, max ||L_dir - L_ff||_F = %.3e (< 1e-12)", trials, worst));
  out.require(worst_lindblad < 1e-12, sformat("Lindblad rewrite %.3e (< 1e-12)", worst_lindblad));
  return out;
}

Outcome trajectory_convergence(const AcceptanceOptions& o) {
  const HilbertSpace space({3, 3});
  const Operator A = fock::quadrature_x(space, 0);
  const Operator B = fock::quadrature_x(space, 1);
  const master::FeedforwardParams p{4.0, 0.25, 0.0};
  fock::Vector psi_a(3), psi_b(3);
  psi_a << 1.0, 1.0, 0.0;
  psi_b << 1.0, fock::Complex(0.0, 0.5), 0.0;
  const fock::Vector ket = Eigen::kroneckerProduct(psi_a.normalized(), psi_b.normalized()).eval();
  const auto rho0 = fock::DensityMatrix::from_ket(space, ket);

  trajectories::TrajectoryOptions opts;
  opts.t = 2.0;  // 2 / Gamma with Gamma = k / 4 = 1
  opts.dt = 0.0025;
  opts.sample_every = 40;

  const master::Generator fme = master::build_feedforward_model(A, B, p);
  std::vector<fock::Matrix> reference;

  struct Batch {
    std::size_t m;
    std::size_t repeats;
  };
  const std::vector<Batch> batches{{100, 50}, {1000, 10}, {10000, 8}};
  std::vector<double> log_m, log_err;
  std::string detail;
  for (const auto& b : batches) {
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < b.repeats; ++r) {
      opts.seed = o.seed + 1000003ULL * b.m + r;
      const auto ens = trajectories::feedforward_ensemble(A, B, p, rho0, 1, opts, b.m, o.workers);
      if (reference.empty()) {
        for (double t : ens.times) reference.push_back(master::evolve_exact(fme, rho0, t).matrix());
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < ens.times.size(); ++i) acc += (ens.mean_states[i] - reference[i]).squaredNorm();
      sum_sq += acc / static_cast<double>(ens.times.size());
    }
    const double rms = std::sqrt(sum_sq / static_cast<double>(b.repeats));
    log_m.push_back(std::log(static_cast<double>(b.m)));
    log_err.push_back(std::log(rms));
    detail += sformat("M=%zu rms=%.3e ", b.m, rms);
  }
  const double s = fit_slope(log_m, log_err);
  Outcome out;
  out.require(std::abs(s + 0.5) <= 0.1, detail + sformat("slope %.3f (-0.5 +- 0.1)", s));
  return out;
}

Outcome amplifier_directionality(const AcceptanceOptions& o) {
  const auto grid = linspace(-5.0, 5.0, 401);
  auto max_reverse_element = [&](const GaussianModel& m) {
    double worst = 0.0;
    for (double w : grid) worst = std::max(worst, block(m, w, 0, 1).cwiseAbs2().maxCoeff());
    return worst;
  };
  auto max_reverse_gain = [&](const GaussianModel& m) {
    double worst = 0.0;
    for (double w : grid) worst = std::max(worst, gaussian::block_gain(block(m, w, 0, 1)));
    return worst;
  };
  Outcome out;
  for (CoherentSign sign : {CoherentSign::minus, CoherentSign::plus}) {
    for (double g0 : {4.0, 100.0}) {
      const auto cfg = AmplifierConfig::tuned(g0, 1.0, sign);
      const double r = max_reverse_element(amplifier(cfg, o));
      out.require(r < 1e-20, sformat("%s G0=%g max|s_rev|^2 %.2e (< 1e-20)", models::to_string(sign).c_str(), g0, r));
    }
  }
  auto detuned = [&](double g0, double factor) {
    auto cfg = AmplifierConfig::tuned(g0, 1.0, CoherentSign::minus);
    cfg.J *= factor;
    const double r = max_reverse_gain(amplifier(cfg, o));
    out.require(r > 1e-4, sformat("J=%.1f*eta*Gamma G0=%g reverse gain %.2e (> 1e-4)", factor, g0, r));
  };
  detuned(100.0, 0.9);
  detuned(4.0, 1.1);
  return out;
}

Outcome amplifier_gain(const AcceptanceOptions& o) {
  Outcome out;
  const auto grid = linspace(-5.0, 5.0, 401);
  double worst = 0.0;
  for (double g0 : {1.0, 4.0, 16.0, 100.0, 1e4}) {
    const auto m = amplifier(AmplifierConfig::tuned(g0, 1.0, CoherentSign::minus), o);
    for (double w : grid) {
      const double g = gaussian::block_gain(block(m, w, 1, 0));
      const double ref = g0 / std::pow(1.0 + 4.0 * w * w, 2);
      worst = std::max(worst, std::abs(g - ref) / std::max(1.0, ref));
    }
  }
  out.require(worst < 1e-8, sformat("Lorentzian-squared deviation %.2e (< 1e-8)", worst));

  double worst_g0 = 0.0;
  for (double ratio : {0.125, 0.25, 0.5}) {
    AmplifierConfig cfg;
    cfg.kappa = 1.0;
    cfg.Gamma = ratio;
    cfg.eta = 1.0;
    cfg.J = cfg.eta * cfg.Gamma;
    const double expected = std::pow(8.0 * ratio, 2);
    const double g = gaussian::block_gain(block(amplifier(cfg, o), 0.0, 1, 0));
    worst_g0 = std::max(worst_g0, std::abs(g - expected) / expected);
  }
  out.require(worst_g0 < 1e-10, sformat("G0=(8 Gamma/kappa)^2 at eta=1 rel err %.2e", worst_g0));

  const double expected_fwhm = std::sqrt(std::sqrt(2.0) - 1.0);
  double worst_fwhm = 0.0;
  for (double g0 : {4.0, 100.0, 1e4}) {
    const double f = gaussian::gain_fwhm(amplifier(AmplifierConfig::tuned(g0, 1.0, CoherentSign::minus), o), 0, 1);
    worst_fwhm = std::max(worst_fwhm, std::abs(f - expected_fwhm) / expected_fwhm);
  }
  out.require(worst_fwhm < 1e-6, sformat("FWHM rel dev from sqrt(sqrt2-1) %.2e (< 1e-6)", worst_fwhm));
  return out;
}

Outcome amplifier_noise(const AcceptanceOptions&) {
  Outcome out;
  AmplifierConfig base;
  base.kappa = 1.0;
  base.sign = CoherentSign::minus;
  base.J = std::sqrt(1e4) / 8.0;
  const auto opt = models::locate_noise_optimum(base);
  out.require(std::abs(opt.n_add - 0.5) <= 0.005,
              sformat("G0=1e4 optimum Gamma=%.4f eta=%.3f n_add=%.6f (0.5 within 1%%)", opt.Gamma, opt.eta, opt.n_add));

  AmplifierConfig grid_base;
  grid_base.kappa = 1.0;
  grid_base.sign = CoherentSign::minus;
  grid_base.J = std::sqrt(100.0) / 8.0;
  const auto grid_opt = models::locate_noise_optimum(grid_base);
  grid_base.Gamma = grid_opt.Gamma;
  grid_base.eta = grid_opt.eta;
  const double g0 = 100.0;
  double worst = 0.0;
  for (double n1 : {0.0, 0.1, 1.0}) {
    for (double n2 : {0.0, 0.1, 1.0}) {
      auto cfg = grid_base;
      cfg.n_r1 = n1;
      cfg.n_r2 = n2;
      cfg.n_2 = 0.5;
      const double full = gaussian::added_noise(models::amplifier_model(cfg), 0, 1).n_add;
      const double formula = 0.5 + 0.5 * (n1 + n2) + (cfg.n_2 + 0.5) / g0;
      worst = std::max(worst, std::abs(full - formula));
    }
  }
  out.require(worst < 1e-6, sformat("3x3 occupation grid at G0=100 max |n_add - formula| %.2e (< 1e-6)", worst));
  return out;
}

Outcome dbasis_identity(const AcceptanceOptions&) {
  Outcome out;
  double worst = 0.0;
  for (CoherentSign sign : {CoherentSign::plus, CoherentSign::minus}) {
    for (double eta : {1.0, 1.7}) {
      AmplifierConfig cfg;
      cfg.kappa = 1.0;
      cfg.sign = sign;
      cfg.Gamma = 0.3;
      cfg.eta = eta;
      cfg.J = eta * cfg.Gamma;
      cfg.basis = models::DissipatorBasis::quadrature;
      const auto lq = master::liouvillian_matrix(models::amplifier_fock_model(cfg, 4));
      cfg.basis = models::DissipatorBasis::d_basis;
      const auto ld = master::liouvillian_matrix(models::amplifier_fock_model(cfg, 4));
      worst = std::max(worst, (lq - ld).norm());
    }
  }
  out.require(worst < 1e-12, sformat("max ||L_quad - L_dbasis||_F %.2e (< 1e-12)", worst));
  return out;
}

Outcome nonmarkovian(const AcceptanceOptions&) {
  Outcome out;
  const auto grid = linspace(-5.0, 5.0, 401);
  double worst = 0.0;
  double worst_ratio = 0.0;
  for (CoherentSign sign : {CoherentSign::minus, CoherentSign::plus}) {
    for (double gamma : {10.0, 100.0}) {
      const auto cfg = models::NonMarkovConfig::tuned(100.0, gamma, 1.0, sign);
      const auto m = models::nonmarkovian_model(cfg);
      for (double w : grid) {
        const auto s = gaussian::scattering(m, w);
        const double fwd = gaussian::block_gain(gaussian::port_block(s, 1, 0));
        const double rev = gaussian::block_gain(gaussian::port_block(s, 0, 1));
        const auto cf = models::closed_form_gains(cfg, w);
        worst = std::max(worst, std::abs(fwd - cf.forward) / std::max(1.0, cf.forward));
        worst = std::max(worst, std::abs(rev - cf.reverse) / std::max(1.0, cf.reverse));
        const double x = w / gamma;
        const double ratio = x * x / (1.0 + x * x);
        worst_ratio = std::max(worst_ratio, std::abs(rev - ratio * fwd) / std::max(1.0, fwd));
      }
    }
  }
  out.require(worst < 1e-6, sformat("4-mode vs closed form max rel dev %.2e (< 1e-6)", worst));
  out.require(worst_ratio < 1e-6, sformat("reverse/forward ratio form dev %.2e", worst_ratio));

  const auto fine = linspace(-5.0, 5.0, 4001);
  auto peak_count = [&](double gamma) {
    const auto cfg = models::NonMarkovConfig::tuned(100.0, gamma, 1.0, CoherentSign::minus);
    const auto m = models::nonmarkovian_model(cfg);
    std::vector<double> g;
    g.reserve(fine.size());
    for (double w : fine) g.push_back(gaussian::block_gain(block(m, w, 1, 0)));
    return models::find_peaks(g, 0.01 * 100.0).size();
  };
  const std::size_t split = peak_count(10.0);
  const std::size_t single = peak_count(1000.0);
  out.require(split >= 2, sformat("gamma/kappa=10 G0=100: %zu peaks (>= 2)", split));
  out.require(single == 1, sformat("gamma/kappa=1000: %zu peak(s) (== 1)", single));
  return out;
}

Outcome optomech(const AcceptanceOptions&) {
  Outcome out;
  const double g0 = 100.0;
  const double rg = std::sqrt(g0);
  const fock::Complex i{0.0, 1.0};
  const auto cfg = models::OptomechConfig::tuned(g0, 100.0, 1.0);
  const auto elim = models::optomech_model(cfg).eliminated;
  const ComplexMatrix s = gaussian::channel_scattering(elim, 0.0);
  const auto idx = [&](const char* label) { return 2 * static_cast<Eigen::Index>(elim.channel_index(label)); };
  auto coeff_err = [&](const char* out_label, const char* in_label, fock::Complex alpha, fock::Complex beta) {
    const ComplexMatrix got = s.block(idx(out_label), idx(in_label), 2, 2);
    return (got - models::mode_coefficient_block(alpha, beta)).cwiseAbs().maxCoeff();
  };
  double worst = 0.0;
  worst = std::max(worst, coeff_err("port1", "port1", -1.0, 0.0));
  worst = std::max(worst, coeff_err("port1", "mech1", i, 0.0));
  worst = std::max(worst, coeff_err("port1", "mech2", 0.0, i));
  worst = std::max(worst, coeff_err("port1", "port2", 0.0, 0.0));
  worst = std::max(worst, coeff_err("port2", "port2", -1.0, 0.0));
  worst = std::max(worst, coeff_err("port2", "mech2", 0.0, -rg));
  worst = std::max(worst, coeff_err("port2", "port1", -i * rg, 0.0));
  out.require(worst < 1e-10, sformat("printed on-resonance coefficients max dev %.2e (< 1e-10)", worst));

  double worst_noise = 0.0;
  for (double nm2 : {0.0, 0.3}) {
    for (double nc2 : {0.0, 0.7}) {
      auto c = cfg;
      c.n_m2 = nm2;
      c.n_c2 = nc2;
      const double n_add = gaussian::added_noise(models::optomech_model(c).eliminated, 0, 1).n_add;
      worst_noise = std::max(worst_noise, std::abs(n_add - (0.5 + nm2 + (0.5 + nc2) / g0)));
    }
  }
  out.require(worst_noise < 1e-6, sformat("n_add vs 1/2 + n_m2 + (1/2 + n_c2)/G0 max dev %.2e", worst_noise));

  const auto omegas = linspace(-0.5, 0.5, 41);
  std::vector<double> log_ratio, log_dev;
  std::string devs;
  for (double gamma : {10.0, 100.0, 1000.0}) {
    const auto pair = models::optomech_model(models::OptomechConfig::tuned(4.0, gamma, 1.0));
    double dev = 0.0;
    for (double w : omegas) {
      const ComplexMatrix full = gaussian::scattering(pair.full, w).s.topLeftCorner(4, 4);
      const ComplexMatrix el = gaussian::scattering(pair.eliminated, w).s;
      dev = std::max(dev, (full - el).cwiseAbs().maxCoeff());
    }
    log_ratio.push_back(std::log(gamma));
    log_dev.push_back(std::log(dev));
    devs += sformat("%.2e ", dev);
  }
  const double s_conv = fit_slope(log_ratio, log_dev);
  out.require(std::abs(s_conv + 1.0) <= 0.15, "elimination error " + devs + sformat("slope %.3f (-1 +- 0.15)", s_conv));
  return out;
}

Outcome entanglement(const AcceptanceOptions& o) {
  Outcome out;
  const std::vector<gaussian::Port> ports{{0, 1.0, 0.0, "port1"}, {1, 1.0, 0.0, "port2"}};
  const auto times = linspace(0.25, 5.0, 20);

  const auto herm = models::linear_recipe(LinearForm::x(2, 0), LinearForm::x(2, 1), {1.0, 2.0, 0.5, -0.5 * kPi}, ports)
                        .gaussian();
  std::mt19937_64 rng(o.seed ^ 0x5bd1e995ULL);
  std::uniform_real_distribution<double> occ(0.0, 1.0), sq(0.0, 0.8), ang(0.0, kPi), disp(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    gaussian::Moments m0;
    m0.mean = gaussian::RealVector(4);
    m0.covariance = RealMatrix::Zero(4, 4);
    for (int mode = 0; mode < 2; ++mode) {
      const double theta = ang(rng);
      const double c = std::cos(theta), s = std::sin(theta);
      Eigen::Matrix2d rot;
      rot << c, -s, s, c;
      const double r = sq(rng);
      const Eigen::Matrix2d d = Eigen::Vector2d(std::exp(2 * r), std::exp(-2 * r)).asDiagonal();
      m0.covariance.block<2, 2>(2 * mode, 2 * mode) = (occ(rng) + 0.5) * rot * d * rot.transpose();
      m0.mean(2 * mode) = disp(rng);
      m0.mean(2 * mode + 1) = disp(rng);
    }
    for (double t : times) {
      worst = std::max(worst, gaussian::log_negativity(gaussian::propagate(herm, m0, t).covariance, {0}));
    }
  }
  out.require(worst < 1e-10, sformat("Hermitian coupling, 10 separable starts: max E_N %.2e (< 1e-10)", worst));

  const auto ladder =
      models::linear_recipe(LinearForm::lowering(2, 0), LinearForm::lowering(2, 1), {1.0, 2.0, 0.5, 0.5 * kPi}, ports)
          .gaussian();
  double best = 0.0;
  for (double t : linspace(0.1, 10.0, 100)) {
    best = std::max(best, gaussian::log_negativity(gaussian::propagate(ladder, gaussian::vacuum_moments(2), t).covariance, {0}));
  }
  out.require(best > 0.01, sformat("A=d1, B=d2, phi=+pi/2 from vacuum: max E_N %.4f (> 0.01)", best));
  return out;
}

Outcome gaussian_oracle(const AcceptanceOptions& o) {
  Outcome out;
  std::mt19937_64 rng(o.seed ^ 0xc2b2ae3d27d4eb4fULL);
  std::uniform_real_distribution<double> h(-0.15, 0.15), c(-0.05, 0.05), nbar(0.0, 0.1), amp(-0.3, 0.3),
      tt(0.5, 1.0);
  const HilbertSpace space({8, 8});
  double worst_mean = 0.0, worst_cov = 0.0, worst_edge = 0.0;
  for (int k = 0; k < 20; ++k) {
    RealMatrix m(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = h(rng);
    const gaussian::QuadraticHamiltonian ham(RealMatrix(0.5 * (m + m.transpose())));
    gaussian::ComplexVector jc(4);
    for (Eigen::Index i = 0; i < 4; ++i) jc(i) = {c(rng), c(rng)};
    const std::vector<gaussian::Dissipator> diss{{LinearForm(jc), 1.0, nbar(rng), 0.0, "r"}};
    const std::vector<gaussian::Port> ports{{0, 1.0, 0.0, "port1"}, {1, 1.0, 0.0, "port2"}};

    const std::vector<fock::Complex> alphas{{amp(rng), amp(rng)}, {amp(rng), amp(rng)}};
    const auto rho0 = fock::DensityMatrix::coherent(space, alphas);
    const double t = tt(rng);
    const master::Generator gen(gaussian::to_lindblad(ham, diss, ports, space));
    const auto ev = master::evolve_sampled(gen, rho0, t, master::default_time_step(gen), 1u << 30);
    const auto rho_t = fock::DensityMatrix(space, fock::hermitize_normalized(ev.states.back()));
    const auto fock_m = gaussian::fock_moments(rho_t);
    const auto gauss_m = gaussian::propagate(gaussian::from_quadratic(ham, diss, ports), gaussian::fock_moments(rho0), t);
    worst_mean = std::max(worst_mean, (fock_m.mean - gauss_m.mean).cwiseAbs().maxCoeff());
    worst_cov = std::max(worst_cov, (fock_m.covariance - gauss_m.covariance).cwiseAbs().maxCoeff());
    worst_edge = std::max(worst_edge, ev.max_edge_population);
  }
  out.require(worst_mean < 1e-5, sformat("20 models: means max dev %.2e (< 1e-5)", worst_mean));
  out.require(worst_cov < 1e-4, sformat("covariances max dev %.2e (< 1e-4)", worst_cov));
  out.require(worst_edge < 1e-4, sformat("edge population %.2e (< 1e-4)", worst_edge));
  return out;
}

CriterionResult wrap(int id, const char* name, Outcome (*fn)(const AcceptanceOptions&), const AcceptanceOptions& o) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto start = Clock::now();
  try {
    const Outcome out = fn(o);
    r.passed = out.passed;
    r.detail = out.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = [] {
    struct Entry {
      int id;
      const char* name;
      Outcome (*fn)(const AcceptanceOptions&);
    };
    const Entry entries[] = {
        {1, "ff-equivalence", ff_equivalence},
        {2, "trajectory-convergence", trajectory_convergence},
        {3, "amplifier-directionality", amplifier_directionality},
        {4, "amplifier-gain-bandwidth", amplifier_gain},
        {5, "amplifier-quantum-limit", amplifier_noise},
        {6, "d-basis-identity", dbasis_identity},
        {7, "nonmarkovian-reservoir", nonmarkovian},
        {8, "optomech-elimination", optomech},
        {9, "entanglement-dichotomy", entanglement},
        {10, "gaussian-fock-oracle", gaussian_oracle},
    };
    std::vector<Criterion> v;
    for (const auto& e : entries) {
      v.push_back({e.id, e.name, [e](const AcceptanceOptions& o) { return wrap(e.id, e.name, e.fn, o); }});
    }
    return v;
  }();
  return all;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* log) {
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (!opts.filter.empty() && c.name.find(opts.filter) == std::string::npos) continue;
    results.push_back(c.run(opts));
    if (log) *log << format_result(results.back()) << std::endl;
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  return sformat("%-4s %2d %-26s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds) + r.detail;
}

void flip_second_reservoir_sign(models::LinearSystem& system) {
  if (system.dissipators.size() < 2) throw ValidationError("expected two amplifier reservoirs");
  auto& jump = system.dissipators[1].jump;
  gaussian::ComplexVector c = jump.coeffs();
  c.segment(2, 2) *= -1.0;
  jump = LinearForm(c);
}

}  // namespace nonrecip::app
