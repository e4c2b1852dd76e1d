#include "scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "nonrecip/errors.hpp"
#include "nonrecip/gaussian.hpp"
#include "nonrecip/master.hpp"
#include "nonrecip/models.hpp"
#include "nonrecip/trajectories.hpp"
#include "sampling.hpp"

namespace nonrecip::app {

void SweepResult::add_column(std::string name, std::vector<double> values) {
  if (!columns.empty() && values.size() != columns.front().size()) {
    throw NumericalError("column '" + name + "' has " + std::to_string(values.size()) + " rows, expected " +
                         std::to_string(columns.front().size()));
  }
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

namespace {

using fock::HilbertSpace;
using fock::Operator;
using gaussian::GaussianModel;

constexpr double kPi = std::numbers::pi;
constexpr double kLeakageLimit = 1e-4;

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError("parameters: " + msg);
}

void reject_grid(const ScenarioConfig& cfg) {
  if (cfg.grid) throw ValidationError("grid: scenario '" + cfg.scenario + "' has no frequency grid");
}

std::vector<double> frequency_grid(const ScenarioConfig& cfg, double kappa) {
  if (cfg.grid) return linspace(cfg.grid->omega_min, cfg.grid->omega_max, cfg.grid->points);
  const GridSpec d;
  return linspace(d.omega_min * kappa, d.omega_max * kappa, d.points);
}

double real_expectation(const Operator& op, const fock::Matrix& rho) { return (op.matrix() * rho).trace().real(); }

void check_leakage(double edge) {
  if (edge > kLeakageLimit) {
    throw NumericalError("truncation leakage: top Fock level population " + std::to_string(edge) + " exceeds " +
                         std::to_string(kLeakageLimit));
  }
}

void check_stable(const GaussianModel& m, const std::string& what) {
  if (!m.is_stable()) {
    throw NumericalError(what + " is unstable (max growth rate " + std::to_string(m.max_growth_rate()) + ")");
  }
}

models::CoherentSign parse_sign(const std::string& s) {
  return s == "plus" ? models::CoherentSign::plus : models::CoherentSign::minus;
}

double forward_gain(const GaussianModel& m, double w) {
  return gaussian::block_gain(gaussian::port_block(gaussian::scattering(m, w), 1, 0));
}

double reverse_gain(const GaussianModel& m, double w) {
  return gaussian::block_gain(gaussian::port_block(gaussian::scattering(m, w), 0, 1));
}

// --- directionality ---------------------------------------------------------

std::function<SweepResult()> directionality(const ScenarioConfig& cfg) {
  ParamReader r(cfg.parameters, "parameters");
  const std::size_t dim = r.count_or("dim", 3);
  const auto coupling = r.choice_or("coupling", "quadrature", {"quadrature", "ladder"});
  const auto form = r.choice_or("form", "primary", {"primary", "alternate"});
  master::RecipeParams p;
  p.lam = r.number("lam");
  p.Gamma = r.number("Gamma");
  p.eta = r.number("eta");
  p.phi = r.number_or("phi", -0.5 * kPi);
  const double t_final = r.number_or("t_final", 2.0);
  const std::size_t samples = r.count_or("samples", 20);
  const double tol = r.number_or("tolerance", 1e-8);
  r.finish();
  reject_grid(cfg);
  require(dim >= 2, "dim must be >= 2");
  require(t_final > 0.0, "t_final must be > 0");
  require(samples >= 1, "samples must be >= 1");
  require(tol > 0.0, "tolerance must be > 0");
  p.validate();

  return [=] {
    const HilbertSpace space({dim, dim});
    const bool quad = coupling == "quadrature";
    const Operator A = quad ? fock::quadrature_x(space, 0) : fock::annihilation(space, 0);
    const Operator B = quad ? fock::quadrature_x(space, 1) : fock::annihilation(space, 1);
    const master::Generator gen(form == "primary" ? master::build_directional_model(A, B, p)
                                                  : master::build_alternate_model(A, B, p));
    const master::Bipartition part{{0}};
    const std::vector<Operator> probes_a{fock::quadrature_x(space, 0), fock::quadrature_p(space, 0),
                                         fock::number(space, 0)};
    const std::vector<Operator> probes_b{fock::quadrature_x(space, 1), fock::quadrature_p(space, 1),
                                         fock::number(space, 1)};
    master::DirectionalityOptions opts;
    opts.t_final = t_final;
    opts.samples = samples;
    opts.seed = cfg.seed;
    const auto rep_a = master::check_directionality(gen, part, master::Side::A, probes_a, tol, opts);
    const auto rep_b = master::check_directionality(gen, part, master::Side::B, probes_b, tol, opts);

    const double dt = master::default_time_step(gen);
    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt));
    const std::size_t every = std::max<std::size_t>(1, steps / samples);
    const std::vector<fock::Complex> ref_alpha{{0.5, 0.0}, {0.0, 0.0}};
    const std::vector<fock::Complex> alt_alpha{{0.5, 0.0}, {0.0, 0.5}};
    const auto ev_ref = master::evolve_sampled(gen, fock::DensityMatrix::coherent(space, ref_alpha), t_final, dt, every);
    const auto ev_alt = master::evolve_sampled(gen, fock::DensityMatrix::coherent(space, alt_alpha), t_final, dt, every);
    check_leakage(std::max({rep_a.max_edge_population, rep_b.max_edge_population, ev_ref.max_edge_population,
                            ev_alt.max_edge_population}));

    SweepResult out;
    std::vector<double> x1_ref, x1_alt, x2_ref, x2_alt;
    for (std::size_t i = 0; i < ev_ref.times.size(); ++i) {
      x1_ref.push_back(real_expectation(probes_a[0], ev_ref.states[i]));
      x1_alt.push_back(real_expectation(probes_a[0], ev_alt.states[i]));
      x2_ref.push_back(real_expectation(probes_b[0], ev_ref.states[i]));
      x2_alt.push_back(real_expectation(probes_b[0], ev_alt.states[i]));
    }
    out.add_column("t", ev_ref.times);
    out.add_column("x1_ref", x1_ref);
    out.add_column("x1_alt", x1_alt);
    out.add_column("x2_ref", x2_ref);
    out.add_column("x2_alt", x2_alt);
    out.scalars["directional_tuning"] = p.directional();
    out.scalars["deviation_a"] = rep_a.max_deviation;
    out.scalars["deviation_b"] = rep_b.max_deviation;
    out.scalars["a_independent_of_b"] = rep_a.passed;
    out.scalars["b_independent_of_a"] = rep_b.passed;
    out.scalars["tolerance"] = tol;
    out.scalars["max_edge_population"] = std::max(rep_a.max_edge_population, rep_b.max_edge_population);
    return out;
  };
}

// --- ff-equivalence -----------------------------------------------------------

std::function<SweepResult()> ff_equivalence(const ScenarioConfig& cfg) {
  ParamReader r(cfg.parameters, "parameters");
  const auto dims = r.dims_or("dims", {4, 4});
  const double gamma = r.number("Gamma");
  const double eta = r.number("eta");
  const std::size_t trials = r.count_or("trials", 20);
  const auto operators = r.choice_or("operators", "random", {"random", "quadrature"});
  r.finish();
  reject_grid(cfg);
  require(dims.size() == 2, "dims must list two modes");
  require(trials >= 1, "trials must be >= 1");
  const auto ff = master::ff_param_map(gamma, eta);

  return [=] {
    const HilbertSpace space(dims);
    std::mt19937_64 rng(cfg.seed);
    const master::RecipeParams p{gamma * eta, gamma, eta, -0.5 * kPi};
    std::vector<double> index, dist, lindblad;
    for (std::size_t t = 0; t < trials; ++t) {
      const bool random = operators == "random";
      const Operator A = random ? fock::embed(space, 0, random_hermitian(dims[0], rng)) : fock::quadrature_x(space, 0);
      const Operator B = random ? fock::embed(space, 1, random_hermitian(dims[1], rng)) : fock::quadrature_x(space, 1);
      const auto l_dir = master::liouvillian_matrix(master::build_directional_model(A, B, p));
      const auto l_ff = master::liouvillian_matrix(master::build_feedforward_model(A, B, ff));
      const auto l_lb = master::liouvillian_matrix(master::feedforward_lindblad_form(A, B, ff));
      index.push_back(static_cast<double>(t));
      dist.push_back((l_dir - l_ff).norm());
      lindblad.push_back((l_lb - l_ff).norm());
    }
    SweepResult out;
    out.add_column("trial", index);
    out.add_column("frobenius_distance", dist);
    out.add_column("lindblad_form_distance", lindblad);
    const double worst = *std::max_element(dist.begin(), dist.end());
    out.scalars["k"] = ff.k;
    out.scalars["alpha_ff"] = ff.alpha_ff;
    out.scalars["frobenius_distance"] = worst;
    out.scalars["lindblad_form_distance"] = *std::max_element(lindblad.begin(), lindblad.end());
    out.scalars["status"] = worst < 1e-12 ? "pass" : "fail";
    return out;
  };
}

// --- trajectories -------------------------------------------------------------

std::function<SweepResult()> trajectories_scenario(const ScenarioConfig& cfg) {
  ParamReader r(cfg.parameters, "parameters");
  const auto dims = r.dims_or("dims", {3, 3});
  const double gamma = r.number("Gamma");
  const double eta = r.number("eta");
  require(gamma > 0.0, "Gamma must be > 0");
  trajectories::TrajectoryOptions opts;
  opts.t = r.number_or("t_final", 2.0 / gamma);
  opts.dt = r.number_or("dt", 0.0025);
  opts.sample_every = r.count_or("sample_every", 40);
  opts.seed = cfg.seed;
  const std::size_t count = r.count_or("trajectories", 1000);
  const std::size_t delay = r.count_or("delay_steps", 1);
  const auto scheme = r.choice_or("scheme", "kraus", {"kraus", "euler_maruyama"});
  opts.scheme = scheme == "kraus" ? trajectories::Scheme::kraus : trajectories::Scheme::euler_maruyama;
  r.finish();
  reject_grid(cfg);
  require(dims.size() == 2, "dims must list two modes");
  require(opts.t > 0.0, "t_final must be > 0");
  require(opts.dt > 0.0 && opts.dt <= 0.01 / (4.0 * gamma), "dt must be in (0, 0.01/k] with k = 4 Gamma");
  require(opts.sample_every >= 1, "sample_every must be >= 1");
  require(count >= 1, "trajectories must be >= 1");
  require(delay >= 1, "delay_steps must be >= 1");
  const auto ff = master::ff_param_map(gamma, eta);

  return [=] {
    const HilbertSpace space(dims);
    const Operator A = fock::quadrature_x(space, 0);
    const Operator B = fock::quadrature_x(space, 1);
    fock::Vector psi_a = fock::Vector::Zero(static_cast<Eigen::Index>(dims[0]));
    fock::Vector psi_b = fock::Vector::Zero(static_cast<Eigen::Index>(dims[1]));
    psi_a(0) = 1.0;
    psi_a(1) = 1.0;
    psi_b(0) = 1.0;
    psi_b(1) = fock::Complex(0.0, 0.5);
    const fock::Vector ket = Eigen::kroneckerProduct(psi_a.normalized(), psi_b.normalized()).eval();
    const auto rho0 = fock::DensityMatrix::from_ket(space, ket);

    const auto ens = trajectories::feedforward_ensemble(A, B, ff, rho0, delay, opts, count);
    const master::Generator fme = master::build_feedforward_model(A, B, ff);
    SweepResult out;
    std::vector<double> dist, x1e, x1f, x2e, x2f;
    for (std::size_t i = 0; i < ens.times.size(); ++i) {
      const fock::Matrix ref = master::evolve_exact(fme, rho0, ens.times[i]).matrix();
      dist.push_back(fock::trace_distance(ens.mean_states[i], ref));
      x1e.push_back(real_expectation(A, ens.mean_states[i]));
      x1f.push_back(real_expectation(A, ref));
      x2e.push_back(real_expectation(B, ens.mean_states[i]));
      x2f.push_back(real_expectation(B, ref));
    }
    double noise_ratio = 0.0;
    for (double v : ens.noise_variance) noise_ratio += v / opts.dt;
    noise_ratio /= static_cast<double>(ens.noise_variance.size());

    out.add_column("t", ens.times);
    out.add_column("trace_distance", dist);
    out.add_column("x1_ensemble", x1e);
    out.add_column("x1_fme", x1f);
    out.add_column("x2_ensemble", x2e);
    out.add_column("x2_fme", x2f);
    out.scalars["k"] = ff.k;
    out.scalars["alpha_ff"] = ff.alpha_ff;
    out.scalars["trajectories"] = count;
    out.scalars["max_trace_distance"] = *std::max_element(dist.begin(), dist.end());
    out.scalars["final_trace_distance"] = dist.back();
    out.scalars["noise_variance_over_dt"] = noise_ratio;
    out.scalars["min_eigenvalue"] = ens.min_eigenvalue;
    return out;
  };
}

// --- cascaded -------------------------------------------------------------------

std::function<SweepResult()> cascaded(const ScenarioConfig& cfg) {
  ParamReader r(cfg.parameters, "parameters");
  models::WaveguideParams w;
  w.kappa_A = r.number("kappa_A");
  w.kappa_B = r.number("kappa_B");
  // Probe states carry one excitation per mode; both can end up downstream.
  const std::size_t dim = r.count_or("dim", 4);
  const double t_final = r.number_or("t_final", 2.0);
  r.finish();
  reject_grid(cfg);
  require(dim >= 2, "dim must be >= 2");
  require(t_final > 0.0, "t_final must be > 0");
  const auto mapping = models::cascaded_params(w);

  return [=] {
    const HilbertSpace space({dim, dim});
    const Operator A = fock::annihilation(space, 0);
    // The downstream mode couples through B^dag, so B = b^dag gives the
    // passive waveguide jump sqrt(kA) a + sqrt(kB) b.
    const Operator B = fock::creation(space, 1);
    const master::Generator cascade(models::cascaded_model(A, B, w));
    const auto recipe = master::build_directional_model(A, B * mapping.b_gauge, mapping.recipe);
    const double distance = (master::liouvillian_matrix(cascade) - master::liouvillian_matrix(recipe)).norm();

    master::DirectionalityOptions opts;
    opts.t_final = t_final;
    opts.seed = cfg.seed;
    const std::vector<Operator> probes{fock::quadrature_x(space, 0), fock::quadrature_p(space, 0),
                                       fock::number(space, 0)};
    const auto rep = master::check_directionality(cascade, {{0}}, master::Side::A, probes, 1e-8, opts);

    const double dt = master::default_time_step(cascade);
    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt));
    const std::array<std::size_t, 2> levels{1, 0};
    const auto ev = master::evolve_sampled(cascade, fock::DensityMatrix::fock_state(space, levels), t_final, dt,
                                           std::max<std::size_t>(1, steps / 50));
    check_leakage(std::max(ev.max_edge_population, rep.max_edge_population));
    std::vector<double> na, nb;
    const Operator num_a = fock::number(space, 0);
    const Operator num_b = fock::number(space, 1);
    for (const auto& s : ev.states) {
      na.push_back(real_expectation(num_a, s));
      nb.push_back(real_expectation(num_b, s));
    }
    SweepResult out;
    out.add_column("t", ev.times);
    out.add_column("n_a", na);
    out.add_column("n_b", nb);
    out.scalars["lam"] = mapping.recipe.lam;
    out.scalars["Gamma"] = mapping.recipe.Gamma;
    out.scalars["eta"] = mapping.recipe.eta;
    out.scalars["phi"] = mapping.recipe.phi;
    out.scalars["liouvillian_distance"] = distance;
    out.scalars["a_independent_of_b"] = rep.passed;
    out.scalars["deviation_a"] = rep.max_deviation;
    return out;
  };
}

// --- amplifier --------------------------------------------------------------------

std::function<SweepResult()> amplifier(const ScenarioConfig& cfg) {
  ParamReader r(cfg.parameters, "parameters");
  models::AmplifierConfig c;
  c.kappa = r.number("kappa");
  c.Gamma = r.number("Gamma");
  c.eta = r.number("eta");
  c.J = r.number_or("J", c.eta * c.Gamma);
  c.sign = parse_sign(r.choice_or("sign", "minus", {"minus", "plus"}));
  c.basis = r.choice_or("basis", "quadrature", {"quadrature", "d_basis"}) == "quadrature"
                ? models::DissipatorBasis::quadrature
                : models::DissipatorBasis::d_basis;
  c.n_r1 = r.number_or("n_r1", 0.0);
  c.n_r2 = r.number_or("n_r2", 0.0);
  c.n_1 = r.number_or("n_1", 0.0);
  c.n_2 = r.number_or("n_2", 0.0);
  r.finish();
  c.validate();
  const auto grid = frequency_grid(cfg, c.kappa);

  return [=] {
    const auto model = models::amplifier_model(c);
    check_stable(model, "amplifier");
    SweepResult out;
    std::vector<double> fwd, rev, nadd;
    double max_rev = 0.0;
    for (double w : grid) {
      fwd.push_back(forward_gain(model, w));
      rev.push_back(reverse_gain(model, w));
      max_rev = std::max(max_rev, rev.back());
      nadd.push_back(gaussian::added_noise(model, 0, 1, w).n_add);
    }
    out.add_column("omega", grid);
    out.add_column("gain_fwd", fwd);
    out.add_column("gain_rev", rev);
    out.add_column("n_add", nadd);
    const bool directional = c.directional();
    out.scalars["g0"] = forward_gain(model, 0.0);
    out.scalars["g0_formula"] = std::pow(8.0 * c.J / c.kappa, 2);
    out.scalars["directional"] = directional;
    out.scalars["max_reverse_gain"] = max_rev;
    out.scalars["n_add"] = gaussian::added_noise(model, 0, 1).n_add;
    if (directional) out.scalars["fwhm"] = gaussian::gain_fwhm(model, 0, 1);
    return out;
  };
}

// --- nonmarkovian -------------------------------------------------------------------

std::function<SweepResult()> nonmarkovian(const ScenarioConfig& cfg) {
  ParamReader r(cfg.parameters, "parameters");
  const double kappa = r.number("kappa");
  const double gamma = r.number("gamma");
  const double g0 = r.number("g0");
  const auto sign = parse_sign(r.choice_or("sign", "minus", {"minus", "plus"}));
  r.finish();
  const auto c = models::NonMarkovConfig::tuned(g0, gamma, kappa, sign);
  const auto grid = frequency_grid(cfg, kappa);

  return [=] {
    const auto model = models::nonmarkovian_model(c);
    check_stable(model, "auxiliary-mode amplifier");
    SweepResult out;
    std::vector<double> fwd, rev, cf_fwd, cf_rev;
    double worst = 0.0;
    for (double w : grid) {
      fwd.push_back(forward_gain(model, w));
      rev.push_back(reverse_gain(model, w));
      const auto cf = models::closed_form_gains(c, w);
      cf_fwd.push_back(cf.forward);
      cf_rev.push_back(cf.reverse);
      worst = std::max(worst, std::abs(fwd.back() - cf.forward) / std::max(1.0, cf.forward));
      worst = std::max(worst, std::abs(rev.back() - cf.reverse) / std::max(1.0, cf.reverse));
    }
    const double lo = grid.front(), hi = grid.back();
    const auto dense = linspace(lo, hi, static_cast<std::size_t>(std::round((hi - lo) / (kappa / 400.0))) + 1);
    std::vector<double> dense_gain;
    dense_gain.reserve(dense.size());
    for (double w : dense) dense_gain.push_back(forward_gain(model, w));

    out.add_column("omega", grid);
    out.add_column("gain_fwd", fwd);
    out.add_column("gain_rev", rev);
    out.add_column("closed_fwd", cf_fwd);
    out.add_column("closed_rev", cf_rev);
    out.scalars["g0"] = c.g0();
    out.scalars["J"] = c.J;
    out.scalars["lambda1"] = c.lambda1;
    out.scalars["lambda2"] = c.lambda2;
    out.scalars["max_closed_form_deviation"] = worst;
    out.scalars["peak_count"] = models::find_peaks(dense_gain, 0.01 * c.g0()).size();
    return out;
  };
}

// --- optomech -------------------------------------------------------------------------

std::function<SweepResult()> optomech(const ScenarioConfig& cfg) {
  ParamReader r(cfg.parameters, "parameters");
  const double kappa = r.number("kappa");
  const double gamma = r.number("gamma");
  const double g0 = r.number("g0");
  auto c = models::OptomechConfig::tuned(g0, gamma, kappa);
  c.n_m1 = r.number_or("n_m1", 0.0);
  c.n_m2 = r.number_or("n_m2", 0.0);
  c.n_c1 = r.number_or("n_c1", 0.0);
  c.n_c2 = r.number_or("n_c2", 0.0);
  r.finish();
  c.validate();
  const auto grid = frequency_grid(cfg, kappa);

  return [=] {
    const auto pair = models::optomech_model(c);
    check_stable(pair.full, "optomechanical model");
    check_stable(pair.eliminated, "eliminated optomechanical model");
    SweepResult out;
    std::vector<double> ff, rf, fe, re;
    for (double w : grid) {
      ff.push_back(forward_gain(pair.full, w));
      rf.push_back(reverse_gain(pair.full, w));
      fe.push_back(forward_gain(pair.eliminated, w));
      re.push_back(reverse_gain(pair.eliminated, w));
    }
    const auto full0 = gaussian::scattering(pair.full, 0.0).s.topLeftCorner(4, 4);
    const auto elim0 = gaussian::scattering(pair.eliminated, 0.0).s;
    out.add_column("omega", grid);
    out.add_column("gain_fwd_full", ff);
    out.add_column("gain_rev_full", rf);
    out.add_column("gain_fwd_eliminated", fe);
    out.add_column("gain_rev_eliminated", re);
    out.scalars["g0"] = forward_gain(pair.eliminated, 0.0);
    out.scalars["J"] = c.J;
    out.scalars["lambda"] = c.lambda;
    out.scalars["eta_imag"] = c.eta.imag();
    out.scalars["n_add"] = gaussian::added_noise(pair.eliminated, 0, 1).n_add;
    out.scalars["n_add_formula"] = 0.5 + c.n_m2 + (0.5 + c.n_c2) / g0;
    out.scalars["n_add_full"] = gaussian::added_noise(pair.full, 0, 1).n_add;
    out.scalars["s0_deviation"] = (full0 - elim0).cwiseAbs().maxCoeff();
    return out;
  };
}

}  // namespace

std::function<SweepResult()> prepare_scenario(const ScenarioConfig& cfg) {
  if (cfg.scenario == "directionality") return directionality(cfg);
  if (cfg.scenario == "ff-equivalence") return ff_equivalence(cfg);
  if (cfg.scenario == "trajectories") return trajectories_scenario(cfg);
  if (cfg.scenario == "cascaded") return cascaded(cfg);
  if (cfg.scenario == "amplifier") return amplifier(cfg);
  if (cfg.scenario == "nonmarkovian") return nonmarkovian(cfg);
  if (cfg.scenario == "optomech") return optomech(cfg);
  throw ValidationError("unknown scenario '" + cfg.scenario + "'");
}

}  // namespace nonrecip::app
