#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "nonrecip/errors.hpp"
#include "nonrecip/models.hpp"

using namespace nonrecip;
using namespace nonrecip::models;
using gaussian::ComplexMatrix;
using gaussian::RealMatrix;
using master::liouvillian_matrix;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

fock::Operator random_operator(const fock::HilbertSpace& s, std::size_t mode, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const auto d = static_cast<Eigen::Index>(s.mode_dim(mode));
  fock::Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = {n(rng), n(rng)};
  m /= m.operatorNorm();
  return fock::embed(s, mode, m);
}

double max_reverse_element(const GaussianModel& m, double omega) {
  const auto s = gaussian::scattering(m, omega);
  return gaussian::port_block(s, 0, 1).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Cascaded, ParameterExamples) {
  const auto m = cascaded_params({1.0, 4.0});
  EXPECT_DOUBLE_EQ(m.recipe.lam, 2.0);
  EXPECT_DOUBLE_EQ(m.recipe.Gamma, 1.0);
  EXPECT_DOUBLE_EQ(m.recipe.eta, 2.0);
  EXPECT_DOUBLE_EQ(m.recipe.phi, -kHalfPi);
  EXPECT_TRUE(m.recipe.directional());
  const auto sym = cascaded_params({0.7, 0.7});
  EXPECT_DOUBLE_EQ(sym.recipe.eta, 1.0);
  EXPECT_DOUBLE_EQ(sym.recipe.lam, 0.7);
  EXPECT_DOUBLE_EQ(sym.recipe.Gamma, 0.7);
  EXPECT_THROW(cascaded_params({0.0, 1.0}), ValidationError);
}

TEST(Cascaded, ModelEqualsGaugedRecipe) {
  std::mt19937_64 rng(4);
  fock::HilbertSpace s({3, 3});
  const auto A = random_operator(s, 0, rng), B = random_operator(s, 1, rng);
  const WaveguideParams w{0.8, 1.7};
  const auto map = cascaded_params(w);
  const auto recipe = master::build_directional_model(A, B * map.b_gauge, map.recipe);
  EXPECT_LT((liouvillian_matrix(cascaded_model(A, B, w)) - liouvillian_matrix(recipe)).norm(), 1e-12);
}

TEST(Cascaded, RandomOperatorsAreDirectional) {
  std::mt19937_64 rng(9);
  fock::HilbertSpace s({3, 3});
  const auto A = random_operator(s, 0, rng), B = random_operator(s, 1, rng);
  const auto model = cascaded_model(A, B, {1.0, 1.0});
  const auto report = master::check_directionality(model, {{0}}, master::Side::A,
                                                   {fock::quadrature_x(s, 0), fock::quadrature_p(s, 0)}, 1e-8);
  EXPECT_TRUE(report.passed) << report.max_deviation;
}

TEST(HermitianDecomposition, HermitianInputsReduceToSingleReservoir) {
  fock::HilbertSpace s({3, 3});
  const auto A = fock::quadrature_x(s, 0), B = fock::quadrature_p(s, 1);
  const RecipeParams p{0.4, 0.8, 0.5, -kHalfPi};
  const auto m = hermitian_decomposition(A, B, p);
  EXPECT_EQ(m.jumps().size(), 1u);
  EXPECT_LT((liouvillian_matrix(m) - liouvillian_matrix(master::build_directional_model(A, B, p))).norm(), 1e-12);
}

TEST(HermitianDecomposition, LadderOperatorsGiveDistinctDirectionalModel) {
  fock::HilbertSpace s({4, 4});
  const auto A = fock::annihilation(s, 0), B = fock::annihilation(s, 1);
  const RecipeParams p{0.5, 1.0, 0.5, -kHalfPi};
  const auto split = hermitian_decomposition(A, B, p);
  EXPECT_EQ(split.jumps().size(), 2u);
  const auto single = master::build_directional_model(A, B, p);
  EXPECT_GT((liouvillian_matrix(split) - liouvillian_matrix(single)).norm(), 1e-6);
  const std::vector<fock::Operator> probes{fock::quadrature_x(s, 0), fock::quadrature_p(s, 0)};
  EXPECT_TRUE(master::check_directionality(split, {{0}}, master::Side::A, probes, 1e-8).passed);
  EXPECT_TRUE(master::check_directionality(single, {{0}}, master::Side::A, probes, 1e-8).passed);
}

TEST(Amplifier, TunedConfiguration) {
  const auto cfg = AmplifierConfig::tuned(100.0, 1.0, CoherentSign::minus);
  EXPECT_DOUBLE_EQ(cfg.Gamma, 0.25);
  EXPECT_DOUBLE_EQ(cfg.eta, 5.0);
  EXPECT_DOUBLE_EQ(cfg.J, 1.25);
  EXPECT_TRUE(cfg.directional());
}

TEST(Amplifier, GainScalesWithGamma) {
  AmplifierConfig cfg;
  cfg.Gamma = 0.25;
  cfg.eta = 1.0;
  cfg.J = 0.25;
  const auto m = amplifier_model(cfg);
  const auto s = gaussian::scattering(m, 0.0);
  EXPECT_NEAR(gaussian::block_gain(gaussian::port_block(s, 1, 0)), std::pow(8.0 * cfg.Gamma / cfg.kappa, 2), 1e-12);
}

TEST(Amplifier, ZeroFrequencySignPattern) {
  // 8J/kappa = 3, sign minus.
  const auto cfg = AmplifierConfig::tuned(9.0, 1.0, CoherentSign::minus);
  const ComplexMatrix s = gaussian::scattering(amplifier_model(cfg), 0.0).s;
  EXPECT_NEAR(s(2, 1).real(), 3.0, 1e-12);
  EXPECT_NEAR(s(3, 0).real(), 3.0, 1e-12);
  EXPECT_LT(std::abs(s(1, 2)), 1e-12);
  EXPECT_LT(std::abs(s(0, 3)), 1e-12);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(s(i, i).real(), -1.0, 1e-12);
}

TEST(Amplifier, UncoupledCavitiesReflect) {
  AmplifierConfig cfg;
  const ComplexMatrix s = gaussian::scattering(amplifier_model(cfg), 0.0).s;
  EXPECT_LT((s + ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(Amplifier, DriftHasNoLocalDampingFromReservoirs) {
  for (CoherentSign sign : {CoherentSign::plus, CoherentSign::minus}) {
    AmplifierConfig cfg;
    cfg.J = 0.3;
    cfg.Gamma = 0.2;
    cfg.eta = 0.7;
    cfg.kappa = 0.9;
    cfg.sign = sign;
    const RealMatrix a = amplifier_model(cfg).drift();
    EXPECT_EQ(a.block(0, 0, 2, 2), -cfg.kappa / 2.0 * RealMatrix::Identity(2, 2));
    EXPECT_EQ(a.block(2, 2, 2, 2), -cfg.kappa / 2.0 * RealMatrix::Identity(2, 2));
    // Off-diagonal blocks are anti-diagonal with weights J -+ eta Gamma.
    const double minus = std::abs(cfg.J - cfg.eta * cfg.Gamma), plus = cfg.J + cfg.eta * cfg.Gamma;
    EXPECT_NEAR(std::abs(a(0, 3)), minus, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 2)), minus, 1e-15);
    EXPECT_NEAR(std::abs(a(2, 1)), plus, 1e-15);
    EXPECT_NEAR(std::abs(a(3, 0)), plus, 1e-15);
    EXPECT_EQ(a(0, 2), 0.0);
    EXPECT_EQ(a(2, 0), 0.0);
  }
}

TEST(Amplifier, QuadratureAndLadderBasesAgree) {
  for (CoherentSign sign : {CoherentSign::plus, CoherentSign::minus}) {
    AmplifierConfig cfg;
    cfg.J = 0.2;
    cfg.Gamma = 0.25;
    cfg.eta = 0.8;
    cfg.sign = sign;
    const auto quad = amplifier_fock_model(cfg, 4);
    cfg.basis = DissipatorBasis::d_basis;
    const auto ladder = amplifier_fock_model(cfg, 4);
    EXPECT_LT((liouvillian_matrix(quad) - liouvillian_matrix(ladder)).norm(), 1e-12) << to_string(sign);
  }
}

TEST(Amplifier, ReverseGainVanishesAtAllFrequencies) {
  for (double g0 : {4.0, 100.0}) {
    const auto m = amplifier_model(AmplifierConfig::tuned(g0, 1.0, CoherentSign::minus));
    for (double w : {0.0, 0.2, 1.0, 3.0}) EXPECT_LT(max_reverse_element(m, w), 1e-10);
  }
}

TEST(Amplifier, LorentzianSquaredGainWithFixedBandwidth) {
  const double kappa = 1.0;
  double fwhm_ref = 0.0;
  for (double g0 : {4.0, 100.0, 1e4}) {
    const auto m = amplifier_model(AmplifierConfig::tuned(g0, kappa, CoherentSign::minus));
    for (double w : {0.0, 0.1, 0.5, 2.0}) {
      const double g = gaussian::block_gain(gaussian::port_block(gaussian::scattering(m, w), 1, 0));
      const double x = 1.0 + 4.0 * w * w / (kappa * kappa);
      EXPECT_NEAR(g / (g0 / (x * x)), 1.0, 1e-10);
    }
    const double fwhm = gaussian::gain_fwhm(m, 0, 1);
    if (fwhm_ref == 0.0) fwhm_ref = fwhm;
    EXPECT_NEAR(fwhm / fwhm_ref, 1.0, 1e-6);
  }
}

TEST(Amplifier, QuantumLimitAtLargeGain) {
  const auto m = amplifier_model(AmplifierConfig::tuned(1e4, 1.0, CoherentSign::minus));
  const auto report = gaussian::added_noise(m, 0, 1);
  EXPECT_NEAR(report.n_add, 0.5, 0.005);
  EXPECT_GE(report.n_add, 0.0);
}

TEST(Amplifier, NoiseOptimumAtZeroTemperature) {
  auto cfg = AmplifierConfig::tuned(100.0, 1.0, CoherentSign::minus);
  const auto opt = locate_noise_optimum(cfg);
  EXPECT_NEAR(opt.Gamma, 0.25, 1e-4);
  EXPECT_NEAR(opt.eta, cfg.J / opt.Gamma, 1e-12);
  cfg.Gamma = opt.Gamma;
  cfg.eta = opt.eta;
  EXPECT_NEAR(gaussian::added_noise(amplifier_model(cfg), 0, 1).n_add, opt.n_add, 1e-12);
}

TEST(Amplifier, ThermalExampleAddedNoise) {
  auto cfg = AmplifierConfig::tuned(100.0, 1.0, CoherentSign::minus);
  cfg.n_r1 = 0.1;
  cfg.n_r2 = 0.1;
  const double n_add = gaussian::added_noise(amplifier_model(cfg), 0, 1).n_add;
  EXPECT_NEAR(n_add, 0.605, 1e-6);
}

TEST(Amplifier, UnstableConfigurationIsStillBuilt) {
  AmplifierConfig cfg;
  cfg.J = 3.0;
  cfg.Gamma = 0.1;
  cfg.eta = 1.0;
  const auto m = amplifier_model(cfg);
  EXPECT_FALSE(m.is_stable());
}

TEST(Adiabatic, EffectiveRate) {
  EXPECT_DOUBLE_EQ(adiabatic_effective_rate(1.0, 16.0), 0.25);
  EXPECT_DOUBLE_EQ(adiabatic_effective_rate(0.0, 3.0), 0.0);
  EXPECT_THROW(adiabatic_effective_rate(1.0, 0.0), ValidationError);
}

TEST(Adiabatic, AuxiliaryModeConvergesToEliminatedReservoir) {
  const double kappa = 1.0, eta = 1.5, target_rate = 0.25;
  const LinearForm z = LinearForm::lowering(2, 0) - LinearForm::lowering(2, 1) * Complex(0.0, eta);
  // Compares every channel pair by label: the auxiliary decay is a port in the
  // full model and a reservoir channel in the eliminated one. The fast mode
  // reflects its own input with -1 on resonance, so the eliminated aux output
  // carries that sign.
  const std::vector<std::string> labels{"port1", "port2", "aux"};
  auto deviation = [&](const AuxiliaryPair& pair, double w) {
    const ComplexMatrix full = gaussian::channel_scattering(pair.full, w);
    const ComplexMatrix elim = gaussian::channel_scattering(pair.eliminated, w);
    double worst = 0.0;
    for (const auto& out : labels) {
      for (const auto& in : labels) {
        const auto fo = static_cast<Eigen::Index>(2 * pair.full.channel_index(out));
        const auto fi = static_cast<Eigen::Index>(2 * pair.full.channel_index(in));
        const auto eo = static_cast<Eigen::Index>(2 * pair.eliminated.channel_index(out));
        const auto ei = static_cast<Eigen::Index>(2 * pair.eliminated.channel_index(in));
        const double sign = out == "aux" ? -1.0 : 1.0;
        worst = std::max(worst, (full.block(fo, fi, 2, 2) - sign * elim.block(eo, ei, 2, 2)).cwiseAbs().maxCoeff());
      }
    }
    return worst;
  };
  std::vector<double> err;
  for (double gamma : {1e2, 1e3}) {
    const auto pair = auxiliary_reservoir(z, std::sqrt(target_rate * gamma / 4.0), gamma, kappa);
    EXPECT_LT(deviation(pair, 0.0), 1e-3);
    double worst = 0.0;
    for (double w = -0.5; w <= 0.5; w += 0.05) worst = std::max(worst, deviation(pair, w));
    err.push_back(worst);
  }
  EXPECT_LT(err[1], 1e-3);
  EXPECT_NEAR(err[0] / err[1], 10.0, 1.5);
}

TEST(NonMarkov, TunedConfiguration) {
  const auto cfg = NonMarkovConfig::tuned(100.0, 10.0, 1.0, CoherentSign::minus);
  EXPECT_DOUBLE_EQ(cfg.J, 1.25);
  EXPECT_NEAR(cfg.lambda1, std::sqrt(1.25 * 10.0 / 2.0), 1e-15);
  EXPECT_TRUE(cfg.directional());
  EXPECT_NEAR(cfg.g0(), 100.0, 1e-12);
}

TEST(NonMarkov, ZeroFrequencyGains) {
  for (double gamma : {1.0, 10.0, 1000.0}) {
    const auto g = closed_form_gains(NonMarkovConfig::tuned(100.0, gamma, 1.0, CoherentSign::minus), 0.0);
    EXPECT_NEAR(g.forward, 100.0, 1e-10);
    EXPECT_EQ(g.reverse, 0.0);
  }
}

TEST(NonMarkov, ReverseToForwardRatio) {
  const double gamma = 7.0;
  const auto cfg = NonMarkovConfig::tuned(50.0, gamma, 1.0, CoherentSign::minus);
  for (double w : {0.5, 3.0, gamma, 20.0}) {
    const auto g = closed_form_gains(cfg, w);
    const double r = w * w / (gamma * gamma);
    EXPECT_NEAR(g.reverse / g.forward, r / (1.0 + r), 1e-12);
  }
  const auto at_gamma = closed_form_gains(cfg, gamma);
  EXPECT_NEAR(at_gamma.reverse / at_gamma.forward, 0.5, 1e-12);
}

TEST(NonMarkov, FourModeModelMatchesClosedForm) {
  for (double gamma : {10.0, 100.0}) {
    const auto cfg = NonMarkovConfig::tuned(100.0, gamma, 1.0, CoherentSign::minus);
    const auto m = nonmarkovian_model(cfg);
    for (double w = -5.0; w <= 5.0; w += 0.25) {
      const auto s = gaussian::scattering(m, w);
      const auto cf = closed_form_gains(cfg, w);
      EXPECT_NEAR(gaussian::block_gain(gaussian::port_block(s, 1, 0)), cf.forward, 1e-6) << gamma << " " << w;
      EXPECT_NEAR(gaussian::block_gain(gaussian::port_block(s, 0, 1)), cf.reverse, 1e-6) << gamma << " " << w;
    }
  }
}

TEST(NonMarkov, MarkovianLimit) {
  const auto cfg = NonMarkovConfig::tuned(100.0, 1e6, 1.0, CoherentSign::minus);
  for (double w : {0.0, 0.3, 1.0}) {
    const double x = 1.0 + 4.0 * w * w;
    EXPECT_NEAR(closed_form_gains(cfg, w).forward / (100.0 / (x * x)), 1.0, 1e-4);
  }
}

TEST(NonMarkov, ModeSplittingOnlyForSlowReservoirs) {
  auto peaks = [](double gamma) {
    const auto cfg = NonMarkovConfig::tuned(100.0, gamma, 1.0, CoherentSign::minus);
    std::vector<double> g;
    for (int i = -2000; i <= 2000; ++i) g.push_back(closed_form_gains(cfg, i / 400.0).forward);
    return find_peaks(g, 1.0).size();
  };
  EXPECT_GE(peaks(10.0), 2u);
  EXPECT_EQ(peaks(1000.0), 1u);
}

TEST(FindPeaks, ProminenceAndPlateaus) {
  EXPECT_EQ(find_peaks({0, 1, 0, 3, 0}, 0.5), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(find_peaks({0, 1, 0.9, 3, 0}, 0.5), (std::vector<std::size_t>{3}));
  EXPECT_EQ(find_peaks({0, 2, 2, 2, 0}, 0.5), (std::vector<std::size_t>{2}));
  EXPECT_TRUE(find_peaks({1, 1, 1}, 0.1).empty());
  EXPECT_TRUE(find_peaks({}, 0.1).empty());
}

TEST(Optomech, TunedConfiguration) {
  const auto cfg = OptomechConfig::tuned(100.0, 100.0, 1.0);
  EXPECT_NEAR(4.0 * cfg.lambda * cfg.lambda / cfg.gamma, 0.25, 1e-15);
  EXPECT_NEAR(cfg.eta.imag(), 5.0, 1e-15);
  EXPECT_EQ(cfg.eta.real(), 0.0);
  EXPECT_NEAR(cfg.J, -1.25, 1e-12);
  EXPECT_TRUE(cfg.directional());
}

TEST(Optomech, EliminatedGainAndNoise) {
  auto cfg = OptomechConfig::tuned(100.0, 100.0, 1.0);
  cfg.n_m2 = 0.2;
  cfg.n_c2 = 0.4;
  const auto m = optomech_model(cfg).eliminated;
  for (double w : {0.0, 0.3, 1.0}) {
    const auto s = gaussian::scattering(m, w);
    const double x = 1.0 + 4.0 * w * w;
    EXPECT_NEAR(gaussian::block_gain(gaussian::port_block(s, 1, 0)), 100.0 / (x * x), 1e-9);
    EXPECT_LT(gaussian::port_block(s, 0, 1).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_NEAR(gaussian::added_noise(m, 0, 1).n_add, 0.5 + 0.2 + 0.9 / 100.0, 1e-9);
}

TEST(Optomech, FullModelConvergesToEliminated) {
  auto deviation = [](double gamma) {
    const auto models = optomech_model(OptomechConfig::tuned(100.0, gamma, 1.0));
    const ComplexMatrix full = gaussian::scattering(models.full, 0.0).s;
    const ComplexMatrix elim = gaussian::scattering(models.eliminated, 0.0).s;
    // Port blocks come first in the full model and last in the eliminated one.
    return (full.topLeftCorner(4, 4) - elim).cwiseAbs().maxCoeff();
  };
  EXPECT_LT(deviation(1e2), 1e-2);
  EXPECT_LT(deviation(1e3), 1e-3);
}

TEST(Optomech, FullModelReverseVanishesAtResonance) {
  const auto models = optomech_model(OptomechConfig::tuned(100.0, 100.0, 1.0));
  EXPECT_LT(max_reverse_element(models.full, 0.0), 1e-10);
}
