#include "sampling.hpp"

#include <Eigen/Eigenvalues>

namespace nonrecip::app {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

fock::Matrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  const auto d = static_cast<Eigen::Index>(dim);
  fock::Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = {n01(rng), n01(rng)};
  const fock::Matrix h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<fock::Matrix> es(h, Eigen::EigenvaluesOnly);
  return h / es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace nonrecip::app
