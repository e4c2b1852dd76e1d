#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "nonrecip/fock.hpp"

namespace nonrecip::app {

/// n evenly spaced points including both ends.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Gaussian-entry Hermitian matrix scaled to unit spectral norm.
fock::Matrix random_hermitian(std::size_t dim, std::mt19937_64& rng);

}  // namespace nonrecip::app
