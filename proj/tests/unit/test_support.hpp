#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "sfpsd/matrix.hpp"

namespace testing {

using sfpsd::Complex;

inline double rel_err(Complex got, Complex want) {
  const double scale = std::abs(want);
  return std::abs(got - want) / (scale > 0.0 ? scale : 1.0);
}

// G^H G for a random complex m x n G: a PSD matrix of rank min(m, n).
inline sfpsd::HermitianMatrix random_gram(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::normal_distribution<double> normal;
  std::vector<Complex> g(m * n);
  for (Complex& c : g) c = {normal(rng), normal(rng)};
  sfpsd::HermitianMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      Complex s = 0.0;
      for (std::size_t r = 0; r < m; ++r) s += std::conj(g[r * n + j]) * g[r * n + k];
      out(j, k) = s;
    }
  }
  for (std::size_t j = 0; j < n; ++j) out(j, j) = out(j, j).real();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) out(k, j) = std::conj(out(j, k));
  }
  return out;
}

inline sfpsd::HermitianMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  sfpsd::HermitianMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out(j, j) = u(rng);
    for (std::size_t k = j + 1; k < n; ++k) {
      out(j, k) = {u(rng), u(rng)};
      out(k, j) = std::conj(out(j, k));
    }
  }
  return out;
}

}  // namespace testing
