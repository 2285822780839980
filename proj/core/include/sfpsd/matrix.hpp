#pragma once

#include <cstddef>
#include <vector>

#include "sfpsd/series.hpp"

namespace sfpsd {

// Dense n x n complex matrix, row-major. Hermitian symmetry is a property
// checked by the algorithms that need it, not enforced on every write.
struct HermitianMatrix {
  std::size_t n = 0;
  std::vector<Complex> entries;

  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim) : n(dim), entries(dim * dim) {}

  Complex& operator()(std::size_t j, std::size_t k) { return entries[j * n + k]; }
  const Complex& operator()(std::size_t j, std::size_t k) const { return entries[j * n + k]; }

  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix from_rows(const std::vector<std::vector<Complex>>& rows);
};

// max over j,k of |M_jk - conj(M_kj)| / (1 + |M_jk|).
double hermitian_deviation(const HermitianMatrix& m);

// Frobenius norm.
double frobenius_norm(const HermitianMatrix& m);

}  // namespace sfpsd
