#include <algorithm>
#include <cmath>
#include <limits>

#include "sfpsd/errors.hpp"
#include "sfpsd/matrix.hpp"

namespace sfpsd {

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  HermitianMatrix m(dim);
  for (std::size_t j = 0; j < dim; ++j) m(j, j) = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  HermitianMatrix m(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != rows.size()) throw DimensionMismatch("matrix rows must form a square");
    std::copy(rows[j].begin(), rows[j].end(), m.entries.begin() + static_cast<long>(j * m.n));
  }
  return m;
}

double hermitian_deviation(const HermitianMatrix& m) {
  double worst = 0.0;
  for (std::size_t j = 0; j < m.n; ++j) {
    for (std::size_t k = j; k < m.n; ++k) {
      const double dev = std::abs(m(j, k) - std::conj(m(k, j))) / (1.0 + std::abs(m(j, k)));
      if (std::isnan(dev)) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

double frobenius_norm(const HermitianMatrix& m) {
  double sum = 0.0;
  for (const Complex& v : m.entries) sum += std::norm(v);
  return std::sqrt(sum);
}

}  // namespace sfpsd
