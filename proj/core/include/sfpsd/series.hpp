#pragma once

#include <complex>
#include <cstddef>

namespace sfpsd {

using Complex = std::complex<double>;

// Convergence policy shared by every series and product evaluator.
struct SeriesControl {
  double rel_eps = 1e-14;
  double abs_eps = 1e-300;
  std::size_t max_terms = 10'000;

  // Throws DomainError unless rel_eps > 0, abs_eps >= 0 and max_terms >= 1.
  void validate() const;
};

// A value together with a bound on its truncation + rounding error.
struct EvalResult {
  Complex value;
  double err_estimate = 0.0;
  std::size_t terms_used = 0;
};

}  // namespace sfpsd
