#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "sfpsd/specialfn.hpp"

namespace sfpsd {

namespace {

bool is_nonpositive_integer(Complex a) {
  return a.imag() == 0.0 && a.real() <= 0.0 && a.real() == std::round(a.real());
}

}  // namespace

EvalResult hypergeometric_f(std::span<const Complex> upper, std::span<const Complex> lower,
                            Complex z, const SeriesControl& ctl) {
  ctl.validate();
  const std::size_t r = upper.size();
  const std::size_t s = lower.size();
  bool terminating = false;
  for (const Complex& a : upper) terminating = terminating || is_nonpositive_integer(a);
  if (!terminating) {
    if (r > s + 1) throw DomainError("hypergeometric_f: r > s + 1 diverges unless terminating");
    if (r == s + 1 && !(std::abs(z) < 1.0)) {
      throw DomainError("hypergeometric_f: requires |z| < 1 when r = s + 1");
    }
  }
  if (z == Complex{}) return {Complex(1.0), 0.0, 1};

  Complex term = 1.0;
  Complex sum = 1.0;
  double abs_sum = 1.0;
  int small_run = 0;
  for (std::size_t n = 0; n < ctl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    Complex ratio = z / (dn + 1.0);
    for (const Complex& a : upper) ratio *= a + dn;
    for (const Complex& b : lower) {
      const Complex denom = b + dn;
      if (denom == Complex{}) {
        throw DomainError("hypergeometric_f: lower parameter hits a non-positive integer");
      }
      ratio /= denom;
    }
    term *= ratio;
    if (term == Complex{}) {
      // Terminated by a non-positive integer upper parameter.
      return {sum, 4.0 * detail::kEps * abs_sum, n + 1};
    }
    sum += term;
    abs_sum += std::abs(term);
    // Once the term ratio is below 1 (it is eventually monotone), bound the
    // tail by a geometric series in the current ratio.
    // For r = s + 1 the ratio tends to |z|, possibly from below.
    const double rho = (r == s + 1) ? std::max(std::abs(ratio), std::abs(z)) : std::abs(ratio);
    if (rho < 1.0) {
      const double tail = std::abs(term) * rho / (1.0 - rho);
      if (tail <= ctl.rel_eps * std::abs(sum) || tail <= ctl.abs_eps) {
        if (++small_run >= 2) return {sum, tail + 4.0 * detail::kEps * abs_sum, n + 1};
      } else {
        small_run = 0;
      }
    }
  }
  throw NonConvergence("hypergeometric_f: series did not converge within max_terms");
}

}  // namespace sfpsd
