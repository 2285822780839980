#include <cmath>

#include "detail.hpp"
#include "sfpsd/specialfn.hpp"

namespace sfpsd {

using detail::kI;
using detail::kPi;

// Both lattice sums stop once the bound on the next term magnitude drops
// below abs_eps, or below rel_eps/100 of the running sum; the bound is
// evaluated in log space so large |Im v| cannot overflow it.

EvalResult theta3(Complex v, double q, const SeriesControl& ctl) {
  ctl.validate();
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("theta3: requires 0 <= q < 1");
  if (q == 0.0) return {Complex(1.0), 0.0, 1};
  const double log_q = std::log(q);
  const double growth = 2.0 * kPi * std::abs(v.imag());
  const double log_abs_eps = std::log(ctl.abs_eps);
  // Terms grow until n ~ growth / (2 |log q|), then decay like a Gaussian.
  const double peak = growth / (-2.0 * log_q);
  Complex sum = 1.0;
  double abs_sum = 1.0;
  for (std::size_t n = 1; n <= ctl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    const double base = dn * dn * log_q;
    const Complex phase = 2.0 * kPi * kI * dn * v;
    const Complex pair = std::exp(base + phase) + std::exp(base - phase);
    sum += pair;
    abs_sum += std::abs(pair);
    if (dn > peak) {
      const double next = dn + 1.0;
      const double log_bound = next * next * log_q + next * growth + std::log(2.0);
      // Gaussian tail: successive ratios shrink by at least q^(2n+1) e^growth.
      const double ratio = std::exp((2.0 * next + 1.0) * log_q + growth);
      const double bound = (ratio < 1.0) ? std::exp(log_bound) / (1.0 - ratio) : std::exp(log_bound) * 2.0;
      if (log_bound < log_abs_eps || bound <= 0.01 * ctl.rel_eps * std::abs(sum)) {
        return {sum, bound + 4.0 * detail::kEps * abs_sum, n};
      }
    }
  }
  throw NonConvergence("theta3: lattice sum did not converge within max_terms");
}

double quarter_period(double q, const SeriesControl& ctl) {
  const EvalResult t = theta3(Complex(0.0), q, ctl);
  return 0.5 * kPi * t.value.real() * t.value.real();
}

EvalResult jacobi_dn(Complex v, double q, const SeriesControl& ctl) {
  ctl.validate();
  if (!(q > 0.0 && q < 1.0)) throw DomainError("jacobi_dn: requires 0 < q < 1");
  const double growth = 2.0 * kPi * std::abs(v.imag());
  const double log_q = std::log(q);
  const double log_ratio = log_q + growth;
  if (!(log_ratio < 0.0)) {
    throw DomainError("jacobi_dn: requires q * exp(2 pi |Im v|) < 1");
  }
  const double big_k = quarter_period(q, ctl);
  const double log_abs_eps = std::log(ctl.abs_eps);
  Complex sum = 0.5;  // n = 0 term q^0 / (1 + q^0)
  double abs_sum = 0.5;
  for (std::size_t n = 1; n <= ctl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    // log(q^n / (1 + q^2n))
    const double log_c = dn * log_q - std::log1p(std::exp(2.0 * dn * log_q));
    const Complex phase = 2.0 * kPi * kI * dn * v;
    const Complex pair = std::exp(log_c + phase) + std::exp(log_c - phase);
    sum += pair;
    abs_sum += std::abs(pair);
    const double log_next = (dn + 1.0) * log_ratio + std::log(2.0);
    const double tail = std::exp(log_next) / (1.0 - std::exp(log_ratio));
    if (log_next < log_abs_eps || tail <= 0.01 * ctl.rel_eps * std::abs(sum)) {
      const double scale = kPi / big_k;
      // K carries its own truncation error, bounded by rel_eps relative.
      const double k_err = ctl.rel_eps * std::abs(scale * sum);
      return {scale * sum, scale * (tail + 8.0 * detail::kEps * abs_sum) + k_err, n};
    }
  }
  throw NonConvergence("jacobi_dn: Fourier series did not converge within max_terms");
}

}  // namespace sfpsd
