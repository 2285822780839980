#include <algorithm>
#include <cmath>
#include <vector>

#include "detail.hpp"
#include "sfpsd/specialfn.hpp"

namespace sfpsd {

namespace {

void check_q(double q, const char* who, bool allow_zero) {
  const bool ok = allow_zero ? (q >= 0.0 && q < 1.0) : (q > 0.0 && q < 1.0);
  if (!ok) throw DomainError(std::string(who) + (allow_zero ? ": requires 0 <= q < 1" : ": requires 0 < q < 1"));
}

}  // namespace

EvalResult q_pochhammer(Complex z, double q, std::size_t n, const SeriesControl& ctl) {
  ctl.validate();
  check_q(q, "q_pochhammer", true);
  Complex product = 1.0;
  double q_pow = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    product *= 1.0 - z * q_pow;
    q_pow *= q;
  }
  return {product, 2.0 * detail::kEps * static_cast<double>(n) * std::abs(product), n};
}

EvalResult q_pochhammer(Complex z, double q, const SeriesControl& ctl) {
  ctl.validate();
  check_q(q, "q_pochhammer", true);
  Complex product = 1.0;
  double q_pow = 1.0;
  const double az = std::abs(z);
  for (std::size_t k = 0; k < ctl.max_terms; ++k) {
    product *= 1.0 - z * q_pow;
    q_pow *= q;
    // Remaining factors multiply to exp(O(|z| q^(k+1) / (1-q))).
    const double tail = az * q_pow / (1.0 - q);
    if (tail < ctl.rel_eps || q_pow == 0.0) {
      const double rel = tail + 2.0 * detail::kEps * static_cast<double>(k + 1);
      return {product, rel * std::abs(product), k + 1};
    }
  }
  throw NonConvergence("q_pochhammer: infinite product did not converge within max_terms");
}

EvalResult gamma_q(double x, double q, const SeriesControl& ctl) {
  ctl.validate();
  check_q(q, "gamma_q", false);
  if (!(x > 0.0)) throw DomainError("gamma_q: requires x > 0");
  const EvalResult num = q_pochhammer(Complex(q), q, ctl);
  const EvalResult den = q_pochhammer(Complex(std::pow(q, x)), q, ctl);
  const double value = num.value.real() * std::pow(1.0 - q, 1.0 - x) / den.value.real();
  const double rel = num.err_estimate / std::abs(num.value) + den.err_estimate / std::abs(den.value);
  return {Complex(value), (rel + 4.0 * detail::kEps) * std::abs(value),
          num.terms_used + den.terms_used};
}

EvalResult deformed_q_hypergeometric(std::span<const Complex> upper,
                                     std::span<const Complex> lower, double q, double alpha,
                                     Complex z, const SeriesControl& ctl, double radius) {
  ctl.validate();
  check_q(q, "deformed_q_hypergeometric", false);
  if (!(alpha >= 0.0)) throw DomainError("deformed_q_hypergeometric: requires alpha >= 0");
  if (alpha == 0.0 && !(std::abs(z) < radius)) {
    throw DomainError("deformed_q_hypergeometric: alpha = 0 requires |z| < radius");
  }
  if (z == Complex{}) return {Complex(1.0), 0.0, 1};

  Complex term = 1.0;
  Complex sum = 1.0;
  double abs_sum = 1.0;
  double q_pow = 1.0;  // q^n
  int small_run = 0;
  std::size_t growing = 0;
  for (std::size_t n = 0; n < ctl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    // t_{n+1} / t_n = prod(1 - a q^n) / prod(1 - b q^n) q^(alpha (2n+1)) z
    Complex ratio = z * std::pow(q, alpha * (2.0 * dn + 1.0));
    for (const Complex& a : upper) ratio *= 1.0 - a * q_pow;
    for (const Complex& b : lower) {
      const Complex denom = 1.0 - b * q_pow;
      if (std::abs(denom) == 0.0) {
        throw DomainError("deformed_q_hypergeometric: lower parameter gives a zero factor");
      }
      ratio /= denom;
    }
    q_pow *= q;
    term *= ratio;
    if (term == Complex{}) return {sum, 4.0 * detail::kEps * abs_sum, n + 1};
    sum += term;
    abs_sum += std::abs(term);
    const double rho = std::abs(ratio);
    if (alpha == 0.0) {
      // Runtime ratio guard: the ratio tends to |z|; persistent growth means
      // the radius assumption does not hold for these parameters.
      growing = (rho >= 1.0) ? growing + 1 : 0;
      if (growing > 50) throw NonConvergence("deformed_q_hypergeometric: term ratio stays >= 1");
    }
    // With alpha > 0 the ratio decreases monotonically once the Pochhammer
    // factors settle; with alpha = 0 it tends to |z| from either side.
    const double rho_eff = (alpha == 0.0) ? std::max(rho, std::abs(z)) : rho;
    if (rho_eff < 1.0) {
      const double tail = std::abs(term) * rho_eff / (1.0 - rho_eff);
      if (tail <= ctl.rel_eps * std::abs(sum) || tail <= ctl.abs_eps) {
        if (++small_run >= 2) return {sum, tail + 4.0 * detail::kEps * abs_sum, n + 1};
      } else {
        small_run = 0;
      }
    }
  }
  throw NonConvergence("deformed_q_hypergeometric: series did not converge within max_terms");
}

EvalResult basic_hypergeometric_phi(std::span<const Complex> upper,
                                    std::span<const Complex> lower, double q, Complex z,
                                    const SeriesControl& ctl, double radius) {
  check_q(q, "basic_hypergeometric_phi", false);
  const long excess = static_cast<long>(lower.size()) + 1 - static_cast<long>(upper.size());
  if (excess < 0) throw DomainError("basic_hypergeometric_phi: requires s + 1 >= r");
  std::vector<Complex> with_q;
  with_q.reserve(lower.size() + 1);
  with_q.emplace_back(q);
  with_q.insert(with_q.end(), lower.begin(), lower.end());
  const double alpha = 0.5 * static_cast<double>(excess);
  const Complex scale = std::pow(-1.0 / std::sqrt(q), static_cast<double>(excess));
  return deformed_q_hypergeometric(upper, with_q, q, alpha, scale * z, ctl, radius);
}

}  // namespace sfpsd
