#include <cmath>

#include "detail.hpp"
#include "sfpsd/quadrature.hpp"
#include "sfpsd/specialfn.hpp"

namespace sfpsd {

namespace {

EvalResult lerch_series(double z, Complex s, double a, const SeriesControl& ctl) {
  const double az = std::abs(z);
  Complex sum = 0.0;
  double abs_sum = 0.0;
  double z_pow = 1.0;
  for (std::size_t n = 0; n < ctl.max_terms; ++n) {
    const double base = a + static_cast<double>(n);
    const Complex term = z_pow * std::pow(Complex(base), -s);
    sum += term;
    abs_sum += std::abs(term);
    // Term magnitudes |z|^n (a+n)^-Re(s) decrease monotonically, so the
    // remaining tail is bounded by a geometric series.
    const double next = std::abs(z_pow * z) * std::pow(base + 1.0, -s.real());
    const double tail = next / (1.0 - az);
    if (tail <= ctl.rel_eps * std::abs(sum) || tail <= ctl.abs_eps) {
      return {sum, tail + 4.0 * detail::kEps * abs_sum, n + 1};
    }
    z_pow *= z;
  }
  throw NonConvergence("lerch_phi: series did not converge within max_terms");
}

EvalResult lerch_integral(double z, Complex s, double a, const SeriesControl& ctl) {
  // Gamma(s) Phi(z,s,a) = int_0^inf x^(s-1) e^(-a x) / (1 - z e^-x) dx
  QuadControl qc;
  qc.target_eps = std::max(ctl.rel_eps, 1e-13);
  const auto integrand = [&](const QuadNode& node) -> Complex {
    const double x = node.x;
    const double log_den = std::log1p(-z * std::exp(-x));
    const Complex log_val = (s - 1.0) * std::log(x) - a * x - log_den;
    if (log_val.real() < -745.0) return 0.0;
    return std::exp(log_val);
  };
  const QuadResult quad = integrate(QuadDomain::HalfLine, 0.0, 0.0, integrand, qc);
  const EvalResult g = gamma(s);
  const Complex value = quad.value / g.value;
  return {value, quad.err_estimate / std::abs(g.value) + 8.0 * detail::kEps * std::abs(value),
          quad.evaluations};
}

}  // namespace

EvalResult lerch_phi(double z, Complex s, double a, const SeriesControl& ctl) {
  ctl.validate();
  if (!(z < 1.0)) throw DomainError("lerch_phi: requires z < 1");
  if (!(a > 0.0)) throw DomainError("lerch_phi: requires a > 0");
  if (!(s.real() > 0.0)) throw DomainError("lerch_phi: requires Re(s) > 0");
  if (z == 0.0) return {std::pow(Complex(a), -s), 0.0, 1};
  if (z > -1.0) return lerch_series(z, s, a, ctl);
  return lerch_integral(z, s, a, ctl);
}

}  // namespace sfpsd
