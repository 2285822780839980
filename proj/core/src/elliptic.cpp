#include <cmath>
#include <cstdlib>

#include "detail.hpp"
#include "sfpsd/specialfn.hpp"

namespace sfpsd {

namespace {

Complex theta_value(Complex x, double p, const SeriesControl& ctl) {
  return elliptic_theta(x, p, ctl).value;
}

void check_modular(double q, double p) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("modular_series: requires 0 < q < 1");
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("modular_series: requires 0 <= p < 1");
}

// Ratio of consecutive Pochhammer quotients P_{n+1} / P_n (forward) for the
// index step n -> n+1 with n >= 0.
Complex forward_factor(ModularKind kind, std::span<const Complex> upper,
                       std::span<const Complex> lower, double q, double p, long n,
                       const SeriesControl& ctl) {
  const double q_n = std::pow(q, static_cast<double>(n));
  Complex factor = 1.0;
  for (const Complex& a : upper) factor *= theta_value(a * q_n, p, ctl);
  Complex denom = 1.0;
  if (kind == ModularKind::E) denom *= theta_value(Complex(q * q_n), p, ctl);
  for (const Complex& b : lower) denom *= theta_value(b * q_n, p, ctl);
  if (denom == Complex{}) throw DivisionByZero("modular_series: vanishing denominator factor");
  return factor / denom;
}

// P_{-(m+1)} / P_{-m} for the G series, m >= 0.
Complex backward_factor(std::span<const Complex> upper, std::span<const Complex> lower,
                        double q, double p, long m, const SeriesControl& ctl) {
  const double q_neg = std::pow(q, -static_cast<double>(m + 1));
  Complex num = 1.0;
  for (const Complex& d : lower) num *= theta_value(d * q_neg, p, ctl);
  Complex den = 1.0;
  for (const Complex& c : upper) den *= theta_value(c * q_neg, p, ctl);
  if (den == Complex{}) throw DivisionByZero("modular_series: vanishing denominator factor");
  return num / den;
}

struct SideSum {
  Complex sum;
  double abs_sum = 0.0;
  double last = 0.0;
  std::size_t terms = 0;
};

// Sums one direction of the series. `step(k)` returns P_{k+1}/P_k in the
// direction of travel; `index(k)` maps the step count to the series index.
template <class Step, class Index>
SideSum sum_side(Step&& step, Index&& index, const CoefficientRule& coeff, double q,
                 Complex z_step, bool include_first, const SeriesControl& ctl) {
  SideSum out;
  Complex pochhammer = 1.0;
  Complex z_pow = 1.0;
  int small_run = 0;
  for (long k = 0; k < static_cast<long>(ctl.max_terms); ++k) {
    if (k > 0) {
      pochhammer *= step(k - 1);
      z_pow *= z_step;
      if (!detail::is_finite(pochhammer) || !detail::is_finite(z_pow)) {
        throw NonConvergence("modular_series: terms overflow; coefficient rule too weak");
      }
    }
    const long n = index(k);
    if (coeff.has_finite_support()) {
      const long last = coeff.first_index + static_cast<long>(coeff.values.size()) - 1;
      const bool past = (n >= 0) ? n > last : n < coeff.first_index;
      if (past) {
        out.terms = static_cast<std::size_t>(k);
        return out;
      }
    }
    if (k == 0 && !include_first) continue;
    const Complex term = pochhammer * coeff(n, q) * z_pow;
    out.sum += term;
    out.abs_sum += std::abs(term);
    out.last = std::abs(term);
    if (k >= 2 && std::abs(term) <= ctl.rel_eps * std::abs(out.sum) + ctl.abs_eps) {
      if (++small_run >= 3) {
        out.terms = static_cast<std::size_t>(k + 1);
        return out;
      }
    } else if (k >= 2 && out.sum == Complex{} && term == Complex{}) {
      if (++small_run >= 3) {
        out.terms = static_cast<std::size_t>(k + 1);
        return out;
      }
    } else {
      small_run = 0;
    }
  }
  throw NonConvergence("modular_series: series did not converge within max_terms");
}

}  // namespace

EvalResult elliptic_theta(Complex x, double p, const SeriesControl& ctl) {
  ctl.validate();
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("elliptic_theta: requires 0 <= p < 1");
  if (x == Complex{}) throw DomainError("elliptic_theta: requires x != 0");
  const EvalResult first = q_pochhammer(x, p, ctl);
  const EvalResult second = q_pochhammer(p / x, p, ctl);
  const Complex value = first.value * second.value;
  const double err = std::abs(first.value) * second.err_estimate +
                     first.err_estimate * std::abs(second.value);
  return {value, err, first.terms_used + second.terms_used};
}

EvalResult elliptic_pochhammer(Complex a, double q, double p, long n, const SeriesControl& ctl) {
  ctl.validate();
  if (!(q > 0.0 && q < 1.0)) throw DomainError("elliptic_pochhammer: requires 0 < q < 1");
  if (n == 0) return {Complex(1.0), 0.0, 0};
  Complex product = 1.0;
  double rel = 0.0;
  std::size_t terms = 0;
  const long count = std::labs(n);
  for (long k = 0; k < count; ++k) {
    // n > 0: theta(a q^k); n < 0: theta(a q^(n+k))
    const double exponent = (n > 0) ? static_cast<double>(k) : static_cast<double>(n + k);
    const EvalResult factor = elliptic_theta(a * std::pow(q, exponent), p, ctl);
    if (n < 0 && std::abs(factor.value) <= ctl.abs_eps) {
      throw DivisionByZero("elliptic_pochhammer: reciprocal of a vanishing theta factor");
    }
    product *= factor.value;
    rel += factor.err_estimate / std::max(std::abs(factor.value), ctl.abs_eps);
    terms += factor.terms_used;
  }
  const Complex value = (n > 0) ? product : 1.0 / product;
  return {value, (rel + 2.0 * detail::kEps * static_cast<double>(count)) * std::abs(value), terms};
}

double CoefficientRule::operator()(long n, double q) const {
  if (kind == Kind::Gaussian) {
    const double dn = static_cast<double>(n);
    return std::pow(q, dn * dn);
  }
  const long offset = n - first_index;
  if (offset < 0 || offset >= static_cast<long>(values.size())) return 0.0;
  return values[static_cast<std::size_t>(offset)];
}

EvalResult modular_series(ModularKind kind, std::span<const Complex> upper,
                          std::span<const Complex> lower, double q, double p,
                          const CoefficientRule& coeff, Complex z, const SeriesControl& ctl) {
  ctl.validate();
  check_modular(q, p);
  for (double v : coeff.values) {
    if (!(v >= 0.0)) throw DomainError("modular_series: coefficient table must be nonnegative");
  }
  const auto forward = [&](long k) { return forward_factor(kind, upper, lower, q, p, k, ctl); };
  const SideSum right =
      sum_side(forward, [](long k) { return k; }, coeff, q, z, true, ctl);
  if (kind == ModularKind::E) {
    const double err = 2.0 * right.last + 4.0 * detail::kEps * right.abs_sum;
    return {right.sum, err, right.terms};
  }
  const bool has_negative = !coeff.has_finite_support() || coeff.first_index < 0;
  if (!has_negative) {
    return {right.sum, 2.0 * right.last + 4.0 * detail::kEps * right.abs_sum, right.terms};
  }
  if (z == Complex{}) throw DomainError("modular_series: G series needs z != 0");
  const auto backward = [&](long m) { return backward_factor(upper, lower, q, p, m, ctl); };
  const SideSum left =
      sum_side(backward, [](long k) { return -k; }, coeff, q, 1.0 / z, false, ctl);
  const Complex value = right.sum + left.sum;
  const double err = 2.0 * (right.last + left.last) +
                     4.0 * detail::kEps * (right.abs_sum + left.abs_sum);
  return {value, err, right.terms + left.terms};
}

Complex modular_coefficient(ModularKind kind, std::span<const Complex> upper,
                            std::span<const Complex> lower, double q, double p,
                            const CoefficientRule& coeff, long n, const SeriesControl& ctl) {
  check_modular(q, p);
  if (kind == ModularKind::E && n < 0) return 0.0;
  Complex pochhammer = 1.0;
  if (n >= 0) {
    for (long k = 0; k < n; ++k) pochhammer *= forward_factor(kind, upper, lower, q, p, k, ctl);
  } else {
    for (long m = 0; m < -n; ++m) pochhammer *= backward_factor(upper, lower, q, p, m, ctl);
  }
  return pochhammer * coeff(n, q);
}

}  // namespace sfpsd
