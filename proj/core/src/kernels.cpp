#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "detail.hpp"
#include "sfpsd/kernels.hpp"

namespace sfpsd {

namespace {

using detail::kPi;

constexpr std::array<std::pair<KernelFamily, std::string_view>, 18> kNames = {{
    {KernelFamily::THETA3, "THETA3"},
    {KernelFamily::DN, "DN"},
    {KernelFamily::ZETA_TAIL, "ZETA_TAIL"},
    {KernelFamily::GAMMA, "GAMMA"},
    {KernelFamily::SIN_POWER, "SIN_POWER"},
    {KernelFamily::BETA, "BETA"},
    {KernelFamily::HYPERGEOM, "HYPERGEOM"},
    {KernelFamily::ETA_GAMMA_ZETA, "ETA_GAMMA_ZETA"},
    {KernelFamily::ETA_GAMMA1_ZETA, "ETA_GAMMA1_ZETA"},
    {KernelFamily::POLYGAMMA_ZETA, "POLYGAMMA_ZETA"},
    {KernelFamily::RIEMANN_XI, "RIEMANN_XI"},
    {KernelFamily::HURWITZ_TAIL, "HURWITZ_TAIL"},
    {KernelFamily::HURWITZ_DIFF, "HURWITZ_DIFF"},
    {KernelFamily::LERCH, "LERCH"},
    {KernelFamily::AW_QGAMMA, "AW_QGAMMA"},
    {KernelFamily::Q_HYPERGEOM, "Q_HYPERGEOM"},
    {KernelFamily::MODULAR_E, "MODULAR_E"},
    {KernelFamily::MODULAR_G, "MODULAR_G"},
}};

// Stieltjes constants gamma_0..gamma_3.
constexpr std::array<double, 4> kStieltjes = {
    0.5772156649015329, -0.07281584548367672, -0.009690363192872318, 0.002053834420303346};

Complex zeta_tail_kernel(Complex w, const SeriesControl& ctl) {
  const Complex eps = w - 1.0;
  if (std::abs(eps) < 1e-3) {
    // zeta(w) = 1/eps + sum_n (-1)^n gamma_n eps^n / n!, so the pole cancels:
    // K = (1 - sum_n (-1)^n gamma_n eps^n / n!) / w.
    Complex series = 0.0;
    Complex power = 1.0;
    double factorial = 1.0;
    for (std::size_t n = 0; n < kStieltjes.size(); ++n) {
      if (n > 0) factorial *= static_cast<double>(n);
      series += ((n % 2 == 0) ? 1.0 : -1.0) * kStieltjes[n] * power / factorial;
      power *= eps;
    }
    return (1.0 - series) / w;
  }
  return 1.0 / eps - zeta(w, ctl).value / w;
}

Complex sin_power_kernel(double lambda, double angle) {
  const double s = std::sin(angle);
  if (!(s > 0.0)) throw DomainError("SIN_POWER: sin(phi_j + phi_k) must be positive");
  return std::pow(s, -lambda);
}

}  // namespace

std::string_view family_name(KernelFamily family) {
  for (const auto& [f, name] : kNames) {
    if (f == family) return name;
  }
  return "UNKNOWN";
}

std::optional<KernelFamily> parse_family(std::string_view name) {
  for (const auto& [f, n] : kNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

double SharedParams::modular_q() const { return std::exp(-2.0 * kPi * sigma); }
double SharedParams::modular_p() const { return std::exp(-2.0 * kPi * tau); }

Complex kernel_value(const FactorSpec& factor, std::size_t j, std::size_t k,
                     const SeriesControl& ctl) {
  if (j >= factor.points.size() || k >= factor.points.size()) {
    throw DimensionMismatch("kernel_value: index out of range");
  }
  const Point& pj = factor.points[j];
  const Point& pk = factor.points[k];
  const SharedParams& sh = factor.shared;
  const Complex w = pj.first + std::conj(pk.first);
  const Complex diff = pj.first - std::conj(pk.first);
  const Complex prod = pj.first * std::conj(pk.first);

  switch (factor.family) {
    case KernelFamily::THETA3:
      return theta3(diff, sh.q, ctl).value;
    case KernelFamily::DN:
      return jacobi_dn(diff, sh.q, ctl).value;
    case KernelFamily::ZETA_TAIL:
      return zeta_tail_kernel(w, ctl);
    case KernelFamily::GAMMA:
      return gamma(w).value;
    case KernelFamily::SIN_POWER:
      return sin_power_kernel(sh.lambda, pj.first.real() + pk.first.real());
    case KernelFamily::BETA:
      return beta(w, pj.second + std::conj(pk.second)).value;
    case KernelFamily::HYPERGEOM:
      return hypergeometric_f(sh.upper, sh.lower, prod, ctl).value;
    case KernelFamily::ETA_GAMMA_ZETA:
      return gamma(w).value * dirichlet_eta(w, ctl).value;
    case KernelFamily::ETA_GAMMA1_ZETA:
      return gamma(w + 1.0).value * dirichlet_eta(w, ctl).value;
    case KernelFamily::POLYGAMMA_ZETA:
      return rising_factorial(w, sh.order) * zeta(static_cast<double>(sh.order) + w, ctl).value /
             sin_pi(w);
    case KernelFamily::RIEMANN_XI:
      return riemann_xi(diff, ctl).value;
    case KernelFamily::HURWITZ_TAIL:
      return hurwitz_tail(w, sh.a, ctl).value;
    case KernelFamily::HURWITZ_DIFF:
      return gamma(w).value *
             hurwitz_zeta_difference(w, (sh.a + 1.0) / 4.0, (sh.a + 3.0) / 4.0, ctl).value;
    case KernelFamily::LERCH:
      return gamma(w).value * lerch_phi(sh.z, w, sh.a, ctl).value;
    case KernelFamily::AW_QGAMMA: {
      const double a1 = pj.first.real() + pk.first.real();
      const double a2 = pj.second.real() + pk.second.real();
      return gamma_q(a1, sh.q, ctl).value * gamma_q(a2, sh.q, ctl).value /
             gamma_q(a1 + a2, sh.q, ctl).value;
    }
    case KernelFamily::Q_HYPERGEOM:
      return deformed_q_hypergeometric(sh.upper, sh.lower, sh.q, sh.alpha, prod, ctl, sh.radius)
          .value;
    case KernelFamily::MODULAR_E:
      return modular_series(ModularKind::E, sh.upper, sh.lower, sh.modular_q(), sh.modular_p(),
                            sh.coeff, prod, ctl)
          .value;
    case KernelFamily::MODULAR_G:
      return modular_series(ModularKind::G, sh.upper, sh.lower, sh.modular_q(), sh.modular_p(),
                            sh.coeff, prod, ctl)
          .value;
  }
  throw UnknownFunction("kernel_value: unknown family");
}

HermitianMatrix build_matrix(const MatrixSpec& spec, const SeriesControl& ctl) {
  if (spec.factors.empty()) throw SpecError("build_matrix: spec has no factors");
  const std::size_t n = spec.dimension();
  for (const FactorSpec& f : spec.factors) {
    if (f.points.size() != n) throw DimensionMismatch("build_matrix: factors differ in dimension");
  }
  const ValidationReport report = validate_spec(spec, ctl);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    throw SpecError("build_matrix: factor " + std::to_string(v.factor) + " violates " +
                    v.condition + (v.detail.empty() ? "" : " (" + v.detail + ")"));
  }

  HermitianMatrix m(n);
  std::fill(m.entries.begin(), m.entries.end(), Complex(1.0));
  for (const FactorSpec& f : spec.factors) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) m(j, k) *= kernel_value(f, j, k, ctl);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const Complex upper = m(j, k);
      const Complex lower = std::conj(m(k, j));
      if (!detail::is_finite(upper) || !detail::is_finite(lower)) {
        throw OverflowError("build_matrix: non-finite entry");
      }
      // Scale by the geometric mean of the diagonal as well so tiny
      // off-diagonal entries of a large matrix are not held to 1e-12 of 1.
      const double scale =
          1.0 + std::max(std::abs(upper), std::sqrt(std::abs(m(j, j)) * std::abs(m(k, k))));
      if (std::abs(upper - lower) > kSymmetrizeTolerance * scale) {
        throw ConjugateSymmetryViolation("build_matrix: entry (" + std::to_string(j) + "," +
                                         std::to_string(k) + ") is not conjugate symmetric");
      }
      const Complex avg = 0.5 * (upper + lower);
      m(j, k) = avg;
      m(k, j) = std::conj(avg);
    }
  }
  return m;
}

}  // namespace sfpsd
