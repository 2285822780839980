#include <cmath>
#include <sstream>

#include "detail.hpp"
#include "sfpsd/kernels.hpp"

namespace sfpsd {

namespace {

using detail::kPi;

class Checker {
 public:
  Checker(ValidationReport& report, std::size_t factor) : report_(report), factor_(factor) {}

  void require(bool ok, const std::string& condition, const std::string& detail = {},
               long point = -1) {
    if (!ok) report_.violations.push_back({factor_, point, condition, detail});
  }

 private:
  ValidationReport& report_;
  std::size_t factor_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool finite_point(const Point& p) { return detail::is_finite(p.first) && detail::is_finite(p.second); }

// Real and nonnegative up to rounding.
bool nonnegative(Complex c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag()) &&
         std::abs(c.imag()) <= 1e-12 * std::abs(c.real()) + 1e-300 && c.real() >= -1e-300;
}

void check_unit_q(Checker& c, double q) { c.require(q > 0.0 && q < 1.0, "0 < q < 1", "q = " + fmt(q)); }

void check_points_re(Checker& c, const FactorSpec& f, const char* condition) {
  for (std::size_t j = 0; j < f.points.size(); ++j) {
    c.require(f.points[j].first.real() > 0.0, condition, {}, static_cast<long>(j));
  }
}

void check_hypergeom(Checker& c, const FactorSpec& f) {
  const SharedParams& sh = f.shared;
  const std::size_t r = sh.upper.size();
  const std::size_t s = sh.lower.size();
  bool terminating = false;
  for (const Complex& a : sh.upper) {
    terminating = terminating || (a.imag() == 0.0 && a.real() <= 0.0 && a.real() == std::round(a.real()));
  }
  c.require(r <= s + 1 || terminating, "s + 1 >= r");
  for (const Complex& b : sh.lower) {
    const bool bad = b.imag() == 0.0 && b.real() <= 0.0 && b.real() == std::round(b.real());
    c.require(!bad, "lower parameters are not non-positive integers");
  }
  if (r == s + 1 && !terminating) {
    for (std::size_t j = 0; j < f.points.size(); ++j) {
      c.require(std::abs(f.points[j].first) < 1.0, "|z_j| < 1 when s + 1 = r", {},
                static_cast<long>(j));
    }
  }
  // (a_1..a_r)_n / (b_1..b_s)_n >= 0 for n up to the horizon.
  Complex ratio = 1.0;
  for (long n = 0; n < kCoefficientHorizon; ++n) {
    const double dn = static_cast<double>(n);
    for (const Complex& a : sh.upper) ratio *= a + dn;
    for (const Complex& b : sh.lower) {
      if (b + dn == Complex{}) return;
      ratio /= b + dn;
    }
    if (!nonnegative(ratio)) {
      c.require(false, "(a)_n / (b)_n >= 0", "fails at n = " + std::to_string(n + 1));
      return;
    }
    if (ratio == Complex{}) return;
  }
}

void check_q_hypergeom(Checker& c, const FactorSpec& f) {
  const SharedParams& sh = f.shared;
  check_unit_q(c, sh.q);
  c.require(sh.alpha >= 0.0, "alpha >= 0");
  if (sh.alpha == 0.0) {
    c.require(sh.radius > 0.0 && sh.radius <= 1.0, "0 < radius <= 1");
    for (std::size_t j = 0; j < f.points.size(); ++j) {
      c.require(std::norm(f.points[j].first) < sh.radius, "|z_j|^2 < radius when alpha = 0", {},
                static_cast<long>(j));
    }
  }
  if (!(sh.q > 0.0 && sh.q < 1.0)) return;
  // (a;q)_n / (b;q)_n >= 0 for n up to the horizon.
  Complex ratio = 1.0;
  double q_pow = 1.0;
  for (long n = 0; n < kCoefficientHorizon; ++n) {
    for (const Complex& a : sh.upper) ratio *= 1.0 - a * q_pow;
    for (const Complex& b : sh.lower) {
      const Complex d = 1.0 - b * q_pow;
      if (d == Complex{}) {
        c.require(false, "(b;q)_n != 0", "zero factor at n = " + std::to_string(n + 1));
        return;
      }
      ratio /= d;
    }
    q_pow *= sh.q;
    if (!nonnegative(ratio)) {
      c.require(false, "(a;q)_n / (b;q)_n >= 0", "fails at n = " + std::to_string(n + 1));
      return;
    }
    if (ratio == Complex{}) return;
  }
}

void check_modular(Checker& c, const FactorSpec& f, ModularKind kind, const SeriesControl& ctl) {
  const SharedParams& sh = f.shared;
  c.require(sh.sigma > 0.0, "sigma > 0");
  c.require(sh.tau > 0.0, "tau > 0");
  const CoefficientRule& rule = sh.coeff;
  if (rule.kind == CoefficientRule::Kind::Table) {
    bool ok = !rule.values.empty();
    for (double v : rule.values) ok = ok && std::isfinite(v) && v >= 0.0;
    c.require(ok, "coefficient table is nonempty, finite and nonnegative");
    if (!ok) return;
  }
  if (!(sh.sigma > 0.0 && sh.tau > 0.0)) return;
  const bool negative_side = kind == ModularKind::G &&
                             (!rule.has_finite_support() || rule.first_index < 0);
  if (negative_side) {
    for (std::size_t j = 0; j < f.points.size(); ++j) {
      c.require(f.points[j].first != Complex{}, "w_j != 0 for a bilateral series", {},
                static_cast<long>(j));
    }
  }
  const long lo = (kind == ModularKind::G) ? -kCoefficientHorizon : 0;
  for (long n = lo; n <= kCoefficientHorizon; ++n) {
    if (rule(n, sh.modular_q()) == 0.0) continue;
    try {
      const Complex coeff = modular_coefficient(kind, sh.upper, sh.lower, sh.modular_q(),
                                                sh.modular_p(), rule, n, ctl);
      if (!nonnegative(coeff)) {
        c.require(false, "Pochhammer ratio times coefficient >= 0",
                  "fails at n = " + std::to_string(n));
        return;
      }
    } catch (const NumericError& e) {
      c.require(false, "theta factors nonzero", e.what());
      return;
    }
  }
}

void check_factor(Checker& c, const FactorSpec& f, const SeriesControl& ctl) {
  const SharedParams& sh = f.shared;
  switch (f.family) {
    case KernelFamily::THETA3:
      check_unit_q(c, sh.q);
      break;
    case KernelFamily::DN:
      check_unit_q(c, sh.q);
      if (!(sh.q > 0.0 && sh.q < 1.0)) break;
      for (std::size_t j = 0; j < f.points.size(); ++j) {
        const double lhs = sh.q * std::exp(4.0 * kPi * std::abs(f.points[j].first.imag()));
        c.require(lhs < 1.0, "q*exp(4*pi*|Im v_j|) < 1", "lhs = " + fmt(lhs), static_cast<long>(j));
      }
      break;
    case KernelFamily::ZETA_TAIL:
    case KernelFamily::ETA_GAMMA_ZETA:
    case KernelFamily::ETA_GAMMA1_ZETA:
      check_points_re(c, f, "Re(s_j) > 0");
      break;
    case KernelFamily::GAMMA:
      check_points_re(c, f, "Re(z_j) > 0");
      break;
    case KernelFamily::SIN_POWER:
      c.require(sh.lambda > 0.0, "lambda > 0");
      for (std::size_t j = 0; j < f.points.size(); ++j) {
        const Complex phi = f.points[j].first;
        c.require(phi.imag() == 0.0 && phi.real() > 0.0 && phi.real() < kPi / 2.0,
                  "0 < phi_j < pi/2 (real)", {}, static_cast<long>(j));
      }
      break;
    case KernelFamily::BETA:
      for (std::size_t j = 0; j < f.points.size(); ++j) {
        c.require(f.points[j].first.real() > 0.0, "Re(p_j) > 0", {}, static_cast<long>(j));
        c.require(f.points[j].second.real() > 0.0, "Re(q_j) > 0", {}, static_cast<long>(j));
      }
      break;
    case KernelFamily::HYPERGEOM:
      check_hypergeom(c, f);
      break;
    case KernelFamily::POLYGAMMA_ZETA:
      c.require(sh.order >= 1, "p >= 1");
      for (std::size_t j = 0; j < f.points.size(); ++j) {
        const double re = f.points[j].first.real();
        c.require(re > 0.0 && re < 0.5, "0 < Re(s_j) < 1/2", {}, static_cast<long>(j));
      }
      break;
    case KernelFamily::RIEMANN_XI:
      for (std::size_t j = 0; j < f.points.size(); ++j) {
        c.require(std::abs(f.points[j].first.imag()) < 0.25, "|Im z_j| < 1/4", {},
                  static_cast<long>(j));
      }
      break;
    case KernelFamily::HURWITZ_TAIL:
    case KernelFamily::HURWITZ_DIFF:
      c.require(sh.a > 0.0, "a > 0");
      check_points_re(c, f, "Re(s_j) > 0");
      break;
    case KernelFamily::LERCH:
      c.require(sh.z < 1.0, "z < 1");
      c.require(sh.a > 0.0, "a > 0");
      check_points_re(c, f, "Re(s_j) > 0");
      break;
    case KernelFamily::AW_QGAMMA:
      check_unit_q(c, sh.q);
      for (std::size_t j = 0; j < f.points.size(); ++j) {
        const Point& p = f.points[j];
        c.require(p.first.imag() == 0.0 && p.first.real() > 0.0, "alpha_j1 > 0 (real)", {},
                  static_cast<long>(j));
        c.require(p.second.imag() == 0.0 && p.second.real() > 0.0, "alpha_j2 > 0 (real)", {},
                  static_cast<long>(j));
      }
      break;
    case KernelFamily::Q_HYPERGEOM:
      check_q_hypergeom(c, f);
      break;
    case KernelFamily::MODULAR_E:
      check_modular(c, f, ModularKind::E, ctl);
      break;
    case KernelFamily::MODULAR_G:
      check_modular(c, f, ModularKind::G, ctl);
      break;
  }
}

}  // namespace

ValidationReport validate_spec(const MatrixSpec& spec, const SeriesControl& ctl) {
  ValidationReport report;
  if (spec.factors.empty()) {
    report.violations.push_back({0, -1, "at least one factor", {}});
    return report;
  }
  const std::size_t n = spec.dimension();
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const FactorSpec& f = spec.factors[i];
    Checker c(report, i);
    c.require(!f.points.empty(), "n >= 1");
    c.require(f.points.size() == n, "all factors have the same n",
              std::to_string(f.points.size()) + " vs " + std::to_string(n));
    bool finite = true;
    for (std::size_t j = 0; j < f.points.size(); ++j) {
      if (!finite_point(f.points[j])) {
        c.require(false, "finite point coordinates", {}, static_cast<long>(j));
        finite = false;
      }
    }
    if (!finite) continue;
    try {
      check_factor(c, f, ctl);
    } catch (const Error& e) {
      c.require(false, "parameters evaluable", e.what());
    }
  }
  return report;
}

}  // namespace sfpsd
