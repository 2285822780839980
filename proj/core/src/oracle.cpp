#include <algorithm>
#include <cmath>
#include <functional>

#include "detail.hpp"
#include "sfpsd/oracle.hpp"
#include "sfpsd/specialfn.hpp"

namespace sfpsd {

namespace {

using detail::kI;
using detail::kPi;

std::size_t packed(std::size_t j, std::size_t k) { return k * (k + 1) / 2 + j; }  // j <= k

HermitianMatrix unpack(const std::vector<Complex>& upper, std::size_t n) {
  HermitianMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      m(j, k) = upper[packed(j, k)];
      m(k, j) = std::conj(upper[packed(j, k)]);
    }
    m(k, k) = upper[packed(k, k)].real();
  }
  return m;
}

double max_abs_imag(std::span<const Complex> v) {
  double g = 0.0;
  for (const Complex& c : v) g = std::max(g, std::abs(c.imag()));
  return g;
}

// log f_j(x) and log weight(x) for one weighted line. The weight may use the
// node's endpoint distances; returning -inf drops the node.
struct LineModel {
  std::function<Complex(std::size_t j, const QuadNode& node)> log_feature;
  std::function<double(const QuadNode& node)> log_weight;
};

struct Piece {
  QuadDomain domain;
  double a;
  double b;
};

void accumulate_pieces(const LineModel& model, std::size_t n, const std::vector<Piece>& pieces,
                       const QuadControl& quad, std::vector<Complex>& total) {
  std::vector<Complex> g(n);
  for (const Piece& piece : pieces) {
    const QuadVectorResult r = integrate_vector(
        piece.domain, piece.a, piece.b, total.size(),
        [&](const QuadNode& node, std::span<Complex> out) {
          const double lw = model.log_weight(node);
          if (!std::isfinite(lw)) return;
          const double half = 0.5 * (lw + node.log_weight);
          for (std::size_t j = 0; j < n; ++j) {
            const Complex e = model.log_feature(j, node) + half;
            g[j] = (e.real() < -745.0) ? Complex{} : std::exp(e);
          }
          for (std::size_t k = 0; k < n; ++k) {
            const Complex gk = std::conj(g[k]);
            for (std::size_t j = 0; j <= k; ++j) out[packed(j, k)] += g[j] * gk;
          }
        },
        quad);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += r.values[i];
  }
}

// B_2k / (2k)! for k = 1..7.
constexpr double kBernoulli[7] = {1.0 / 12.0,          -1.0 / 720.0,           1.0 / 30240.0,
                                  -1.0 / 1209600.0,    1.0 / 47900160.0,       -691.0 / 1307674368000.0,
                                  1.0 / 74724249600.0};

// int_X^inf P(u) (u + c)^(-w-1) du where P is the fractional part shifted so
// that X is an integer point of it: 1/2 int g - sum_k B_2k/(2k)! g^(2k-2)(X).
Complex sawtooth_tail(Complex w, double x_shifted) {
  const Complex base = std::pow(Complex(x_shifted), -w);
  Complex sum = 0.5 * base / w;
  Complex rising = 1.0;  // (w+1)_(2k-2)
  Complex power = base / x_shifted;  // x^(-w-1)
  const double inv2 = 1.0 / (x_shifted * x_shifted);
  for (int k = 1; k <= 7; ++k) {
    sum -= kBernoulli[k - 1] * rising * power;
    const double m = 2.0 * k - 2.0;
    rising *= (w + 1.0 + m) * (w + 2.0 + m);
    power *= inv2;
  }
  return sum;
}

double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

}  // namespace

DiscreteMeasure theta3_measure(double q, double growth, double target_eps) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("theta3_measure: requires 0 < q < 1");
  DiscreteMeasure m;
  m.growth = growth;
  m.atoms.push_back({0.0, 1.0});
  const double log_q = std::log(q);
  const double rate = 4.0 * kPi * growth;
  double total = 1.0;
  for (long n = 1; n < 100000; ++n) {
    const double dn = static_cast<double>(n);
    const double w = std::exp(dn * dn * log_q);
    m.atoms.push_back({dn, w});
    m.atoms.push_back({-dn, w});
    total += 2.0 * w;
    const double next = dn + 1.0;
    const double ratio = std::exp((2.0 * next + 1.0) * log_q + rate);
    if (ratio < 1.0) {
      const double bound = 2.0 * std::exp(next * next * log_q + next * rate) / (1.0 - ratio);
      if (bound <= target_eps * total) {
        m.tail_bound = bound;
        return m;
      }
    }
  }
  throw TailTooLarge("theta3_measure: truncation did not reach target");
}

DiscreteMeasure dn_measure(double q, double growth, double target_eps) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("dn_measure: requires 0 < q < 1");
  const double log_rho = std::log(q) + 4.0 * kPi * growth;
  if (!(log_rho < 0.0)) throw TailTooLarge("dn_measure: q exp(4 pi growth) >= 1");
  // Quarter period from the theta measure's total mass.
  double theta0 = 1.0;
  for (long n = 1; n < 1000; ++n) {
    const double t = std::pow(q, static_cast<double>(n * n));
    theta0 += 2.0 * t;
    if (t < 1e-18) break;
  }
  const double big_k = 0.5 * kPi * theta0 * theta0;
  const double c = kPi / big_k;
  DiscreteMeasure m;
  m.growth = growth;
  m.atoms.push_back({0.0, 0.5 * c});
  double total = 0.5 * c;
  const double rho = std::exp(log_rho);
  for (long n = 1; n < 1000000; ++n) {
    const double dn = static_cast<double>(n);
    const double qn = std::pow(q, dn);
    const double w = c * qn / (1.0 + qn * qn);
    m.atoms.push_back({dn, w});
    m.atoms.push_back({-dn, w});
    total += 2.0 * w;
    const double bound = 2.0 * c * std::exp((dn + 1.0) * log_rho) / (1.0 - rho);
    if (bound <= target_eps * total) {
      m.tail_bound = bound;
      return m;
    }
  }
  throw TailTooLarge("dn_measure: truncation did not reach target");
}

HermitianMatrix gram_discrete(const DiscreteMeasure& measure, std::span<const Complex> exponents,
                              double target_eps) {
  double total = 0.0;
  for (const Atom& atom : measure.atoms) {
    if (!(atom.weight >= 0.0)) throw DomainError("gram_discrete: negative atom weight");
    total += atom.weight;
  }
  if (measure.tail_bound > target_eps * total) {
    throw TailTooLarge("gram_discrete: measure truncation tail exceeds target");
  }
  if (max_abs_imag(exponents) > measure.growth * (1.0 + 1e-12)) {
    throw TailTooLarge("gram_discrete: exponent outside the measure's growth bound");
  }
  const std::size_t n = exponents.size();
  std::vector<Complex> upper(n * (n + 1) / 2);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      const Complex d = exponents[j] - std::conj(exponents[k]);
      Complex sum = 0.0;
      // Smallest atoms last would be ideal; atoms come in (0, +1, -1, +2, ...)
      // order, so summing in reverse adds the tail first.
      for (auto it = measure.atoms.rbegin(); it != measure.atoms.rend(); ++it) {
        sum += it->weight * std::exp(2.0 * kPi * kI * it->location * d);
      }
      upper[packed(j, k)] = sum;
    }
  }
  return unpack(upper, n);
}

bool has_oracle(KernelFamily family) {
  switch (family) {
    case KernelFamily::THETA3:
    case KernelFamily::DN:
    case KernelFamily::GAMMA:
    case KernelFamily::BETA:
    case KernelFamily::ZETA_TAIL:
    case KernelFamily::ETA_GAMMA_ZETA:
    case KernelFamily::ETA_GAMMA1_ZETA:
    case KernelFamily::POLYGAMMA_ZETA:
    case KernelFamily::HURWITZ_TAIL:
    case KernelFamily::HURWITZ_DIFF:
    case KernelFamily::LERCH:
    case KernelFamily::SIN_POWER:
      return true;
    default:
      return false;
  }
}

bool is_discrete_oracle(KernelFamily family) {
  return family == KernelFamily::THETA3 || family == KernelFamily::DN;
}

double oracle_tolerance(KernelFamily family) { return is_discrete_oracle(family) ? 1e-10 : 1e-7; }

WeightedLine weighted_line_for(const FactorSpec& factor, const QuadControl& quad) {
  WeightedLine line;
  line.quad = quad;
  const SharedParams& sh = factor.shared;
  switch (factor.family) {
    case KernelFamily::GAMMA: line.weight = WeightId::GAMMA_WEIGHT; break;
    case KernelFamily::BETA: line.weight = WeightId::BETA_WEIGHT; break;
    case KernelFamily::ZETA_TAIL: line.weight = WeightId::ZETA_TAIL_WEIGHT; break;
    case KernelFamily::ETA_GAMMA_ZETA: line.weight = WeightId::ETA_WEIGHT; break;
    case KernelFamily::ETA_GAMMA1_ZETA: line.weight = WeightId::ETA1_WEIGHT; break;
    case KernelFamily::LERCH:
      line.weight = WeightId::LERCH_WEIGHT;
      line.a = sh.a;
      line.z = sh.z;
      break;
    case KernelFamily::POLYGAMMA_ZETA:
      line.weight = WeightId::POLYGAMMA_WEIGHT;
      line.order = sh.order;
      break;
    case KernelFamily::HURWITZ_TAIL:
      line.weight = WeightId::HURWITZ_TAIL_WEIGHT;
      line.a = sh.a;
      break;
    case KernelFamily::HURWITZ_DIFF:
      line.weight = WeightId::COSH_WEIGHT;
      line.a = sh.a;
      break;
    case KernelFamily::SIN_POWER:
      line.weight = WeightId::MP_WEIGHT;
      line.lambda = sh.lambda;
      break;
    default:
      throw SpecError("weighted_line_for: family " + std::string(family_name(factor.family)) +
                      " has no quadrature oracle");
  }
  return line;
}

HermitianMatrix gram_quadrature(const WeightedLine& line, const FactorSpec& factor) {
  const std::vector<Point>& pts = factor.points;
  const std::size_t n = pts.size();
  std::vector<Complex> total(n * (n + 1) / 2);
  LineModel model;
  std::vector<Piece> pieces;
  const double a = line.a;

  switch (line.weight) {
    case WeightId::GAMMA_WEIGHT:
      model.log_feature = [&](std::size_t j, const QuadNode& nd) { return pts[j].first * std::log(nd.x); };
      model.log_weight = [](const QuadNode& nd) { return -nd.x - std::log(nd.x); };
      pieces = {{QuadDomain::HalfLine, 0.0, 0.0}};
      break;
    case WeightId::BETA_WEIGHT:
      model.log_feature = [&](std::size_t j, const QuadNode& nd) {
        return pts[j].first * std::log(nd.left) + pts[j].second * std::log(nd.right);
      };
      model.log_weight = [](const QuadNode& nd) { return -std::log(nd.left) - std::log(nd.right); };
      pieces = {{QuadDomain::Finite, 0.0, 1.0}};
      break;
    case WeightId::ETA_WEIGHT:
      model.log_feature = [&](std::size_t j, const QuadNode& nd) { return pts[j].first * std::log(nd.x); };
      model.log_weight = [](const QuadNode& nd) {
        return -std::log(nd.x) - nd.x - std::log1p(std::exp(-nd.x));
      };
      pieces = {{QuadDomain::HalfLine, 0.0, 0.0}};
      break;
    case WeightId::ETA1_WEIGHT:
      model.log_feature = [&](std::size_t j, const QuadNode& nd) { return pts[j].first * std::log(nd.x); };
      model.log_weight = [](const QuadNode& nd) { return -nd.x - 2.0 * std::log1p(std::exp(-nd.x)); };
      pieces = {{QuadDomain::HalfLine, 0.0, 0.0}};
      break;
    case WeightId::LERCH_WEIGHT: {
      const double z = line.z;
      if (!(z < 1.0) || !(a > 0.0)) throw DomainError("LERCH_WEIGHT: requires z < 1, a > 0");
      model.log_feature = [&](std::size_t j, const QuadNode& nd) { return pts[j].first * std::log(nd.x); };
      model.log_weight = [a, z](const QuadNode& nd) {
        return -std::log(nd.x) - a * nd.x - std::log1p(-z * std::exp(-nd.x));
      };
      pieces = {{QuadDomain::HalfLine, 0.0, 0.0}};
      break;
    }
    case WeightId::COSH_WEIGHT:
      model.log_feature = [&](std::size_t j, const QuadNode& nd) {
        return pts[j].first * std::log(4.0 * nd.x);
      };
      model.log_weight = [a](const QuadNode& nd) {
        return -std::log(2.0 * nd.x) - a * nd.x - log_cosh(nd.x);
      };
      pieces = {{QuadDomain::HalfLine, 0.0, 0.0}};
      break;
    case WeightId::POLYGAMMA_WEIGHT: {
      const unsigned p = line.order;
      model.log_feature = [&](std::size_t j, const QuadNode& nd) { return -pts[j].first * std::log(nd.x); };
      model.log_weight = [p](const QuadNode& nd) {
        const double psi = polygamma_shift(p, nd.x).value.real();
        return (psi > 0.0) ? std::log(psi) - std::log(kPi) : -std::numeric_limits<double>::infinity();
      };
      pieces = {{QuadDomain::Finite, 0.0, 1.0}, {QuadDomain::HalfLine, 1.0, 0.0}};
      break;
    }
    case WeightId::MP_WEIGHT: {
      const double lambda = line.lambda;
      const double log_c = lambda * std::log(2.0) - log_gamma(lambda).real() - std::log(2.0 * kPi);
      model.log_feature = [&](std::size_t j, const QuadNode& nd) {
        return Complex(2.0 * pts[j].first.real() * nd.x);
      };
      model.log_weight = [lambda, log_c](const QuadNode& nd) {
        return log_c - kPi * nd.x + 2.0 * log_gamma(Complex(0.5 * lambda, nd.x)).real();
      };
      pieces = {{QuadDomain::RealLine, 0.0, 0.0}};
      break;
    }
    case WeightId::ZETA_TAIL_WEIGHT:
    case WeightId::HURWITZ_TAIL_WEIGHT: {
      const double shift = (line.weight == WeightId::ZETA_TAIL_WEIGHT) ? 0.0 : a;
      if (!(shift >= 0.0)) throw DomainError("HURWITZ_TAIL_WEIGHT: requires a > 0");
      // On [m, m+1] the fractional part is the distance to the left end.
      model.log_feature = [&pts, shift](std::size_t j, const QuadNode& nd) {
        return -pts[j].first * std::log(nd.x + shift);
      };
      model.log_weight = [shift](const QuadNode& nd) { return std::log(nd.left) - std::log(nd.x + shift); };
      for (int m = 1; m < kSawtoothCutoff; ++m) {
        pieces.push_back({QuadDomain::Finite, static_cast<double>(m), static_cast<double>(m + 1)});
      }
      accumulate_pieces(model, n, pieces, line.quad, total);
      const double x_tail = static_cast<double>(kSawtoothCutoff) + shift;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j <= k; ++j) {
          total[packed(j, k)] += sawtooth_tail(pts[j].first + std::conj(pts[k].first), x_tail);
        }
      }
      return unpack(total, n);
    }
  }
  accumulate_pieces(model, n, pieces, line.quad, total);
  return unpack(total, n);
}

std::optional<HermitianMatrix> oracle_matrix(const MatrixSpec& spec, const QuadControl& quad) {
  if (spec.factors.empty()) return std::nullopt;
  const std::size_t n = spec.dimension();
  HermitianMatrix out(n);
  std::fill(out.entries.begin(), out.entries.end(), Complex(1.0));
  for (const FactorSpec& f : spec.factors) {
    if (!has_oracle(f.family)) return std::nullopt;
    if (f.points.size() != n) throw DimensionMismatch("oracle_matrix: factors differ in dimension");
    HermitianMatrix g;
    if (is_discrete_oracle(f.family)) {
      std::vector<Complex> v;
      for (const Point& p : f.points) v.push_back(p.first);
      const double growth = max_abs_imag(v);
      const DiscreteMeasure measure = (f.family == KernelFamily::THETA3)
                                          ? theta3_measure(f.shared.q, growth)
                                          : dn_measure(f.shared.q, growth);
      g = gram_discrete(measure, v);
    } else {
      g = gram_quadrature(weighted_line_for(f, quad), f);
    }
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] *= g.entries[i];
  }
  return out;
}

IdentityCheck verify_mp_identity(double lambda, double phi, const QuadControl& quad) {
  if (!(lambda > 0.0)) throw DomainError("verify_mp_identity: requires lambda > 0");
  if (!(phi > 0.0 && phi < kPi)) throw DomainError("verify_mp_identity: requires 0 < phi < pi");
  const QuadResult r = integrate(
      QuadDomain::RealLine, 0.0, 0.0,
      [&](const QuadNode& nd) -> Complex {
        const double log_val = (2.0 * phi - kPi) * nd.x + 2.0 * log_gamma(Complex(lambda, nd.x)).real();
        return (log_val < -745.0) ? 0.0 : std::exp(log_val);
      },
      quad);
  IdentityCheck out;
  out.lhs = r.value.real() / (2.0 * kPi);
  out.quad_error = r.err_estimate / (2.0 * kPi);
  out.rhs = std::exp(log_gamma(2.0 * lambda).real() - 2.0 * lambda * std::log(2.0 * std::sin(phi)));
  out.rel_deviation = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

IdentityCheck verify_aw_integral(double q, const std::array<double, 4>& alphas, const QuadControl& quad) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("verify_aw_integral: requires 0 < q < 1");
  for (double al : alphas) {
    if (!(al > 0.0)) throw DomainError("verify_aw_integral: requires alpha > 0");
  }
  const QuadResult r = integrate(
      QuadDomain::Finite, 0.0, kPi,
      [&](const QuadNode& nd) -> Complex {
        const Complex e = std::exp(kI * nd.x);
        double log_val = 2.0 * std::log(std::abs(q_pochhammer(e * e, q).value));
        for (double al : alphas) {
          log_val -= 2.0 * std::log(std::abs(q_pochhammer(std::pow(q, al) * e, q).value));
        }
        return std::exp(log_val);
      },
      quad);
  const double qq = q_pochhammer(Complex(q), q).value.real();
  const double prefactor = std::pow(1.0 - q, 5.0) * std::pow(qq, 6.0) / (2.0 * kPi);
  IdentityCheck out;
  out.lhs = prefactor * r.value.real();
  out.quad_error = prefactor * r.err_estimate;
  double sum = 0.0;
  for (double al : alphas) sum += al;
  double rhs = std::pow(1.0 - q, 2.0 * sum) / gamma_q(sum, q).value.real();
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = j + 1; k < 4; ++k) rhs *= gamma_q(alphas[j] + alphas[k], q).value.real();
  }
  out.rhs = rhs;
  out.rel_deviation = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

CompareReport entrywise_compare(const HermitianMatrix& a, const HermitianMatrix& b, double rel_tol) {
  if (a.n != b.n) throw DimensionMismatch("entrywise_compare: dimensions differ");
  CompareReport out;
  for (std::size_t j = 0; j < a.n; ++j) {
    for (std::size_t k = 0; k < a.n; ++k) {
      const double scale = std::max({std::abs(a(j, k)), std::abs(b(j, k)),
                                     std::sqrt(std::abs(a(j, j)) * std::abs(a(k, k)))});
      const double diff = std::abs(a(j, k) - b(j, k));
      double dev = (scale > 0.0) ? diff / scale : 0.0;
      if (std::isnan(diff)) dev = std::numeric_limits<double>::infinity();
      if (dev > out.max_deviation || (j == 0 && k == 0)) {
        if (dev > out.max_deviation) {
          out.worst_j = j;
          out.worst_k = k;
        }
        out.max_deviation = std::max(out.max_deviation, dev);
      }
    }
  }
  out.within = out.max_deviation <= rel_tol;
  return out;
}

}  // namespace sfpsd
