#include "sfpsd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail.hpp"

namespace sfpsd {

using detail::kPi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maps t to a node; returns false when the node collapses onto an endpoint
// or leaves the double range.
bool make_node(QuadDomain domain, double a, double b, double t, double h, QuadNode& node) {
  const double u = 0.5 * kPi * std::sinh(t);
  const double log_dt = std::log(h * 0.5 * kPi * std::cosh(t));
  switch (domain) {
    case QuadDomain::Finite: {
      const double half = 0.5 * (b - a);
      const double e = std::exp(-2.0 * std::abs(u));
      const double near = half * 2.0 * e / (1.0 + e);
      const double far = half * 2.0 / (1.0 + e);
      if (!(near > 0.0)) return false;
      node.left = (u < 0.0) ? near : far;
      node.right = (u < 0.0) ? far : near;
      // x may round onto an endpoint; left/right stay exact.
      node.x = std::clamp((u < 0.0) ? a + node.left : b - node.right, a, b);
      // dx/dt = half * (pi/2) cosh t / cosh^2 u, 1/cosh^2 u = 4e/(1+e)^2
      node.log_weight = log_dt + std::log(4.0 * half) - 2.0 * std::abs(u) - 2.0 * std::log1p(e);
      break;
    }
    case QuadDomain::HalfLine: {
      const double offset = std::exp(u);
      if (!(offset > 0.0) || !std::isfinite(offset)) return false;
      node.left = offset;
      node.right = kInf;
      node.x = a + offset;
      if (!std::isfinite(node.x) || node.x <= a) return false;
      node.log_weight = log_dt + u;
      break;
    }
    case QuadDomain::RealLine: {
      node.x = std::sinh(u);
      if (!std::isfinite(node.x)) return false;
      node.left = kInf;
      node.right = kInf;
      // log cosh u = |u| + log1p(exp(-2|u|)) - log 2
      node.log_weight = log_dt + std::abs(u) + std::log1p(std::exp(-2.0 * std::abs(u))) - std::log(2.0);
      break;
    }
  }
  node.weight = std::exp(node.log_weight);
  return true;
}

}  // namespace

QuadVectorResult integrate_vector(QuadDomain domain, double a, double b, std::size_t dim,
                                  const VectorIntegrand& f, const QuadControl& ctl) {
  if (domain == QuadDomain::Finite && !(b > a)) {
    throw DomainError("integrate: empty or reversed interval");
  }
  QuadVectorResult result;
  std::vector<Complex> current(dim);
  std::vector<Complex> previous(dim);
  std::vector<Complex> level_sum(dim);
  QuadNode node{};
  for (int level = 0; level <= ctl.max_levels; ++level) {
    const double h = ctl.h0 / std::ldexp(1.0, level);
    std::fill(level_sum.begin(), level_sum.end(), Complex{});
    const auto k_max = static_cast<long>(std::floor(ctl.t_max / h));
    const long stride = (level == 0) ? 1 : 2;
    const long k_first = (level == 0) ? -k_max : -(k_max % 2 == 0 ? k_max - 1 : k_max);
    for (long k = k_first; k <= k_max; k += stride) {
      if (!make_node(domain, a, b, static_cast<double>(k) * h, h, node)) continue;
      f(node, level_sum);
      ++result.evaluations;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      current[i] = (level == 0 ? Complex{} : 0.5 * previous[i]) + level_sum[i];
      if (!detail::is_finite(current[i])) {
        throw QuadratureNoConvergence("integrate: non-finite integrand contribution");
      }
    }
    result.levels = level;
    if (level > 0) {
      double diff = 0.0;
      double norm = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        diff = std::max(diff, std::abs(current[i] - previous[i]));
        norm = std::max(norm, std::abs(current[i]));
      }
      result.err_estimate = diff;
      if (level >= ctl.min_levels && diff <= ctl.target_eps * norm) {
        result.values = current;
        return result;
      }
      if (level >= ctl.min_levels && norm == 0.0) {
        result.values = current;
        return result;
      }
    }
    previous.swap(current);
  }
  throw QuadratureNoConvergence("integrate: levels exhausted before reaching target_eps");
}

QuadResult integrate(QuadDomain domain, double a, double b, const ScalarIntegrand& f,
                     const QuadControl& ctl) {
  const auto vec = integrate_vector(
      domain, a, b, 1,
      [&](const QuadNode& node, std::span<Complex> out) {
        const Complex value = f(node);
        if (value == Complex{}) return;
        out[0] += value * node.weight;
      },
      ctl);
  return {vec.values[0], vec.err_estimate, vec.levels, vec.evaluations};
}

}  // namespace sfpsd
