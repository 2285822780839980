#pragma once

// Double-exponential quadrature (tanh-sinh, exp-sinh, sinh-sinh).
//
// The trapezoid rule is applied in the transformed variable t with step
// h0 / 2^level; each level adds the odd-multiple nodes so earlier work is
// reused. Refinement stops when two consecutive levels agree to target_eps
// relative to the largest component of the integral.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sfpsd/series.hpp"

namespace sfpsd {

enum class QuadDomain {
  Finite,    // [a, b]
  HalfLine,  // [a, inf)
  RealLine,  // (-inf, inf)
};

struct QuadControl {
  int min_levels = 2;
  int max_levels = 10;
  double target_eps = 1e-12;
  double t_max = 6.5;
  double h0 = 0.5;
};

// One quadrature node. `left` = x - a and `right` = b - x are computed
// without cancellation so integrands can use them near the endpoints
// (infinite on unbounded sides). On a finite interval x itself may round
// onto an endpoint, so integrands singular there must use left/right. `weight` is h * dx/dt; `log_weight` is its
// logarithm and stays finite when `weight` over- or underflows.
struct QuadNode {
  double x;
  double left;
  double right;
  double weight;
  double log_weight;
};

struct QuadResult {
  Complex value;
  double err_estimate = 0.0;
  int levels = 0;
  std::size_t evaluations = 0;
};

struct QuadVectorResult {
  std::vector<Complex> values;
  double err_estimate = 0.0;
  int levels = 0;
  std::size_t evaluations = 0;
};

// Integrand for vector-valued integrals: adds its weighted contribution
// (already multiplied by the node weight) into `out`.
using VectorIntegrand = std::function<void(const QuadNode&, std::span<Complex> out)>;

// Scalar integrand value at a node (unweighted).
using ScalarIntegrand = std::function<Complex(const QuadNode&)>;

QuadVectorResult integrate_vector(QuadDomain domain, double a, double b, std::size_t dim,
                                  const VectorIntegrand& f, const QuadControl& ctl = {});

QuadResult integrate(QuadDomain domain, double a, double b, const ScalarIntegrand& f,
                     const QuadControl& ctl = {});

}  // namespace sfpsd
