#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "sfpsd/errors.hpp"
#include "sfpsd/series.hpp"

namespace sfpsd::detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) {
    throw OverflowError(std::string(what) + ": result is not finite");
  }
}

// expm1(u) / u, continuous at u = 0.
inline Complex expm1_over(Complex u) {
  if (std::abs(u) < 1e-3) {
    // Taylor: 1 + u/2 + u^2/6 + u^3/24 + u^4/120 + u^5/720
    return 1.0 + u * (1.0 / 2 + u * (1.0 / 6 + u * (1.0 / 24 + u * (1.0 / 120 + u / 720.0))));
  }
  return (std::exp(u) - 1.0) / u;
}

// Euler-Maclaurin remainder for sum_{n>=0} (n+x)^-s beyond the integral
// term: x^-s / 2 + sum_{k=1..6} B_2k/(2k)! (s)_{2k-1} x^(-s-2k+1).
// err receives the magnitude of the first omitted (B_14) correction.
Complex euler_maclaurin_tail(Complex s, double x, double& err);

}  // namespace sfpsd::detail
