#pragma once

// Scalar special functions evaluated from scratch in double precision.
//
// Every evaluator is a pure function of its arguments and a SeriesControl.
// Results carry an error estimate made of a truncation bound (geometric or
// Gaussian tail where one is available, the first omitted term otherwise)
// plus a rounding allowance proportional to the sum of term magnitudes.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sfpsd/errors.hpp"
#include "sfpsd/series.hpp"

namespace sfpsd {

// ---------------------------------------------------------------------------
// Gamma family

// Lanczos approximation (g = 7, nine coefficients) with reflection for
// Re(z) < 1/2. Throws PoleError within 1e-12 of a non-positive integer and
// OverflowError when |Gamma(z)| leaves the double range.
EvalResult gamma(Complex z);

// Logarithm of Gamma on some branch; only exp() and Re() of the result are
// meaningful. Never overflows for arguments in the validated box.
Complex log_gamma(Complex z);

// sin(pi z) with exact argument reduction of Re(z).
Complex sin_pi(Complex z);

// a (a+1) ... (a+n-1); empty product is 1.
Complex rising_factorial(Complex a, std::size_t n);

// exp(lgamma p + lgamma q - lgamma(p+q)); requires Re(p), Re(q) > 0.
EvalResult beta(Complex p, Complex q);

// ---------------------------------------------------------------------------
// Zeta family

// Riemann zeta for Re(s) > 0, s != 1. Uses the accelerated alternating
// (Dirichlet eta) route, switching to Euler-Maclaurin when
// |1 - 2^(1-s)| < 1e-4.
EvalResult zeta(Complex s, const SeriesControl& ctl = {});

// The two routes behind zeta(), exposed for cross-checking.
EvalResult zeta_eta_route(Complex s, const SeriesControl& ctl = {});
EvalResult zeta_euler_maclaurin(Complex s, const SeriesControl& ctl = {});

// Dirichlet eta (1 - 2^(1-s)) zeta(s) for Re(s) > 0; finite at s = 1.
EvalResult dirichlet_eta(Complex s, const SeriesControl& ctl = {});

// Hurwitz zeta for a > 0, Re(s) > 0, s != 1 (Euler-Maclaurin through B_12).
EvalResult hurwitz_zeta(Complex s, double a, const SeriesControl& ctl = {});

// zeta(s, a1) - zeta(s, a2) with the s = 1 poles cancelled analytically.
EvalResult hurwitz_zeta_difference(Complex s, double a1, double a2,
                                   const SeriesControl& ctl = {});

// (a^-s + (1+a)^-s + (1+a)^(1-s)/(s-1) - zeta(s,a)) / s, evaluated without
// the removable singularity at s = 1.
EvalResult hurwitz_tail(Complex s, double a, const SeriesControl& ctl = {});

// Lerch transcendent Phi(z, s, a) for real z < 1, a > 0, Re(s) > 0.
// |z| < 1: defining series; z <= -1: integral representation / Gamma(s).
EvalResult lerch_phi(double z, Complex s, double a,
                     const SeriesControl& ctl = {});

// (-1)^(p-1) psi^(p)(1+x) = p! sum_{n>=1} (x+n)^(-p-1), p >= 1, x >= 0.
EvalResult polygamma_shift(unsigned p, double x, const SeriesControl& ctl = {});

// Riemann Xi from its Gamma-zeta closed form; requires |Im z| < 1/2.
EvalResult riemann_xi(Complex z, const SeriesControl& ctl = {});

// ---------------------------------------------------------------------------
// Theta and elliptic

// sum_n q^(n^2) exp(2 pi i n v), 0 <= q < 1.
EvalResult theta3(Complex v, double q, const SeriesControl& ctl = {});

// K = (pi/2) theta3(0, q)^2.
double quarter_period(double q, const SeriesControl& ctl = {});

// dn(2 K v) via its bilateral Fourier series; needs 0 < q < 1 and
// q exp(2 pi |Im v|) < 1.
EvalResult jacobi_dn(Complex v, double q, const SeriesControl& ctl = {});

// ---------------------------------------------------------------------------
// Hypergeometric and q-series

// rFs(upper; lower; z) = sum (upper)_n / ((1)_n (lower)_n) z^n.
EvalResult hypergeometric_f(std::span<const Complex> upper,
                            std::span<const Complex> lower, Complex z,
                            const SeriesControl& ctl = {});

// (z; q)_n as the literal product of n factors (1 - z q^k).
EvalResult q_pochhammer(Complex z, double q, std::size_t n,
                        const SeriesControl& ctl = {});
// (z; q)_infinity, truncated once |z| q^N / (1-q) < rel_eps.
EvalResult q_pochhammer(Complex z, double q, const SeriesControl& ctl = {});

// q-Gamma: (q;q)_inf (1-q)^(1-x) / (q^x;q)_inf, 0 < q < 1, x > 0.
EvalResult gamma_q(double x, double q, const SeriesControl& ctl = {});

inline constexpr double kDefaultQRadius = 0.5;

// sum (upper;q)_n / (lower;q)_n q^(alpha n^2) z^n. With alpha == 0 the
// argument must satisfy |z| < radius.
EvalResult deformed_q_hypergeometric(std::span<const Complex> upper,
                                     std::span<const Complex> lower, double q,
                                     double alpha, Complex z,
                                     const SeriesControl& ctl = {},
                                     double radius = kDefaultQRadius);

// Basic hypergeometric r phi s(upper; lower; q, z), computed through
// deformed_q_hypergeometric with q prepended to the lower list,
// alpha = (s+1-r)/2 and the argument rescaled by (-1/sqrt q)^(s+1-r).
EvalResult basic_hypergeometric_phi(std::span<const Complex> upper,
                                    std::span<const Complex> lower, double q,
                                    Complex z, const SeriesControl& ctl = {},
                                    double radius = kDefaultQRadius);

// theta(x; p) = (x; p)_inf (p/x; p)_inf, x != 0, 0 <= p < 1.
EvalResult elliptic_theta(Complex x, double p, const SeriesControl& ctl = {});

// (a; q, p)_n for any integer n.
EvalResult elliptic_pochhammer(Complex a, double q, double p, long n,
                               const SeriesControl& ctl = {});

enum class ModularKind { E, G };

// Coefficient sequence A_n (E series) or B_n (G series).
struct CoefficientRule {
  enum class Kind { Gaussian, Table };
  Kind kind = Kind::Gaussian;
  // Table rule: values[i] is the coefficient of index first_index + i;
  // indices outside the table have coefficient 0.
  long first_index = 0;
  std::vector<double> values;

  double operator()(long n, double q) const;
  bool has_finite_support() const { return kind == Kind::Table; }
};

// E: sum_{n>=0} (upper; q,p)_n / (q, lower; q,p)_n A_n z^n.
// G: sum_{n in Z} (upper; q,p)_n / (lower; q,p)_n B_n z^n.
EvalResult modular_series(ModularKind kind, std::span<const Complex> upper,
                          std::span<const Complex> lower, double q, double p,
                          const CoefficientRule& coeff, Complex z,
                          const SeriesControl& ctl = {});

// Ratio of elliptic Pochhammer products multiplying z^n in modular_series,
// including the coefficient rule. Used to check nonnegativity hypotheses.
Complex modular_coefficient(ModularKind kind, std::span<const Complex> upper,
                           std::span<const Complex> lower, double q, double p,
                           const CoefficientRule& coeff, long n,
                           const SeriesControl& ctl = {});

}  // namespace sfpsd
