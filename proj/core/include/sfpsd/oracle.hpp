#pragma once

// Independent reconstructions of kernel matrices as Gram matrices of a
// positive measure, plus the two integral identities the kernels rely on.
//
// Oracle matrices are assembled as sums of rank-one terms g(x) g(x)^H over
// atoms or quadrature nodes, so they are Hermitian and PSD by construction
// (up to rounding) and never call the evaluator a kernel uses for the same
// entry.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sfpsd/kernels.hpp"
#include "sfpsd/matrix.hpp"
#include "sfpsd/quadrature.hpp"

namespace sfpsd {

struct Atom {
  double location;
  double weight;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;
  // Bound on sum over dropped atoms of weight * exp(4 pi |n| growth).
  double tail_bound = 0.0;
  // Largest |Im v| the truncation was sized for.
  double growth = 0.0;
};

// q^(n^2) at every integer n, truncated for exponents with |Im v| <= growth.
DiscreteMeasure theta3_measure(double q, double growth, double target_eps = 1e-16);

// (pi/K) q^|n| / (1 + q^(2|n|)) at every integer n, K = (pi/2) (sum q^(n^2))^2.
DiscreteMeasure dn_measure(double q, double growth, double target_eps = 1e-16);

// G_jk = sum over atoms w exp(2 pi i x (v_j - conj v_k)). Throws TailTooLarge
// when the truncation tail exceeds target_eps relative to the total weight or
// an exponent lies outside the measure's growth bound.
HermitianMatrix gram_discrete(const DiscreteMeasure& measure, std::span<const Complex> exponents,
                              double target_eps = 1e-14);

enum class WeightId {
  GAMMA_WEIGHT,         // e^-x / x on (0, inf)
  BETA_WEIGHT,          // 1 / (x (1-x)) on (0, 1)
  ZETA_TAIL_WEIGHT,     // {u} / u on (1, inf)
  ETA_WEIGHT,           // 1 / (u (e^u + 1)) on (0, inf)
  ETA1_WEIGHT,          // e^u / (e^u + 1)^2 on (0, inf)
  LERCH_WEIGHT,         // 1 / (x e^(ax) (1 - z e^-x)) on (0, inf)
  POLYGAMMA_WEIGHT,     // (-1)^(p-1) psi^(p)(1+x) / pi on (0, inf)
  HURWITZ_TAIL_WEIGHT,  // {x} / (x + a) on (1, inf)
  COSH_WEIGHT,          // 1 / (2x e^(ax) cosh x) on (0, inf)
  MP_WEIGHT,            // 2^lambda / Gamma(lambda) e^(-pi x) |Gamma(lambda/2 + ix)|^2 / (2 pi) on R
};

struct WeightedLine {
  WeightId weight = WeightId::GAMMA_WEIGHT;
  double a = 1.0;        // LERCH, HURWITZ_TAIL, COSH
  double z = 0.0;        // LERCH
  unsigned order = 1;    // POLYGAMMA
  double lambda = 1.0;   // MP
  QuadControl quad;
};

// Which weight reproduces the factor's family, with its parameters filled in.
// Throws SpecError for families without a quadrature oracle.
WeightedLine weighted_line_for(const FactorSpec& factor, const QuadControl& quad = {});

// G_jk = integral of f_j conj(f_k) against the weight, where f_j is the
// family's per-point function (x^z_j, x^p_j (1-x)^q_j, u^-s_j, ...).
// The sawtooth weights are integrated exactly on unit intervals up to
// kSawtoothCutoff; the remainder uses the periodic-Bernoulli expansion of
// the fractional part.
HermitianMatrix gram_quadrature(const WeightedLine& line, const FactorSpec& factor);

inline constexpr int kSawtoothCutoff = 32;

// True when the family has a discrete or quadrature oracle.
bool has_oracle(KernelFamily family);
bool is_discrete_oracle(KernelFamily family);

// Documented agreement tolerance: 1e-10 discrete, 1e-7 quadrature.
double oracle_tolerance(KernelFamily family);

// Hadamard product of per-factor oracle matrices; nullopt when some factor
// has no oracle.
std::optional<HermitianMatrix> oracle_matrix(const MatrixSpec& spec, const QuadControl& quad = {});

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_deviation = 0.0;  // |lhs - rhs| / |rhs|
  double quad_error = 0.0;
};

// (1/2pi) int e^((2 phi - pi) x) |Gamma(lambda + ix)|^2 dx = Gamma(2 lambda) / (2 sin phi)^(2 lambda).
IdentityCheck verify_mp_identity(double lambda, double phi, const QuadControl& quad = {});

// Weak Askey-Wilson beta integral with the (1-q)^5 (q;q)^6 prefactor on the
// left and (1-q)^(2 sum alpha) prod Gamma_q(alpha_j + alpha_k) / Gamma_q(sum alpha)
// on the right.
IdentityCheck verify_aw_integral(double q, const std::array<double, 4>& alphas,
                                 const QuadControl& quad = {});

struct CompareReport {
  double max_deviation = 0.0;
  std::size_t worst_j = 0;
  std::size_t worst_k = 0;
  bool within = true;
};

// Deviation |a_jk - b_jk| / max(|a_jk|, |b_jk|, sqrt(|a_jj a_kk|)).
CompareReport entrywise_compare(const HermitianMatrix& a, const HermitianMatrix& b, double rel_tol);

}  // namespace sfpsd
