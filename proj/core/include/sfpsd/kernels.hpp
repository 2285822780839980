#pragma once

// Kernel families and Hadamard-product matrix assembly.
//
// Each family maps a pair of per-index points (x_j, x_k) to a matrix entry
// K(x_j, x_k) with K(x_k, x_j) = conj K(x_j, x_k). A MatrixSpec is an
// entrywise product of one or more factor matrices of equal dimension.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfpsd/matrix.hpp"
#include "sfpsd/series.hpp"
#include "sfpsd/specialfn.hpp"

namespace sfpsd {

enum class KernelFamily {
  THETA3,           // theta3(v_j - conj v_k, q)
  DN,               // dn(2K (v_j - conj v_k))
  ZETA_TAIL,        // 1/(w-1) - zeta(w)/w, w = s_j + conj s_k
  GAMMA,            // Gamma(w)
  SIN_POWER,        // 1 / sin^lambda(phi_j + phi_k)
  BETA,             // B(p_j + conj p_k, q_j + conj q_k)
  HYPERGEOM,        // rFs(upper; lower; z_j conj z_k)
  ETA_GAMMA_ZETA,   // (1 - 2^(1-w)) Gamma(w) zeta(w)
  ETA_GAMMA1_ZETA,  // (1 - 2^(1-w)) Gamma(w+1) zeta(w)
  POLYGAMMA_ZETA,   // (w)_p zeta(p+w) / sin(pi w)
  RIEMANN_XI,       // Xi(z_j - conj z_k)
  HURWITZ_TAIL,     // (a^-w + (1+a)^-w - zeta(w,a))/w + (1+a)^(1-w)/(w (w-1))
  HURWITZ_DIFF,     // Gamma(w) (zeta(w,(a+1)/4) - zeta(w,(a+3)/4))
  LERCH,            // Gamma(w) Phi(z, w, a)
  AW_QGAMMA,        // Gamma_q(a_j1+a_k1) Gamma_q(a_j2+a_k2) / Gamma_q(a_j1+a_j2+a_k1+a_k2)
  Q_HYPERGEOM,      // rAs^(alpha)(upper; lower; q; z_j conj z_k)
  MODULAR_E,        // rEs(upper; lower; q, p; A; z_j conj z_k)
  MODULAR_G,        // rGs(upper; lower; q, p; B; z_j conj z_k)
};

inline constexpr std::array<KernelFamily, 18> kAllFamilies = {
    KernelFamily::THETA3,         KernelFamily::DN,
    KernelFamily::ZETA_TAIL,      KernelFamily::GAMMA,
    KernelFamily::SIN_POWER,      KernelFamily::BETA,
    KernelFamily::HYPERGEOM,      KernelFamily::ETA_GAMMA_ZETA,
    KernelFamily::ETA_GAMMA1_ZETA, KernelFamily::POLYGAMMA_ZETA,
    KernelFamily::RIEMANN_XI,     KernelFamily::HURWITZ_TAIL,
    KernelFamily::HURWITZ_DIFF,   KernelFamily::LERCH,
    KernelFamily::AW_QGAMMA,      KernelFamily::Q_HYPERGEOM,
    KernelFamily::MODULAR_E,      KernelFamily::MODULAR_G,
};

std::string_view family_name(KernelFamily family);
std::optional<KernelFamily> parse_family(std::string_view name);

// Family-level parameters. Each family reads only the fields it needs:
//   q       THETA3, DN, AW_QGAMMA, Q_HYPERGEOM
//   lambda  SIN_POWER
//   a       HURWITZ_TAIL, HURWITZ_DIFF, LERCH
//   z       LERCH
//   order   POLYGAMMA_ZETA
//   upper, lower    HYPERGEOM, Q_HYPERGEOM, MODULAR_E, MODULAR_G
//   alpha, radius   Q_HYPERGEOM
//   sigma, tau, coeff  MODULAR_E, MODULAR_G (q = e^(-2 pi sigma), p = e^(-2 pi tau))
struct SharedParams {
  double q = 0.5;
  double lambda = 1.0;
  double a = 1.0;
  double z = 0.0;
  unsigned order = 1;
  std::vector<Complex> upper;
  std::vector<Complex> lower;
  double alpha = 0.0;
  double radius = kDefaultQRadius;
  double sigma = 0.1;
  double tau = 1.0;
  CoefficientRule coeff;

  double modular_q() const;
  double modular_p() const;
};

// Per-index point. `first` carries v, s, z, phi or p_j; `second` carries
// q_j (BETA) or alpha_j2 (AW_QGAMMA, whose alpha_j1 is `first`).
struct Point {
  Complex first;
  Complex second;
};

struct FactorSpec {
  KernelFamily family = KernelFamily::GAMMA;
  SharedParams shared;
  std::vector<Point> points;
};

struct MatrixSpec {
  std::string label;
  std::vector<FactorSpec> factors;

  std::size_t dimension() const { return factors.empty() ? 0 : factors.front().points.size(); }
};

struct Violation {
  std::size_t factor = 0;
  // Index of the offending point, or -1 for family-level parameters.
  long point = -1;
  std::string condition;  // the inequality that failed, e.g. "0 < q < 1"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Number of coefficient indices sampled when checking the nonnegativity
// hypotheses of HYPERGEOM, Q_HYPERGEOM and MODULAR_* factors.
inline constexpr long kCoefficientHorizon = 40;

// Checks every family's domain conditions. Never throws.
ValidationReport validate_spec(const MatrixSpec& spec, const SeriesControl& ctl = {});

// Kernel entry K(x_j, x_k) of one factor.
Complex kernel_value(const FactorSpec& factor, std::size_t j, std::size_t k,
                     const SeriesControl& ctl = {});

// Relative asymmetry |M_jk - conj M_kj| / (1 + |M_jk|) tolerated and averaged
// away by build_matrix; anything larger is a ConjugateSymmetryViolation.
inline constexpr double kSymmetrizeTolerance = 1e-12;

// Hadamard product of all factor matrices. Throws SpecError when the spec
// does not validate or the factors disagree on dimension.
HermitianMatrix build_matrix(const MatrixSpec& spec, const SeriesControl& ctl = {});

// Deterministic spec for the family (one or two factors) that passes
// validate_spec, with every parameter strictly inside its domain.
MatrixSpec random_spec(KernelFamily family, std::size_t n, std::uint64_t seed);

}  // namespace sfpsd
