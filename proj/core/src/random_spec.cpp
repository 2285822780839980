#include <cmath>
#include <random>

#include "detail.hpp"
#include "sfpsd/kernels.hpp"

namespace sfpsd {

namespace {

using detail::kPi;

// Uniform doubles from the raw 64-bit stream: the distribution classes are
// implementation-defined, this is not, so specs replay across platforms.
class Rng {
 public:
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  long integer(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return unit() < p; }

  Complex box(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    return {re, uniform(im_lo, im_hi)};
  }
  // Uniform in the annulus lo <= |z| <= hi.
  Complex disc(double lo, double hi) {
    const double r = std::sqrt(uniform(lo * lo, hi * hi));
    const double t = uniform(-kPi, kPi);
    return std::polar(r, t);
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<Complex> real_params(Rng& rng, long count, double lo, double hi) {
  std::vector<Complex> out;
  for (long i = 0; i < count; ++i) out.emplace_back(rng.uniform(lo, hi));
  return out;
}

FactorSpec random_factor(KernelFamily family, std::size_t n, Rng& rng) {
  FactorSpec f;
  f.family = family;
  SharedParams& sh = f.shared;
  f.points.resize(n);
  auto fill = [&](auto&& gen) {
    for (Point& p : f.points) p = gen();
  };
  auto s_point = [&] { return Point{rng.box(0.1, 3.0, -3.0, 3.0), {}}; };

  switch (family) {
    case KernelFamily::THETA3:
      sh.q = rng.uniform(0.05, 0.8);
      fill([&] { return Point{rng.box(-1.0, 1.0, -0.3, 0.3), {}}; });
      break;
    case KernelFamily::DN: {
      sh.q = rng.uniform(0.05, 0.8);
      const double bound = 0.9 * std::log(1.0 / sh.q) / (4.0 * kPi);
      fill([&] { return Point{rng.box(-1.0, 1.0, -bound, bound), {}}; });
      break;
    }
    case KernelFamily::ZETA_TAIL:
    case KernelFamily::GAMMA:
    case KernelFamily::ETA_GAMMA_ZETA:
    case KernelFamily::ETA_GAMMA1_ZETA:
      fill(s_point);
      break;
    case KernelFamily::SIN_POWER:
      sh.lambda = rng.uniform(0.2, 4.0);
      fill([&] { return Point{rng.uniform(0.1, kPi / 2.0 - 0.1), {}}; });
      break;
    case KernelFamily::BETA:
      fill([&] {
        const Complex p = rng.box(0.1, 3.0, -2.0, 2.0);
        return Point{p, rng.box(0.1, 3.0, -2.0, 2.0)};
      });
      break;
    case KernelFamily::HYPERGEOM: {
      const long s = rng.integer(0, 2);
      const long r = rng.integer(0, s + 1);
      sh.upper = real_params(rng, r, 0.2, 3.0);
      sh.lower = real_params(rng, s, 0.2, 3.0);
      const double radius = (r == s + 1) ? 0.9 : 2.0;
      fill([&] { return Point{rng.disc(0.0, radius), {}}; });
      break;
    }
    case KernelFamily::POLYGAMMA_ZETA:
      sh.order = static_cast<unsigned>(rng.integer(1, 3));
      fill([&] { return Point{rng.box(0.05, 0.45, -2.0, 2.0), {}}; });
      break;
    case KernelFamily::RIEMANN_XI:
      fill([&] { return Point{rng.box(-10.0, 10.0, -0.2, 0.2), {}}; });
      break;
    case KernelFamily::HURWITZ_TAIL:
    case KernelFamily::HURWITZ_DIFF:
      sh.a = rng.uniform(0.2, 3.0);
      fill(s_point);
      break;
    case KernelFamily::LERCH:
      sh.a = rng.uniform(0.2, 3.0);
      sh.z = rng.chance(0.8) ? rng.uniform(-0.9, 0.9) : rng.uniform(-2.5, -1.0);
      fill(s_point);
      break;
    case KernelFamily::AW_QGAMMA:
      sh.q = rng.uniform(0.05, 0.8);
      fill([&] {
        const double a1 = rng.uniform(0.2, 2.0);
        return Point{a1, rng.uniform(0.2, 2.0)};
      });
      break;
    case KernelFamily::Q_HYPERGEOM: {
      sh.q = rng.uniform(0.05, 0.8);
      sh.upper = real_params(rng, rng.integer(0, 2), -0.9, 0.9);
      sh.lower = real_params(rng, rng.integer(0, 2), -0.9, 0.9);
      double radius = 1.5;
      if (rng.chance(0.3)) {
        sh.alpha = 0.0;
        sh.radius = kDefaultQRadius;
        radius = 0.6;
      } else {
        sh.alpha = rng.uniform(0.25, 1.0);
      }
      fill([&] { return Point{rng.disc(0.0, radius), {}}; });
      break;
    }
    case KernelFamily::MODULAR_E:
    case KernelFamily::MODULAR_G: {
      // p = q^(H+2) keeps every theta factor sampled up to the coefficient
      // horizon H inside (p, 1) or (1, 1/p), where its sign is known.
      sh.sigma = rng.uniform(0.05, 0.2);
      sh.tau = sh.sigma * static_cast<double>(kCoefficientHorizon + 2);
      const long rs = rng.integer(0, 1);
      const double q = sh.modular_q();
      if (family == KernelFamily::MODULAR_E) {
        sh.upper = real_params(rng, rs, 0.6, 0.95);
        sh.lower = real_params(rng, rs, 0.6, 0.95);
        fill([&] { return Point{rng.disc(0.0, 1.5), {}}; });
      } else {
        const double lo = q + 0.05 * (1.0 - q);
        const double hi = 1.0 - 0.05 * (1.0 - q);
        sh.upper = real_params(rng, rs, lo, hi);
        sh.lower = real_params(rng, rs, lo, hi);
        fill([&] { return Point{rng.disc(0.5, 1.5), {}}; });
      }
      break;
    }
  }
  return f;
}

}  // namespace

MatrixSpec random_spec(KernelFamily family, std::size_t n, std::uint64_t seed) {
  if (n == 0) n = 1;
  const auto fam = static_cast<std::uint32_t>(family);
  for (std::uint32_t attempt = 0;; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      fam, static_cast<std::uint32_t>(n), attempt};
    Rng rng(seq);
    MatrixSpec spec;
    spec.label = std::string(family_name(family)) + " n=" + std::to_string(n) +
                 " seed=" + std::to_string(seed);
    const long factors = rng.integer(1, 2);
    for (long i = 0; i < factors; ++i) spec.factors.push_back(random_factor(family, n, rng));
    if (validate_spec(spec).ok() || attempt >= 64) return spec;
  }
}

}  // namespace sfpsd
