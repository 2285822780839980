#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "detail.hpp"
#include "sfpsd/psdlinalg.hpp"

namespace sfpsd {

namespace {

void require_hermitian(const HermitianMatrix& m, const char* who) {
  if (m.entries.size() != m.n * m.n) throw DimensionMismatch(std::string(who) + ": bad storage size");
  if (hermitian_deviation(m) > kHermitianCheckTolerance) {
    throw NonHermitian(std::string(who) + ": matrix is not Hermitian");
  }
}

// Symmetric 2n x 2n embedding, row-major, built from the Hermitian part.
std::vector<double> real_embedding(const HermitianMatrix& m) {
  const std::size_t n = m.n;
  const std::size_t d = 2 * n;
  std::vector<double> a(d * d);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex h = 0.5 * (m(j, k) + std::conj(m(k, j)));
      a[j * d + k] = h.real();
      a[(j + n) * d + (k + n)] = h.real();
      a[j * d + (k + n)] = -h.imag();
      a[(j + n) * d + k] = h.imag();
    }
  }
  return a;
}

double offdiag_mass(const std::vector<double>& a, std::size_t d) {
  double sum = 0.0;
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = 0; q < d; ++q) {
      if (p != q) sum += a[p * d + q] * a[p * d + q];
    }
  }
  return std::sqrt(sum);
}

}  // namespace

EigenResult eigenvalues_hermitian(const HermitianMatrix& m, bool want_vectors) {
  require_hermitian(m, "eigenvalues_hermitian");
  EigenResult out;
  const std::size_t n = m.n;
  if (n == 0) return out;
  const std::size_t d = 2 * n;
  std::vector<double> a = real_embedding(m);
  std::vector<double> v;
  if (want_vectors) {
    v.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;
  }
  const double norm = std::sqrt(2.0) * frobenius_norm(m);
  const double target = 1e-14 * norm;

  constexpr std::size_t kMaxSweeps = 100;
  double off = offdiag_mass(a, d);
  std::size_t sweep = 0;
  while (off > target) {
    if (sweep == kMaxSweeps) throw NonConvergence("eigenvalues_hermitian: no convergence after 100 sweeps");
    ++sweep;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a[p * d + q];
        if (apq == 0.0) continue;
        const double app = a[p * d + p];
        const double aqq = a[q * d + q];
        // Skip rotations that cannot change the diagonal in floating point.
        if (sweep > 4 && std::abs(apq) < 1e-3 * detail::kEps * std::min(std::abs(app), std::abs(aqq))) {
          a[p * d + q] = a[q * d + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < d; ++r) {
          const double arp = a[r * d + p];
          const double arq = a[r * d + q];
          a[r * d + p] = c * arp - s * arq;
          a[r * d + q] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < d; ++r) {
          const double apr = a[p * d + r];
          const double aqr = a[q * d + r];
          a[p * d + r] = c * apr - s * aqr;
          a[q * d + r] = s * apr + c * aqr;
        }
        a[p * d + q] = a[q * d + p] = 0.0;
        if (want_vectors) {
          for (std::size_t r = 0; r < d; ++r) {
            const double vrp = v[r * d + p];
            const double vrq = v[r * d + q];
            v[r * d + p] = c * vrp - s * vrq;
            v[r * d + q] = s * vrp + c * vrq;
          }
        }
      }
    }
    off = offdiag_mass(a, d);
  }
  out.iterations = sweep;
  out.offdiag_residual = off;

  // Each eigenvalue of M appears twice in the embedding; after sorting,
  // greedy nearest-neighbour pairing takes consecutive entries.
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a[x * d + x] < a[y * d + y]; });
  out.eigenvalues.resize(n);
  if (want_vectors) out.eigenvectors.assign(n * n, Complex{});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = order[2 * i];
    const std::size_t hi = order[2 * i + 1];
    const double l1 = a[lo * d + lo];
    const double l2 = a[hi * d + hi];
    out.eigenvalues[i] = 0.5 * (l1 + l2);
    out.pair_spread = std::max(out.pair_spread, l2 - l1);
    if (want_vectors) {
      // Embedded eigenvector (u; w) maps to u + i w.
      double len = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        const Complex c(v[r * d + lo], v[(r + n) * d + lo]);
        out.eigenvectors[i * n + r] = c;
        len += std::norm(c);
      }
      len = std::sqrt(len);
      for (std::size_t r = 0; r < n; ++r) out.eigenvectors[i * n + r] /= len;
    }
  }
  return out;
}

CholeskyResult pivoted_cholesky(const HermitianMatrix& m, double tol) {
  require_hermitian(m, "pivoted_cholesky");
  const std::size_t n = m.n;
  CholeskyResult out;
  HermitianMatrix s = m;
  double max_diag = 0.0;
  for (std::size_t j = 0; j < n; ++j) max_diag = std::max(max_diag, s(j, j).real());
  out.scale = std::max(1.0, max_diag);
  const double threshold = tol * out.scale;

  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (!done[j] && s(j, j).real() > best) {
        best = s(j, j).real();
        piv = j;
      }
    }
    if (piv == n || !(best >= threshold)) break;
    done[piv] = true;
    out.pivots.push_back(best);
    ++out.rank;
    // Schur complement update S <- S - s_:p s_p:^ / s_pp on the remaining block.
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j]) continue;
      const Complex ljp = s(j, piv) / best;
      for (std::size_t k = 0; k < n; ++k) {
        if (done[k]) continue;
        s(j, k) -= ljp * s(piv, k);
      }
    }
  }

  bool ok = true;
  for (std::size_t j = 0; j < n && ok; ++j) {
    if (done[j]) continue;
    if (!(s(j, j).real() >= -threshold)) ok = false;
    for (std::size_t k = 0; k < n && ok; ++k) {
      if (!done[k] && !(std::abs(s(j, k)) <= threshold)) ok = false;
    }
  }
  out.success = ok;
  return out;
}

PsdVerdict psd_verdict(const HermitianMatrix& m, double tol_rel) {
  require_hermitian(m, "psd_verdict");
  PsdVerdict out;
  if (m.n == 0) {
    out.is_psd = out.cholesky_success = out.quadratic_forms_ok = true;
    out.tolerance_used = tol_rel;
    return out;
  }
  const EigenResult eig = eigenvalues_hermitian(m);
  out.min_eig = eig.eigenvalues.front();
  out.max_eig = eig.eigenvalues.back();
  out.tolerance_used = tol_rel * std::max(1.0, out.max_eig);

  const CholeskyResult chol = pivoted_cholesky(m, tol_rel);
  out.cholesky_rank = chol.rank;
  out.cholesky_success = chol.success;

  // Fixed-seed smoke test of the quadratic form.
  std::mt19937_64 engine(0x5eedULL + m.n);
  const auto unit = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  out.min_quadratic_form = std::numeric_limits<double>::infinity();
  out.quadratic_forms_ok = true;
  std::vector<Complex> x(m.n);
  for (int trial = 0; trial < 64; ++trial) {
    double len = 0.0;
    for (Complex& c : x) {
      c = Complex(unit(), unit());
      len += std::norm(c);
    }
    Complex form = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) {
      Complex row = 0.0;
      for (std::size_t k = 0; k < m.n; ++k) row += m(j, k) * x[k];
      form += std::conj(x[j]) * row;
    }
    const double ratio = form.real() / len;
    out.min_quadratic_form = std::min(out.min_quadratic_form, ratio);
    if (!(form.real() >= -out.tolerance_used * len)) out.quadratic_forms_ok = false;
  }

  out.is_psd = out.min_eig >= -out.tolerance_used && out.cholesky_success && out.quadratic_forms_ok;
  return out;
}

HermitianMatrix schur_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.n != b.n) throw DimensionMismatch("schur_product: dimensions differ");
  HermitianMatrix out(a.n);
  for (std::size_t i = 0; i < a.entries.size(); ++i) out.entries[i] = a.entries[i] * b.entries[i];
  return out;
}

namespace {

double lu_determinant(HermitianMatrix s) {
  const std::size_t n = s.n;
  Complex det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(s(r, c)) > std::abs(s(piv, c))) piv = r;
    }
    if (s(piv, c) == Complex{}) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(s(c, k), s(piv, k));
      det = -det;
    }
    det *= s(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = s(r, c) / s(c, c);
      for (std::size_t k = c; k < n; ++k) s(r, k) -= f * s(c, k);
    }
  }
  return det.real();
}

}  // namespace

double hermitian_determinant(const HermitianMatrix& m) {
  require_hermitian(m, "hermitian_determinant");
  const std::size_t n = m.n;
  HermitianMatrix s = m;
  std::vector<bool> done(n, false);
  double det = 1.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!done[j] && std::abs(s(j, j).real()) > best) {
        best = std::abs(s(j, j).real());
        piv = j;
      }
    }
    const double d = s(piv, piv).real();
    if (d == 0.0) {
      bool zero_block = true;
      for (std::size_t j = 0; j < n && zero_block; ++j) {
        for (std::size_t k = 0; k < n && zero_block; ++k) {
          if (!done[j] && !done[k] && s(j, k) != Complex{}) zero_block = false;
        }
      }
      if (zero_block) return 0.0;
      return lu_determinant(m);
    }
    done[piv] = true;
    det *= d;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j]) continue;
      const Complex ljp = s(j, piv) / d;
      for (std::size_t k = 0; k < n; ++k) {
        if (!done[k]) s(j, k) -= ljp * s(piv, k);
      }
    }
  }
  return det;
}

HadamardDetResult hadamard_det_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                     double tol) {
  const HermitianMatrix ab = schur_product(a, b);
  HadamardDetResult out;
  out.det_a = hermitian_determinant(a);
  out.det_b = hermitian_determinant(b);
  out.det_product = hermitian_determinant(ab);
  out.scale = std::max(1.0, std::abs(out.det_product));
  out.holds = out.det_product >= out.det_a * out.det_b - tol * out.scale;
  return out;
}

std::vector<double> leading_minors(const HermitianMatrix& m) {
  require_hermitian(m, "leading_minors");
  std::vector<double> out;
  for (std::size_t order = 1; order <= m.n; ++order) {
    HermitianMatrix sub(order);
    for (std::size_t j = 0; j < order; ++j) {
      for (std::size_t k = 0; k < order; ++k) sub(j, k) = m(j, k);
    }
    out.push_back(hermitian_determinant(sub));
  }
  return out;
}

}  // namespace sfpsd
