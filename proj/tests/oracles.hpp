#pragma once

// Independent reference computations used by several test binaries.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dedekind/matrix.hpp"

namespace oracle {

using cplx = std::complex<long double>;
constexpr long double kPi = 3.14159265358979323846264338327950288L;

inline long double to_ld(const dedekind::Rat& q) { return static_cast<long double>(q.get_d()); }

// sum over x = B y, y in [-R, R]^k, of e(<x, v>) * det / prod <x, sigma_j>^{e_j},
// skipping points where a form vanishes.  B has lattice basis columns.
inline cplx truncated_sum(const dedekind::IntMat& B, const dedekind::RatMat& sigma,
                          const std::vector<unsigned>& e, const dedekind::RatVec& v, long R,
                          long double det_factor) {
  const std::size_t n = B.rows(), k = B.cols();
  std::vector<std::vector<long double>> fy(sigma.cols(), std::vector<long double>(k, 0));
  std::vector<long double> vy(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t j = 0; j < sigma.cols(); ++j)
      for (std::size_t i = 0; i < n; ++i) fy[j][a] += B(i, a).get_d() * to_ld(sigma(i, j));
    for (std::size_t i = 0; i < n; ++i) vy[a] += B(i, a).get_d() * to_ld(v[i]);
  }
  std::vector<long> y(k, -R);
  cplx total = 0;
  while (true) {
    long double den = 1, phase = 0;
    bool skip = true;
    for (auto c : y) skip = skip && c == 0;
    if (!skip) {
      for (std::size_t j = 0; j < fy.size() && !skip; ++j) {
        long double s = 0;
        for (std::size_t a = 0; a < k; ++a) s += fy[j][a] * y[a];
        if (std::fabs(s) < 1e-12L) skip = true;
        den *= std::pow(s, static_cast<long double>(e[j]));
      }
      for (std::size_t a = 0; a < k; ++a) phase += vy[a] * y[a];
    }
    if (!skip) total += std::polar(det_factor / den, 2 * kPi * (phase - std::floor(phase)));
    std::size_t i = 0;
    while (i < k) {
      if (++y[i] <= R) break;
      y[i] = -R;
      ++i;
    }
    if (i == k) break;
  }
  return total;
}

// coeff * (2 pi i)^power as a complex number
inline cplx sum_value(const dedekind::Rat& coeff, int power) {
  cplx z = std::pow(cplx(0, 2 * kPi), power);
  return to_ld(coeff) * z;
}

}  // namespace oracle
