#include "dedekind/witten.hpp"

#include <cmath>

#include "dedekind/bernoulli.hpp"
#include "dedekind/lattice.hpp"

namespace dedekind {

namespace {

BigInt pow_int(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rat pow2(long e) {
  Rat r(1);
  if (e >= 0)
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

// zeta(k) / (2 pi)^k for even k >= 0
Rat zeta_2pi(long k) {
  if (k == 0) return Rat(-1, 2);
  const long h = k / 2;
  Rat b = bernoulli_number(static_cast<unsigned>(k)) / (2 * Rat(factorial(static_cast<unsigned long>(k))));
  return h % 2 ? b : -b;
}

Rat C(long n, long k) { return Rat(binomial(n, k)); }

}  // namespace

RootSystemData root_system_from(std::string type, std::vector<IntVec> roots, BigInt weyl_order,
                                std::vector<BigInt> heights) {
  if (roots.empty()) throw ValidationError("root system needs at least one root");
  RootSystemData R;
  R.type = std::move(type);
  R.rank = roots.front().size();
  for (const auto& a : roots) {
    if (a.size() != R.rank) throw ValidationError("roots have different lengths");
    for (const auto& x : a)
      if (x < 0) throw ValidationError("positive roots must have nonnegative coefficients");
  }
  if (heights.empty())
    for (const auto& a : roots) {
      BigInt h = 0;
      for (const auto& x : a) h += x;
      heights.push_back(h);
    }
  if (heights.size() != roots.size()) throw ValidationError("one height per root");
  if (roots.size() < R.rank || rank(IntMat::from_columns(roots, R.rank)) != R.rank)
    throw ValidationError("roots do not span");
  R.roots = std::move(roots);
  R.heights = std::move(heights);
  R.weyl_order = std::move(weyl_order);
  R.M = 1;
  for (const auto& h : R.heights) {
    if (h <= 0) throw ValidationError("heights must be positive");
    R.M *= h;
  }
  return R;
}

RootSystemData root_system(const std::string& type, std::size_t rank) {
  if (type != "A") throw ValidationError("unsupported root system type " + type);
  if (rank < 1) throw ValidationError("rank must be positive");
  std::vector<IntVec> roots;
  for (std::size_t h = 1; h <= rank; ++h)
    for (std::size_t i = 0; i + h <= rank; ++i) {
      IntVec a(rank, 0);
      for (std::size_t j = i; j < i + h; ++j) a[j] = 1;
      roots.push_back(std::move(a));
    }
  return root_system_from(type, std::move(roots), factorial(rank + 1));
}

IntMat sigma_matrix(const RootSystemData& R) {
  const std::size_t l = R.rank, r = R.num_roots();
  IntMat top = IntMat::from_columns(R.roots, l);
  bool simple_first = true;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) simple_first = simple_first && top(i, j) == (i == j ? 1 : 0);
  IntMat s(r, r);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < r; ++j) s(i, j) = top(i, j);
  if (simple_first) {
    for (std::size_t i = l; i < r; ++i) s(i, i) = 1;
    return s;
  }
  // top U = (H 0) with H square; rows (0 I) U^{-1} complete top
  HnfResult h = hnf(top);
  BigInt dh = 1;
  for (std::size_t i = 0; i < l; ++i) dh *= h.H(i, i);
  if (dh != 1) throw ValidationError("root coefficients admit no unimodular completion");
  IntMat uinv = to_int(inverse(to_rat(h.U)));
  for (std::size_t i = l; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) s(i, j) = uinv(i, j);
  if (det(s) < 0)
    for (std::size_t j = 0; j < r; ++j) s(r - 1, j) = -s(r - 1, j);
  return s;
}

ZetaValue witten_zeta(const RootSystemData& R, unsigned m, ReductionStats* stats, const ReduceOptions& opt) {
  if (m < 1) throw ValidationError("m must be positive");
  const std::size_t r = R.num_roots();
  DedekindSum s;
  s.n = r;
  s.rank = R.rank;
  s.sigma = to_rat(sigma_matrix(R));
  s.e.assign(r, 2 * m);
  s.v.assign(r, 0);
  SumValue sv = eval(s, std::nullopt, stats, opt);
  // (2 pi i)^{2mr} = (-1)^{mr} 2^{2mr} pi^{2mr}
  const long mr = static_cast<long>(m * r);
  Rat c = sv.coeff * pow2(2 * mr) * Rat(pow_int(R.M, 2 * m)) / Rat(R.weyl_order);
  if (mr % 2) c = -c;
  return {c, static_cast<int>(2 * mr)};
}

Rat normalized(const RootSystemData& R, unsigned m, const ZetaValue& z) {
  const long r = static_cast<long>(R.num_roots());
  Rat factor = 1;
  if (R.type == "A" && R.rank == 2) factor = Rat(factorial(6 * m + 1));
  if (R.type == "A" && R.rank == 3) factor = Rat(factorial(12 * m + 1)) * (6 * m + 1) * (4 * m + 1);
  if (z.pi_power != 2 * static_cast<int>(m) * r) throw ValidationError("value is not zeta_g(2m)");
  return factor * Rat(R.weyl_order) * z.coeff / (Rat(pow_int(R.M, 2 * m)) * pow2(2 * m * r));
}

ZetaValue zeta_even(unsigned two_k) {
  if (two_k % 2) throw ValidationError("zeta_even needs an even argument");
  return {zeta_2pi(two_k) * pow2(two_k), static_cast<int>(two_k)};
}

ZetaValue sl3_closed_form(unsigned m) {
  const long M = m;
  Rat s = 0;
  for (long i = 0; i <= 2 * M; i += 2) s += C(4 * M - i - 1, 2 * M - 1) * zeta_2pi(i) * zeta_2pi(6 * M - i);
  // zeta / (2 pi)^{6m}
  Rat z = 8 * s * pow2(2 * M) / 6;
  return {z * pow2(6 * M), static_cast<int>(6 * M)};
}

ZetaValue sl4_closed_form(unsigned m) {
  const long M = m;
  auto Z = [](long a, long b, long c) -> Rat { return zeta_2pi(a) * zeta_2pi(b) * zeta_2pi(c); };
  Rat tot = 0;
  for (long i = 0; i <= 2 * M; ++i) {
    Rat a = 0, b = 0, c = 0, d = 0;
    for (long j = 0; j <= 2 * M; j += 2) {
      const Rat cj = C(2 * M + i - j - 1, i - 1);
      if (cj == 0) continue;
      for (long t = 0; t <= 4 * M + i - j; t += 2)
        a += cj * C(6 * M + i - j - t - 1, 2 * M - 1) * Z(j, t, 12 * M - j - t);
      for (long u = 0; u <= 2 * M; u += 2)
        b += cj * C(6 * M + i - j - u - 1, 4 * M + i - j - 1) * Z(j, u, 12 * M - j - u);
    }
    for (long k = 0; k <= i; k += 2) {
      const Rat ck = C(2 * M + i - k - 1, i - k);
      for (long v = 0; v <= 4 * M + i - k; v += 2)
        c += ck * C(6 * M + i - k - v - 1, 2 * M - 1) * Z(k, v, 12 * M - k - v);
      for (long w = 0; w <= 2 * M; w += 2)
        d += ck * C(6 * M + i - k - w - 1, 4 * M + i - k - 1) * Z(k, w, 12 * M - k - w);
    }
    tot += C(4 * M - i - 1, 2 * M - 1) * (a + b + c + d);
  }
  Rat z = 16 * tot * Rat(pow_int(12, 2 * m)) / 24;
  return {z * pow2(12 * M), static_cast<int>(12 * M)};
}

long double witten_truncated(const RootSystemData& R, unsigned m, long bound) {
  const std::size_t l = R.rank;
  std::vector<long> x(l, 1);
  long double total = 0;
  while (true) {
    long double term = 1;
    for (std::size_t i = 0; i < R.num_roots(); ++i) {
      long double dot = 0;
      for (std::size_t j = 0; j < l; ++j) dot += R.roots[i][j].get_d() * x[j];
      term *= std::pow(R.heights[i].get_d() / dot, 2.0L * m);
    }
    total += term;
    std::size_t j = 0;
    while (j < l && ++x[j] > bound) x[j++] = 1;
    if (j == l) break;
  }
  return total;
}

}  // namespace dedekind
