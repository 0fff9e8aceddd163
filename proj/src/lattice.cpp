#include "dedekind/lattice.hpp"

#include <algorithm>
#include <optional>

namespace dedekind {

namespace {

// col a <- x*a + y*b, col b <- z*a + w*b, on both H and U.
void column_op(IntMat& h, IntMat& u, std::size_t a, std::size_t b, const BigInt& x,
               const BigInt& y, const BigInt& z, const BigInt& w) {
  for (IntMat* m : {&h, &u}) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      BigInt ra = (*m)(r, a), rb = (*m)(r, b);
      (*m)(r, a) = x * ra + y * rb;
      (*m)(r, b) = z * ra + w * rb;
    }
  }
}

}  // namespace

HnfResult hnf(const IntMat& m) {
  const std::size_t n = m.rows(), k = m.cols();
  HnfResult res{m, IntMat::identity(k), 0};
  IntMat& h = res.H;
  IntMat& u = res.U;
  std::size_t piv = 0;
  for (std::size_t i = 0; i < n && piv < k; ++i) {
    for (std::size_t c = piv + 1; c < k; ++c) {
      if (h(i, c) == 0) continue;
      BigInt a = h(i, piv), b = h(i, c), g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      column_op(h, u, piv, c, x, y, BigInt(-b / g), BigInt(a / g));
    }
    if (h(i, piv) == 0) continue;
    if (h(i, piv) < 0) {
      for (IntMat* mm : {&h, &u})
        for (std::size_t r = 0; r < mm->rows(); ++r) (*mm)(r, piv) = -(*mm)(r, piv);
    }
    const BigInt p = h(i, piv);
    for (std::size_t c = 0; c < piv; ++c) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (IntMat* mm : {&h, &u})
        for (std::size_t r = 0; r < mm->rows(); ++r) (*mm)(r, c) -= q * (*mm)(r, piv);
    }
    ++piv;
  }
  res.rank = piv;
  return res;
}

IntMat kernel_lattice(const RatMat& rows, std::size_t k) {
  if (rows.rows() == 0) return IntMat::identity(k);
  IntMat m(rows.rows(), k);
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    RatVec r = rows.row(i);
    BigInt l = lcm_of_denominators(r);
    for (std::size_t j = 0; j < k; ++j) m(i, j) = Rat(r[j] * l).get_num();
  }
  HnfResult h = hnf(m);
  IntMat basis(k, k - h.rank);
  for (std::size_t j = h.rank; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) basis(i, j - h.rank) = h.U(i, j);
  return basis;
}

IntVec primitive_part(const IntVec& v, BigInt* factor) {
  BigInt g = gcd_of(v);
  if (g == 0) throw DegeneracyError("zero vector has no primitive part");
  auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
  if (*first < 0) g = -g;
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  if (factor) *factor = g;
  return out;
}

std::vector<std::size_t> first_independent(const std::vector<IntVec>& vecs,
                                            const std::vector<std::size_t>& candidates,
                                            std::size_t k) {
  const std::size_t c = candidates.size();
  if (k > c) return {};
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::vector<IntVec> cols;
    for (auto i : pick) cols.push_back(vecs[candidates[i]]);
    if (rank(IntMat::from_columns(cols, cols.empty() ? 0 : cols[0].size())) == k) {
      std::vector<std::size_t> out;
      for (auto i : pick) out.push_back(candidates[i]);
      return out;
    }
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == c - k + i - 1) --i;
    if (i == 0) return {};
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// Writing z = adj(rho) w, the determinant with column i replaced by w is
// z_i (up to sign), and w is integral exactly when z lies in adj(rho) Z^k.
// That lattice is enumerated inside the box |z_i| <= T coordinate by
// coordinate through its lower triangular HNF basis.
IntVec small_vector(const IntMat& rho) {
  const std::size_t k = rho.rows();
  const BigInt d_signed = det(rho);
  const BigInt D = abs(d_signed);
  if (D <= 1) throw DegeneracyError("small_vector needs |det| > 1");
  BigInt target;  // D^{k-1}
  mpz_pow_ui(target.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(k - 1));
  // T = largest integer with T^k < D^{k-1}
  BigInt T;
  mpz_root(T.get_mpz_t(), target.get_mpz_t(), static_cast<unsigned long>(k));
  {
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), T.get_mpz_t(), static_cast<unsigned long>(k));
    if (p >= target) T -= 1;
  }
  const IntMat adj = adjugate(rho);
  const HnfResult h = hnf(adj);
  const IntMat& L = h.H;  // lower triangular, full rank

  std::optional<std::pair<BigInt, IntVec>> best;
  IntVec c(k), z(k, BigInt(0));
  // partial[i] = sum_{j<i} L(i,j) c_j for the current prefix
  auto visit = [&](auto&& self, std::size_t level) -> void {
    if (level == k) {
      if (is_zero(z)) return;
      BigInt mx = 0;
      for (const auto& x : z) mx = std::max(mx, BigInt(abs(x)));
      if (best && mx > best->first) return;
      // w = rho z / det(rho)
      IntVec w(k);
      for (std::size_t r = 0; r < k; ++r) {
        BigInt s = 0;
        for (std::size_t t = 0; t < k; ++t) s += rho(r, t) * z[t];
        mpz_divexact(w[r].get_mpz_t(), s.get_mpz_t(), d_signed.get_mpz_t());
      }
      if (!best || mx < best->first || compare(w, best->second) < 0) best.emplace(mx, w);
      return;
    }
    BigInt partial = 0;
    for (std::size_t j = 0; j < level; ++j) partial += L(level, j) * c[j];
    const BigInt& piv = L(level, level);
    // need -T <= partial + piv*c <= T
    BigInt lo, hi;
    BigInt a = -T - partial, b = T - partial;
    mpz_cdiv_q(lo.get_mpz_t(), a.get_mpz_t(), piv.get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), b.get_mpz_t(), piv.get_mpz_t());
    for (BigInt x = lo; x <= hi; ++x) {
      c[level] = x;
      z[level] = partial + piv * x;
      self(self, level + 1);
    }
  };
  visit(visit, 0);
  if (!best) throw DegeneracyError("small_vector found no candidate");
  return primitive_part(best->second);
}

}  // namespace dedekind
