#include "dedekind/sum.hpp"

#include <algorithm>
#include <numeric>

#include "dedekind/lattice.hpp"

namespace dedekind {

namespace {

Rat rat_pow(const Rat& base, long e) {
  Rat r = 1;
  Rat b = e >= 0 ? base : Rat(1) / base;
  for (long i = 0; i < std::labs(e); ++i) r *= b;
  return r;
}

unsigned total_weight(const std::vector<unsigned>& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

// Makes the restricted columns primitive and groups equal ones.
void tidy_columns(DedekindSum& s) {
  const std::size_t n = s.n, l = s.rank;
  std::vector<IntVec> prim(n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVec p = s.projected(j);
    if (is_zero(p)) throw ValidationError("sigma column " + std::to_string(j) + " vanishes on the lattice");
    BigInt den = lcm_of_denominators(p);
    IntVec ip(l);
    for (std::size_t i = 0; i < l; ++i) ip[i] = Rat(p[i] * den).get_num();
    BigInt c0;
    prim[j] = primitive_part(ip, &c0);
    Rat c = Rat(c0) / Rat(den);
    for (std::size_t i = 0; i < n; ++i) s.sigma(i, j) /= c;
    s.scale *= rat_pow(c, 1 - static_cast<long>(s.e[j]));
  }
  // gather equal restrictions next to their first occurrence
  std::vector<std::size_t> perm;
  std::vector<bool> used(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    if (used[a]) continue;
    for (std::size_t b = a; b < n; ++b)
      if (!used[b] && prim[b] == prim[a]) {
        used[b] = true;
        perm.push_back(b);
      }
  }
  // parity of the permutation
  std::vector<bool> seen(n, false);
  int sgn_perm = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sgn_perm = -sgn_perm;
  }
  RatMat sig(n, n);
  std::vector<unsigned> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    sig.set_col(j, s.sigma.col(perm[j]));
    e[j] = s.e[perm[j]];
  }
  s.sigma = std::move(sig);
  s.e = std::move(e);
  s.scale *= sgn_perm;
}

}  // namespace

RatVec DedekindSum::projected(std::size_t j) const {
  RatVec p(rank);
  for (std::size_t i = 0; i < rank; ++i) p[i] = sigma(i, j);
  return p;
}

void DedekindSum::validate() const {
  if (n == 0) throw ValidationError("ambient dimension must be positive");
  if (rank < 1 || rank > n) throw ValidationError("rank must lie in [1, n]");
  if (sigma.rows() != n || sigma.cols() != n) throw ValidationError("sigma must be n x n");
  if (e.size() != n) throw ValidationError("need one exponent per column");
  for (auto x : e)
    if (x < 1) throw ValidationError("exponents must be positive");
  if (v.size() != n) throw ValidationError("shift must have length n");
}

std::vector<unsigned> TypePartition::sizes() const {
  std::vector<unsigned> out;
  for (const auto& b : blocks) out.push_back(static_cast<unsigned>(b.size()));
  return out;
}

Normalized normalize(const RawSum& raw, const std::optional<QForm>& q) {
  const std::size_t n = raw.sigma.rows();
  if (raw.sigma.cols() != n || raw.lattice.rows() != n) throw ValidationError("shape mismatch in raw sum");
  const HnfResult h = hnf(raw.lattice);
  const std::size_t l = h.rank;
  if (l == 0) throw ValidationError("zero lattice");
  if (l != raw.lattice.cols()) throw ValidationError("lattice basis is not independent");
  RatMat g(n, n);
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t i = 0; i < n; ++i) g(i, j) = h.H(i, j);
  std::size_t filled = l;
  for (std::size_t u = 0; u < n && filled < n; ++u) {
    RatMat trial = g;
    trial(u, filled) = 1;
    RatMat sub(n, filled + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= filled; ++j) sub(i, j) = trial(i, j);
    if (rank(sub) == filled + 1) {
      g = std::move(trial);
      ++filled;
    }
  }
  DedekindSum s;
  s.n = n;
  s.rank = l;
  s.sigma = g.transpose() * raw.sigma;
  s.e = raw.e;
  s.v = g.transpose() * raw.v;
  s.scale = raw.scale / det(g);
  s.validate();
  tidy_columns(s);
  Normalized out{std::move(s), std::nullopt, g};
  if (q) out.q = q->compose(g);
  return out;
}

Normalized normalize(const DedekindSum& in, const std::optional<QForm>& q) {
  in.validate();
  DedekindSum s = in;
  tidy_columns(s);
  return Normalized{std::move(s), q, RatMat::identity(in.n)};
}

bool is_normalized(const DedekindSum& s) {
  std::vector<RatVec> p;
  for (std::size_t j = 0; j < s.n; ++j) {
    p.push_back(s.projected(j));
    if (lcm_of_denominators(p.back()) != 1) return false;
    if (gcd_of(to_int(p.back())) != 1) return false;
  }
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j) {
      RatMat m = RatMat::from_columns({p[i], p[j]}, s.rank);
      if (rank(m) == 2) continue;
      for (std::size_t t = i + 1; t <= j; ++t)
        if (p[t] != p[i]) return false;
    }
  return true;
}

Embedded properly_embed(const DedekindSum& s, const std::optional<QForm>& q) {
  s.validate();
  const std::size_t n = s.n;
  const std::size_t N = total_weight(s.e);
  RatMat sig(N, N);
  std::size_t col = 0, extra = n;
  std::optional<std::pair<std::size_t, std::size_t>> first_pad;
  for (std::size_t j = 0; j < n; ++j) {
    for (unsigned c = 0; c < s.e[j]; ++c, ++col) {
      for (std::size_t i = 0; i < n; ++i) sig(i, col) = s.sigma(i, j);
      if (c > 0) {
        sig(extra, col) = 1;
        if (!first_pad) first_pad = std::make_pair(extra, col);
        ++extra;
      }
    }
  }
  if (first_pad && det(sig) != det(s.sigma)) sig(first_pad->first, first_pad->second) = -1;
  Embedded out;
  out.sum.n = N;
  out.sum.rank = s.rank;
  out.sum.sigma = std::move(sig);
  out.sum.e.assign(N, 1);
  out.sum.v = s.v;
  out.sum.v.resize(N, Rat(0));
  out.sum.scale = s.scale;
  if (q) out.q = q->pad(N);
  return out;
}

TypePartition type_partition(const DedekindSum& s) {
  TypePartition tp;
  for (std::size_t j = 0; j < s.n; ++j) {
    IntVec p = to_int(s.projected(j));
    auto it = std::find(tp.representatives.begin(), tp.representatives.end(), p);
    if (it == tp.representatives.end()) {
      tp.representatives.push_back(p);
      tp.blocks.push_back({j});
    } else {
      tp.blocks[static_cast<std::size_t>(it - tp.representatives.begin())].push_back(j);
    }
  }
  return tp;
}

bool is_diagonal(const DedekindSum& s) { return type_partition(s).blocks.size() == s.rank; }

BigInt index(const DedekindSum& s) {
  TypePartition tp = type_partition(s);
  LatticeTerm t;
  t.basis = IntMat(s.rank, s.rank);
  for (const auto& r : tp.representatives) t.blocks.push_back({r, 1});
  return t.index();
}

Rat qlimit_B(const std::vector<unsigned>& e, const RatVec& v, const QForm& q) {
  if (e.size() != v.size()) throw ValidationError("exponent and shift lengths differ");
  return qlimit_product(e, v, q.num_rows(), [&](std::size_t i, std::size_t j) {
    int sg = q.entry_sign(i, j);
    if (sg == 0) throw DegeneracyError("Q entry (" + std::to_string(i) + "," + std::to_string(j) + ") has sign 0");
    return sg;
  });
}

std::pair<Rat, LatticeTerm> to_term(const DedekindSum& in) {
  DedekindSum s = normalize(in).sum;
  IntMat basis(s.n, s.rank);
  for (std::size_t i = 0; i < s.rank; ++i) basis(i, i) = 1;
  std::vector<RawForm> forms;
  for (std::size_t j = 0; j < s.n; ++j) forms.push_back({to_int(s.projected(j)), s.e[j]});
  LatticeTerm t;
  Rat c = make_term(basis, forms, std::nullopt, t);
  return {c * s.scale * det(s.sigma), std::move(t)};
}

SumValue eval_diagonal(const DedekindSum& s, const QForm& q) {
  auto [c, t] = to_term(s);
  if (!t.is_diagonal()) throw std::invalid_argument("eval_diagonal on a non-diagonal sum");
  SumValue out{0, static_cast<int>(total_weight(s.e))};
  if (c != 0) out.coeff = c * eval_diagonal_term(t, s.v, q);
  return out;
}

SumValue eval_full_rank_classical(const RatMat& sigma, const std::vector<unsigned>& e,
                                  const RatVec& v, const std::optional<QForm>& q, long det_cap) {
  const std::size_t n = sigma.rows();
  if (sigma.cols() != n || e.size() != n || v.size() != n) throw ValidationError("shape mismatch");
  SumValue out{0, static_cast<int>(total_weight(e))};
  Rat scale = 1;
  IntMat sig(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVec c = sigma.col(j);
    BigInt d = lcm_of_denominators(c);
    for (std::size_t i = 0; i < n; ++i) sig(i, j) = Rat(c[i] * d).get_num();
    scale *= rat_pow(Rat(d), static_cast<long>(e[j]) - 1);
  }
  const BigInt D = det(sig);
  if (D == 0) return out;
  if (abs(D) > det_cap) throw DegeneracyError("determinant exceeds the classical oracle cap");
  const RatMat sinv = inverse(to_rat(sig));
  const RatMat dirs = sinv.transpose();
  auto sign_of = [&](std::size_t i, std::size_t j) {
    if (!q) throw DegeneracyError("classical formula needs Q for this shift");
    return q->sign(i, dirs.col(j));
  };
  const HnfResult h = hnf(sig);
  IntVec r(n, BigInt(0));
  Rat total = 0;
  while (true) {
    RatVec shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = Rat(r[i]) + v[i];
    total += qlimit_product(e, sinv * shifted, q ? q->num_rows() : 1, sign_of);
    std::size_t i = 0;
    while (i < n) {
      if (++r[i] < h.H(i, i)) break;
      r[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  Rat kappa = sgn(D);
  for (auto ej : e) kappa /= -Rat(factorial(ej));
  out.coeff = scale * kappa * total;
  return out;
}

}  // namespace dedekind
