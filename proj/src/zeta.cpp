#include "dedekind/zeta.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "dedekind/bernoulli.hpp"
#include "dedekind/parallel.hpp"

namespace dedekind {

namespace {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    mpfr_set_prec(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(x_); }
  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }

 private:
  mpfr_t x_;
};

struct Interval {
  Real lo, hi;
  explicit Interval(mpfr_prec_t p) : lo(p), hi(p) {}
};

Interval mul(const Interval& a, const Interval& b, mpfr_prec_t p) {
  Interval out(p);
  Real t(p);
  bool first = true;
  for (auto x : {a.lo.get(), a.hi.get()})
    for (auto y : {b.lo.get(), b.hi.get()}) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), out.lo.get())) mpfr_set(out.lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), out.hi.get())) mpfr_set(out.hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  return out;
}

// Enclosure of the determinant by Laplace expansion along the first row.
Interval interval_det(const std::vector<std::vector<Interval>>& m, mpfr_prec_t p) {
  const std::size_t n = m.size();
  Interval acc(p);
  mpfr_set_ui(acc.lo.get(), n == 0 ? 1 : 0, MPFR_RNDD);
  mpfr_set_ui(acc.hi.get(), n == 0 ? 1 : 0, MPFR_RNDU);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Interval>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Interval> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Interval t = mul(m[0][j], interval_det(minor, p), p);
    if (j % 2) {
      mpfr_sub(acc.lo.get(), acc.lo.get(), t.hi.get(), MPFR_RNDD);
      mpfr_sub(acc.hi.get(), acc.hi.get(), t.lo.get(), MPFR_RNDU);
    } else {
      mpfr_add(acc.lo.get(), acc.lo.get(), t.lo.get(), MPFR_RNDD);
      mpfr_add(acc.hi.get(), acc.hi.get(), t.hi.get(), MPFR_RNDU);
    }
  }
  return acc;
}

IntMat bmat(const BigInt& b) {
  IntMat m(2, 2);
  m(0, 0) = b;
  m(0, 1) = -1;
  m(1, 0) = 1;
  return m;
}

// det of a square matrix of polynomials, by permutations
HomPoly poly_det(const std::vector<std::vector<HomPoly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  HomPoly out(nvars);
  do {
    int sgn = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sgn = -sgn;
    HomPoly t = HomPoly::constant(nvars, sgn);
    for (std::size_t i = 0; i < n && !t.is_zero(); ++i) t = t * m[i][perm[i]];
    out = out + t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

RatVec reduce_mod_one(RatVec v) {
  for (auto& x : v) x = frac_part(x);
  return v;
}

struct RatVecLess {
  bool operator()(const RatVec& a, const RatVec& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Rat& x, const Rat& y) { return cmp(x, y) < 0; });
  }
};

}  // namespace

int regulator_sign(const std::vector<FieldElem>& units) {
  const std::size_t nu = units.size();
  if (nu == 0) return 1;
  const auto embs = real_embeddings(units.front().field());
  if (embs.size() < nu) throw ValidationError("too many units for the field degree");
  for (mpfr_prec_t p = 64; p <= 8192; p *= 2) {
    Rat width(1);
    mpz_mul_2exp(width.get_den_mpz_t(), width.get_den_mpz_t(), static_cast<mp_bitcnt_t>(p));
    std::vector<std::vector<Interval>> m;
    for (std::size_t i = 0; i < nu; ++i) {
      std::vector<Interval> row;
      for (std::size_t j = 0; j < nu; ++j) {
        RatInterval iv = embs[j].enclose(units[i], width);
        if (iv.lo <= 0) throw ValidationError("unit is not totally positive");
        Interval x(p);
        mpfr_set_q(x.lo.get(), iv.lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(x.hi.get(), iv.hi.get_mpq_t(), MPFR_RNDU);
        mpfr_log(x.lo.get(), x.lo.get(), MPFR_RNDD);
        mpfr_log(x.hi.get(), x.hi.get(), MPFR_RNDU);
        row.push_back(std::move(x));
      }
      m.push_back(std::move(row));
    }
    Interval d = interval_det(m, p);
    if (mpfr_sgn(d.lo.get()) > 0) return 1;
    if (mpfr_sgn(d.hi.get()) < 0) return -1;
  }
  throw DegeneracyError("regulator sign not certified; units may be dependent");
}

std::vector<std::string> validate(const FieldData& data) {
  std::vector<std::string> out;
  const std::size_t n = data.field.degree();
  if (data.W.size() != n) {
    out.push_back("basis has " + std::to_string(data.W.size()) + " elements, expected " + std::to_string(n));
    return out;
  }
  RatMat c(n, n);
  for (std::size_t j = 0; j < n; ++j) c.set_col(j, data.W[j].coeffs());
  const bool singular = det(c) == 0;
  if (singular) out.push_back("singular basis");
  if (data.units.size() + 1 != n)
    out.push_back("expected " + std::to_string(n - 1) + " units, got " + std::to_string(data.units.size()));
  if (data.norm_b <= 0) out.push_back("norm_b must be positive");
  const auto embs = real_embeddings(data.field);
  for (std::size_t i = 0; i < data.units.size(); ++i) {
    const auto& u = data.units[i];
    const std::string tag = "unit " + std::to_string(i + 1) + ": ";
    TraceNorm tn = trace_norm(u);
    if (tn.norm != 1 && tn.norm != -1) {
      out.push_back(tag + "not a unit");
      continue;
    }
    bool positive = true;
    for (const auto& e : embs) positive = positive && sign_at(e, u) > 0;
    if (!positive) out.push_back(tag + "not totally positive");
    if (!singular) {
      RatMat a = regular_rep_rational(data.W, u);
      bool integral = true;
      for (const auto& x : a.data()) integral = integral && is_integer(x);
      if (!integral) out.push_back(tag + "does not preserve the lattice of W");
    }
  }
  if (out.empty() && n > 1) {
    try {
      regulator_sign(data.units);
    } catch (const DegeneracyError&) {
      out.push_back("units are dependent");
    }
  }
  return out;
}

ZetaInputs build_inputs(const FieldData& data) {
  auto findings = validate(data);
  if (!findings.empty()) throw ValidationError(findings.front());
  const std::size_t n = data.field.degree();

  // P = N(b) Norm(sum X_j W_j) = N(b) det(sum X_j M(W_j))
  std::vector<RatMat> mm;
  for (const auto& w : data.W) mm.push_back(w.mult_matrix());
  std::vector<std::vector<HomPoly>> lin(n, std::vector<HomPoly>(n, HomPoly(n)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (mm[j](r, c) != 0) lin[r][c] = lin[r][c] + HomPoly::variable(n, j) * mm[j](r, c);
  HomPoly P = poly_det(lin, n) * data.norm_b;

  const auto ws = dual_basis(data.W);
  std::vector<QForm::Row> rows;
  for (const auto& e : real_embeddings(data.field)) rows.push_back({e, ws});

  RatVec v;
  for (const auto& w : ws) v.push_back(trace_norm(w).trace);

  std::vector<IntMat> A;
  for (const auto& u : data.units) A.push_back(regular_rep(data.W, u));

  RatMat c(n, n);
  for (std::size_t j = 0; j < n; ++j) c.set_col(j, data.W[j].coeffs());
  // det W = det(coefficients) * Vandermonde, and the Vandermonde is positive
  // with embeddings in increasing order
  const int nu = static_cast<int>(n) - 1;
  int eta = (nu % 2 ? -1 : 1) * sign(det(c)) * regulator_sign(data.units);
  return ZetaInputs{std::move(P), QForm(std::move(rows)), std::move(v), std::move(A), eta};
}

std::vector<RatVec> coset_orbit(const ZetaInputs& in, std::size_t cap) {
  std::vector<RatVec> order{reduce_mod_one(in.v)};
  std::set<RatVec, RatVecLess> seen{order.front()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& a : in.A) {
      RatVec y = reduce_mod_one(to_rat(a) * order[i]);
      if (seen.insert(y).second) {
        if (order.size() >= cap)
          throw DegeneracyError("orbit exceeds " + std::to_string(cap) + " elements");
        order.push_back(std::move(y));
      }
    }
  }
  return order;
}

Rat partial_zeta(const FieldData& data, unsigned s, const ReduceOptions& opt, ZetaStats* stats) {
  if (s < 1) throw ValidationError("s must be a positive integer");
  const ZetaInputs in = build_inputs(data);
  const std::size_t n = data.field.degree();
  const HomPoly ps = in.P.pow(s - 1);

  std::vector<std::size_t> perm(in.A.size());
  std::iota(perm.begin(), perm.end(), 0);
  Combination total;
  do {
    int sgn = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) sgn = -sgn;
    MatrixTuple tuple{RatMat::identity(n)};
    for (auto k : perm) tuple.push_back(tuple.back() * to_rat(in.A[k]));
    total.add(psi_combination(tuple, ps), sgn);
  } while (std::next_permutation(perm.begin(), perm.end()));

  ReductionStats rs;
  const Combination leaves = reduce_full(total, &rs, opt);
  const auto orbit = coset_orbit(in);
  std::vector<Rat> parts(orbit.size());
  parallel_for(orbit.size(), opt.threads,
               [&](std::size_t i) { parts[i] = eval_combination(leaves, orbit[i], in.Q); });
  Rat sum = 0;
  for (const auto& p : parts) sum += p;
  if (stats) {
    stats->orbit_size = orbit.size();
    stats->leaves = leaves.size();
    stats->reduction = std::move(rs);
  }
  return in.eta * sum;
}

ContinuedFraction continued_fraction(const IntMat& a) {
  if (a.rows() != 2 || a.cols() != 2 || det(a) != 1) throw ValidationError("matrix is not in SL_2(Z)");
  ContinuedFraction cf;
  IntMat cur = a;
  while (cur(1, 0) != 0) {
    // nearest integer to a/c, so the new lower entry is at most |c|/2
    const BigInt& x = cur(0, 0);
    const BigInt& c = cur(1, 0);
    Rat q(x, c);
    q.canonicalize();
    BigInt b = floor_of(q + Rat(1, 2));
    IntMat inv{{0, 1}, {-1, b}};
    cur = inv * cur;
    cf.b.push_back(b);
    ++cf.euclid_steps;
  }
  // cur = +-(1 k; 0 1)
  if (cur(0, 0) == -1) {
    // -(1 -k; 0 1) = B(-k) B(0)
    cf.b.push_back(-cur(0, 1));
    cf.b.push_back(0);
  } else if (cur(0, 1) != 0) {
    // (1 k; 0 1) = B(0) B(0) B(k) B(0)
    for (BigInt x : {BigInt(0), BigInt(0), BigInt(cur(0, 1)), BigInt(0)}) cf.b.push_back(x);
  }
  return cf;
}

Rat quadratic_fast(const FieldData& data, unsigned s, ContinuedFraction* out_cf) {
  if (s < 1) throw ValidationError("s must be a positive integer");
  if (data.field.degree() != 2) throw ValidationError("fast path needs a quadratic field");
  const ZetaInputs in = build_inputs(data);
  const ContinuedFraction cf = continued_fraction(in.A.front());
  const HomPoly ps = in.P.pow(s - 1);
  const auto orbit = coset_orbit(in);
  const Rat b2s = Rat(1) / Rat(factorial(2 * s));

  Rat total = 0;
  IntMat m = IntMat::identity(2);
  for (const auto& b : cf.b) {
    const RatMat mr = to_rat(m);
    const RatMat minv = inverse(mr);
    const HomPoly pm = ps.substitute(mr.transpose());
    const QForm qm = in.Q.compose(minv.transpose());
    const Rat detm = det(mr);
    const Rat br(b);
    const auto rank_one = p_r_coeffs(pm, RatMat{{0, br}, {1, 1}});
    const auto full = p_r_coeffs(pm, RatMat{{1, br}, {0, 1}});
    Rat rank_one_sum = 0;
    for (const auto& [r, c] : rank_one) rank_one_sum += c;
    for (const auto& v : orbit) {
      const RatVec w = minv * v;
      Rat val = br * rank_one_sum * periodic_bernoulli(2 * s, w[1]) * b2s;
      for (const auto& [r, c] : full)
        val += c * periodic_bernoulli(1 + r[0], w[0] - br * w[1]) / Rat(factorial(1 + r[0])) *
               periodic_bernoulli(1 + r[1], w[1]) / Rat(factorial(1 + r[1]));
      if (s == 1 && is_integer(w[0]) && is_integer(w[1])) {
        // -(1/8){Sign(w+b) + Sign(w'+b)} with w the root of each row of Q,
        // averaged over the rows
        Rat corr = 0;
        for (std::size_t i = 0; i < qm.num_rows(); ++i)
          corr -= qm.sign(i, {-1, br}) * qm.sign(i, {0, 1});
        val += corr / Rat(4 * static_cast<long>(qm.num_rows()));
      }
      total += detm * val;
    }
    m = m * bmat(b);
  }
  if (m != in.A.front()) throw std::logic_error("continued fraction does not multiply back");
  if (out_cf) *out_cf = cf;
  return in.eta * total;
}

}  // namespace dedekind
