#include "dedekind/numfield.hpp"

#include <algorithm>

namespace dedekind {

struct NumberField::Data {
  RatPoly f;
  std::size_t n = 0;
  // power[i] = theta^{n+i} reduced, for i < n - 1
  std::vector<RatVec> power;
  std::vector<RatInterval> roots;
};

namespace {

// Every monic factor of a monic integral polynomial is integral, so a
// factor of degree d is prod_{i in S} (x - theta_i) for some d-subset S of
// the (real) roots with integer coefficients.  Enclose those coefficients
// until each is pinned to at most one integer, then test exact division.
bool is_irreducible(const RatPoly& f, std::vector<RatInterval> roots) {
  const std::size_t n = roots.size();
  if (n <= 1) return true;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::size_t d = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (2 * d > n) continue;
    while (true) {
      // interval coefficients of prod (x - theta_i), constant first
      std::vector<RatInterval> g{{1, 1}};
      for (std::size_t i = 0; i < n; ++i) {
        if (!((mask >> i) & 1)) continue;
        RatInterval r = roots[i];
        std::vector<RatInterval> h(g.size() + 1, RatInterval{0, 0});
        for (std::size_t j = 0; j < g.size(); ++j) {
          h[j + 1].lo += g[j].lo;
          h[j + 1].hi += g[j].hi;
          Rat p[4] = {g[j].lo * r.lo, g[j].lo * r.hi, g[j].hi * r.lo, g[j].hi * r.hi};
          h[j].lo -= *std::max_element(p, p + 4);
          h[j].hi -= *std::min_element(p, p + 4);
        }
        g = std::move(h);
      }
      bool excluded = false, pinned = true;
      std::vector<Rat> cand;
      for (const auto& c : g) {
        BigInt lo_int;
        mpz_cdiv_q(lo_int.get_mpz_t(), c.lo.get_num_mpz_t(), c.lo.get_den_mpz_t());
        if (Rat(lo_int) > c.hi) {
          excluded = true;
          break;
        }
        if (c.width() >= Rat(1, 2)) pinned = false;
        cand.push_back(Rat(lo_int));
      }
      if (excluded) break;
      if (pinned) {
        RatPoly q, r;
        RatPoly::divmod(f, RatPoly(cand), q, r);
        if (r.is_zero()) return false;
        break;
      }
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) bisect_root(f, roots[i]);
    }
  }
  return true;
}

RatVec reduce_mod(const NumberField::Data& d, const std::vector<Rat>& poly) {
  RatVec out(d.n, Rat(0));
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] == 0) continue;
    if (i < d.n) {
      out[i] += poly[i];
    } else {
      const RatVec& p = d.power[i - d.n];
      for (std::size_t k = 0; k < d.n; ++k) out[k] += poly[i] * p[k];
    }
  }
  return out;
}

std::shared_ptr<NumberField::Data> make_data(const std::vector<Rat>& min_poly) {
  RatPoly f(min_poly);
  if (f.degree() < 1) throw ValidationError("minimal polynomial must have positive degree");
  if (f.lead() != 1) throw ValidationError("minimal polynomial must be monic");
  for (const auto& c : f.coeffs())
    if (!is_integer(c)) throw ValidationError("minimal polynomial must have integer coefficients");
  if (RatPoly::gcd(f, f.derivative()).degree() > 0)
    throw ValidationError("minimal polynomial is not squarefree");
  auto d = std::make_shared<NumberField::Data>();
  d->f = f;
  d->n = static_cast<std::size_t>(f.degree());
  d->roots = isolate_real_roots(f);
  if (d->roots.size() != d->n) throw ValidationError("field is not totally real");
  if (!is_irreducible(f, d->roots)) throw ValidationError("minimal polynomial is reducible");
  // theta^n = -sum c_i theta^i, then shift
  RatVec cur(d->n);
  for (std::size_t i = 0; i < d->n; ++i) cur[i] = -f.coeff(i);
  for (std::size_t i = 0; i + 1 < d->n; ++i) {
    d->power.push_back(cur);
    RatVec next(d->n, Rat(0));
    for (std::size_t k = 0; k + 1 < d->n; ++k) next[k + 1] = cur[k];
    for (std::size_t k = 0; k < d->n; ++k) next[k] += cur[d->n - 1] * (-f.coeff(k));
    cur = std::move(next);
  }
  return d;
}

}  // namespace

NumberField::NumberField(const std::vector<Rat>& min_poly) : data_(make_data(min_poly)) {}

NumberField NumberField::rationals() {
  static const NumberField q(std::vector<Rat>{Rat(0), Rat(1)});
  return q;
}

std::size_t NumberField::degree() const { return data_->n; }
const RatPoly& NumberField::min_poly() const { return data_->f; }

FieldElem NumberField::elem(const RatVec& power_coeffs) const { return FieldElem(*this, power_coeffs); }

FieldElem NumberField::from_rat(const Rat& q) const {
  RatVec c(degree(), Rat(0));
  c[0] = q;
  return FieldElem(*this, c);
}

FieldElem NumberField::theta() const {
  RatVec c(degree(), Rat(0));
  if (degree() == 1)
    c[0] = -data_->f.coeff(0);
  else
    c[1] = 1;
  return FieldElem(*this, c);
}

FieldElem::FieldElem(NumberField k, RatVec coeffs) : k_(std::move(k)), c_(std::move(coeffs)) {
  if (c_.size() != k_.degree()) throw ValidationError("field element has wrong number of coordinates");
}

static void same_field(const FieldElem& a, const FieldElem& b) {
  if (a.field() != b.field()) throw std::invalid_argument("field elements from different fields");
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  same_field(a, b);
  RatVec c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return FieldElem(a.k_, c);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  same_field(a, b);
  RatVec c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return FieldElem(a.k_, c);
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  same_field(a, b);
  const std::size_t n = a.c_.size();
  std::vector<Rat> prod(2 * n - 1, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += a.c_[i] * b.c_[j];
  }
  return FieldElem(a.k_, reduce_mod(*a.k_.data(), prod));
}

FieldElem operator*(const Rat& s, const FieldElem& a) {
  RatVec c(a.c_);
  for (auto& x : c) x *= s;
  return FieldElem(a.k_, c);
}

RatMat FieldElem::mult_matrix() const {
  const std::size_t n = c_.size();
  RatMat m(n, n);
  RatVec basis(n, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(basis.begin(), basis.end(), Rat(0));
    basis[j] = 1;
    FieldElem img = (*this) * FieldElem(k_, basis);
    m.set_col(j, img.coeffs());
  }
  return m;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DegeneracyError("inverse of zero");
  RatVec one(c_.size(), Rat(0));
  one[0] = 1;
  return FieldElem(k_, solve(mult_matrix(), one));
}

TraceNorm trace_norm(const FieldElem& a) {
  RatMat m = a.mult_matrix();
  Rat tr = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
  return {tr, det(m)};
}

RealEmbedding::RealEmbedding(NumberField k, std::size_t index, RatInterval iv)
    : k_(std::move(k)), index_(index), state_(std::make_shared<State>()) {
  state_->iv = std::move(iv);
}

RatInterval RealEmbedding::interval() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->iv;
}

void RealEmbedding::refine() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  bisect_root(k_.min_poly(), state_->iv);
}

RatInterval RealEmbedding::enclose(const FieldElem& a, const Rat& max_width) const {
  if (a.field() != k_) throw std::invalid_argument("element from another field");
  RatInterval iv = interval();
  const RatPoly& f = k_.min_poly();
  int steps = 0;
  while (true) {
    RatInterval img = eval_interval(a.coeffs(), iv);
    if (img.width() <= max_width || iv.lo == iv.hi) {
      if (steps > 0) {
        std::lock_guard<std::mutex> lock(state_->mu);
        if (iv.width() < state_->iv.width()) state_->iv = iv;
      }
      return img;
    }
    bisect_root(f, iv);
    ++steps;
  }
}

std::vector<RealEmbedding> real_embeddings(const NumberField& k) {
  std::vector<RealEmbedding> out;
  const auto& roots = k.data()->roots;
  for (std::size_t i = 0; i < roots.size(); ++i) out.emplace_back(k, i, roots[i]);
  return out;
}

int sign_at(const RealEmbedding& emb, const FieldElem& a) {
  if (a.is_zero()) return 0;
  RatInterval iv = emb.interval();
  const RatPoly& f = emb.field().min_poly();
  int steps = 0;
  int s = 0;
  while (true) {
    RatInterval img = eval_interval(a.coeffs(), iv);
    if (img.lo > 0) {
      s = 1;
      break;
    }
    if (img.hi < 0) {
      s = -1;
      break;
    }
    // only a rational root gives a degenerate interval, and then a is a
    // nonzero constant on it
    bisect_root(f, iv);
    ++steps;
  }
  if (steps > 0) {
    RatInterval cur = emb.interval();
    if (iv.width() < cur.width()) {
      // cheap way to publish the tighter interval
      while (emb.interval().width() > iv.width()) emb.refine();
    }
  }
  return s;
}

RatVec coordinates(const std::vector<FieldElem>& basis, const FieldElem& a) {
  const std::size_t n = basis.size();
  if (n == 0 || n != a.field().degree()) throw ValidationError("basis has wrong size");
  RatMat b(n, n);
  for (std::size_t j = 0; j < n; ++j) b.set_col(j, basis[j].coeffs());
  try {
    return solve(b, a.coeffs());
  } catch (const DegeneracyError&) {
    throw ValidationError("singular basis");
  }
}

RatMat regular_rep_rational(const std::vector<FieldElem>& basis, const FieldElem& eps) {
  const std::size_t n = basis.size();
  RatMat m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVec c = coordinates(basis, eps * basis[j]);
    for (std::size_t k = 0; k < n; ++k) m(k, j) = c[k];
  }
  return m;
}

IntMat regular_rep(const std::vector<FieldElem>& basis, const FieldElem& eps) {
  RatMat m = regular_rep_rational(basis, eps);
  try {
    return to_int(m);
  } catch (const DegeneracyError&) {
    throw DegeneracyError("element does not preserve the lattice spanned by the basis");
  }
}

std::vector<FieldElem> dual_basis(const std::vector<FieldElem>& basis) {
  const std::size_t n = basis.size();
  RatMat t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = trace_norm(basis[i] * basis[j]).trace;
  RatMat ti;
  try {
    ti = inverse(t);
  } catch (const DegeneracyError&) {
    throw ValidationError("singular basis");
  }
  std::vector<FieldElem> out;
  for (std::size_t i = 0; i < n; ++i) {
    FieldElem acc = basis[0].field().from_rat(0);
    for (std::size_t k = 0; k < n; ++k) acc = acc + ti(i, k) * basis[k];
    out.push_back(acc);
  }
  return out;
}

}  // namespace dedekind
