#include "dedekind/cocycle.hpp"

#include <numeric>

#include "dedekind/lattice.hpp"

namespace dedekind {

HomPoly HomPoly::constant(std::size_t nvars, const Rat& c) {
  HomPoly p(nvars);
  p.add(Exponent(nvars, 0), c);
  return p;
}

HomPoly HomPoly::variable(std::size_t nvars, std::size_t i) {
  HomPoly p(nvars);
  Exponent r(nvars, 0);
  r.at(i) = 1;
  p.add(r, 1);
  return p;
}

unsigned HomPoly::degree() const {
  if (terms_.empty()) return 0;
  const auto& r = terms_.begin()->first;
  return std::accumulate(r.begin(), r.end(), 0u);
}

bool HomPoly::is_homogeneous() const {
  const unsigned d = degree();
  for (const auto& [r, c] : terms_)
    if (std::accumulate(r.begin(), r.end(), 0u) != d) return false;
  return true;
}

Rat HomPoly::coeff(const Exponent& r) const {
  auto it = terms_.find(r);
  return it == terms_.end() ? Rat(0) : it->second;
}

void HomPoly::add(const Exponent& r, const Rat& c) {
  if (r.size() != nvars_) throw ValidationError("exponent length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(r, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

HomPoly HomPoly::operator+(const HomPoly& o) const {
  HomPoly out = *this;
  for (const auto& [r, c] : o.terms_) out.add(r, c);
  return out;
}

HomPoly HomPoly::operator*(const HomPoly& o) const {
  if (o.nvars_ != nvars_) throw ValidationError("polynomials in different variables");
  HomPoly out(nvars_);
  Exponent r(nvars_);
  for (const auto& [ra, ca] : terms_)
    for (const auto& [rb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) r[i] = ra[i] + rb[i];
      out.add(r, ca * cb);
    }
  return out;
}

HomPoly HomPoly::operator*(const Rat& s) const {
  HomPoly out(nvars_);
  for (const auto& [r, c] : terms_) out.add(r, c * s);
  return out;
}

HomPoly HomPoly::pow(unsigned k) const {
  HomPoly out = constant(nvars_, 1);
  HomPoly base = *this;
  while (k) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

HomPoly HomPoly::substitute(const RatMat& m) const {
  if (m.rows() != nvars_ || m.cols() != nvars_) throw ValidationError("substitution matrix has wrong shape");
  std::vector<HomPoly> lin;
  for (std::size_t k = 0; k < nvars_; ++k) {
    HomPoly l(nvars_);
    for (std::size_t j = 0; j < nvars_; ++j) {
      Exponent r(nvars_, 0);
      r[j] = 1;
      l.add(r, m(j, k));
    }
    lin.push_back(std::move(l));
  }
  // powers of each linear form, built on demand
  std::vector<std::vector<HomPoly>> pw(nvars_);
  auto power = [&](std::size_t k, unsigned e) -> const HomPoly& {
    auto& v = pw[k];
    if (v.empty()) v.push_back(constant(nvars_, 1));
    while (v.size() <= e) v.push_back(v.back() * lin[k]);
    return v[e];
  };
  HomPoly out(nvars_);
  for (const auto& [r, c] : terms_) {
    HomPoly t = constant(nvars_, c);
    for (std::size_t k = 0; k < nvars_; ++k)
      if (r[k]) t = t * power(k, r[k]);
    out = out + t;
  }
  return out;
}

std::vector<Stratum> strata(const MatrixTuple& a) {
  const std::size_t n = a.size();
  for (const auto& m : a) {
    if (m.rows() != n || m.cols() != n) throw ValidationError("tuple must hold n matrices of size n x n");
    if (det(m) == 0) throw ValidationError("singular matrix in tuple");
  }
  std::vector<Stratum> out;
  std::vector<std::size_t> d(n, 0);
  while (true) {
    std::vector<RatVec> span;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d[i]; ++j) span.push_back(a[i].col(j));
    const std::size_t rk = span.empty() ? 0 : rank(RatMat::from_rows(span, n));
    if (rk < n) {
      // A(d)^perp lies in sigma_i^perp exactly when sigma_i is in A(d)
      bool nonempty = true;
      for (std::size_t i = 0; i < n && nonempty; ++i) {
        auto rows = span;
        rows.push_back(a[i].col(d[i]));
        nonempty = rank(RatMat::from_rows(rows, n)) > rk;
      }
      if (nonempty) {
        Stratum s;
        s.d = d;
        s.sigma = RatMat(n, n);
        for (std::size_t i = 0; i < n; ++i) s.sigma.set_col(i, a[i].col(d[i]));
        s.lattice = span.empty() ? IntMat::identity(n) : kernel_lattice(RatMat::from_rows(span, n), n);
        out.push_back(std::move(s));
      }
    }
    std::size_t i = n;
    while (i > 0 && ++d[i - 1] == n) d[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::map<Exponent, Rat> p_r_coeffs(const HomPoly& p, const RatMat& sigma) {
  if (!p.is_homogeneous()) throw ValidationError("polynomial is not homogeneous");
  const HomPoly sub = p.substitute(sigma.transpose());
  std::map<Exponent, Rat> out;
  for (const auto& [r, c] : sub.terms()) {
    Rat f = c;
    for (auto x : r) f *= factorial(x);
    out.emplace(r, f);
  }
  return out;
}

Combination psi_combination(const MatrixTuple& a, const HomPoly& p) {
  const std::size_t n = a.size();
  if (p.nvars() != n) throw ValidationError("polynomial must have n variables");
  Combination out;
  for (const auto& st : strata(a)) {
    const Rat ds = det(st.sigma);
    if (ds == 0) continue;
    const IntMat kt = st.lattice.transpose();
    // restricted forms, cleared of denominators
    std::vector<IntVec> forms;
    std::vector<BigInt> denoms;
    for (std::size_t j = 0; j < n; ++j) {
      RatVec f = to_rat(kt) * st.sigma.col(j);
      BigInt l = lcm_of_denominators(f);
      IntVec g(f.size());
      for (std::size_t t = 0; t < f.size(); ++t) g[t] = BigInt(f[t] * l);
      forms.push_back(std::move(g));
      denoms.push_back(l);
    }
    for (const auto& [r, pr] : p_r_coeffs(p, st.sigma)) {
      std::vector<RawForm> raw;
      Rat c = pr * ds;
      for (std::size_t j = 0; j < n; ++j) {
        raw.push_back({forms[j], 1 + r[j]});
        BigInt lp;
        mpz_pow_ui(lp.get_mpz_t(), denoms[j].get_mpz_t(), 1 + r[j]);
        c *= lp;
      }
      LatticeTerm t;
      c *= make_term(st.lattice, raw, std::nullopt, t);
      out.add(c, t);
    }
  }
  return out;
}

Rat eisenstein(const MatrixTuple& a, const HomPoly& p, const QForm& q, const RatVec& v,
               const ReduceOptions& opt) {
  if (v.size() != a.size() || q.dim() != a.size()) throw ValidationError("dimension mismatch");
  const Combination leaves = reduce_full(psi_combination(a, p), nullptr, opt);
  return eval_combination(leaves, v, q, opt);
}

}  // namespace dedekind
