#include "dedekind/term.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dedekind/lattice.hpp"

namespace dedekind {

unsigned LatticeTerm::weight() const {
  unsigned w = 0;
  for (const auto& b : blocks) w += b.mult;
  return w;
}

BigInt LatticeTerm::diagonal_index() const {
  std::vector<IntVec> cols;
  for (const auto& b : blocks) cols.push_back(b.form);
  return abs(det(IntMat::from_columns(cols, rank())));
}

BigInt LatticeTerm::index() const {
  const std::size_t k = rank(), s = blocks.size();
  BigInt best = 0;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::vector<IntVec> cols;
    for (auto i : pick) cols.push_back(blocks[i].form);
    best = std::max(best, BigInt(abs(det(IntMat::from_columns(cols, k)))));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == s - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

std::string LatticeTerm::describe() const {
  std::ostringstream os;
  os << "rank-" << rank() << " term, basis [";
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    os << (j ? " (" : "(");
    for (std::size_t i = 0; i < basis.rows(); ++i) os << (i ? "," : "") << basis(i, j);
    os << ")";
  }
  os << "], forms [";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    os << (b ? " (" : "(");
    for (std::size_t i = 0; i < blocks[b].form.size(); ++i) os << (i ? "," : "") << blocks[b].form[i];
    os << ")^" << blocks[b].mult;
  }
  os << "]";
  return os.str();
}

int compare(const LatticeTerm& a, const LatticeTerm& b) {
  if (a.basis.rows() != b.basis.rows()) return a.basis.rows() < b.basis.rows() ? -1 : 1;
  if (a.basis.cols() != b.basis.cols()) return a.basis.cols() < b.basis.cols() ? -1 : 1;
  if (int c = compare(a.basis.data(), b.basis.data())) return c;
  if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (int c = compare(a.blocks[i].form, b.blocks[i].form)) return c;
    if (a.blocks[i].mult != b.blocks[i].mult) return a.blocks[i].mult < b.blocks[i].mult ? -1 : 1;
  }
  if (a.target.has_value() != b.target.has_value()) return a.target.has_value() ? 1 : -1;
  if (a.target) return compare(*a.target, *b.target);
  return 0;
}

Rat make_term(const IntMat& basis, const std::vector<RawForm>& forms,
              const std::optional<IntVec>& target, LatticeTerm& out) {
  const std::size_t k = basis.cols();
  HnfResult h = hnf(basis);
  if (h.rank != k) throw DegeneracyError("lattice basis is not independent");
  const IntMat ut = h.U.transpose();
  Rat coeff = 1;
  std::map<IntVec, unsigned, bool (*)(const IntVec&, const IntVec&)> merged(
      [](const IntVec& x, const IntVec& y) { return compare(x, y) < 0; });
  for (const auto& f : forms) {
    if (f.form.size() != k) throw std::invalid_argument("form has wrong length");
    IntVec g = ut * f.form;
    if (is_zero(g)) throw DegeneracyError("linear form vanishes on the lattice");
    BigInt c;
    IntVec p = primitive_part(g, &c);
    Rat cp;
    mpz_pow_ui(cp.get_num_mpz_t(), c.get_mpz_t(), f.mult);
    coeff /= cp;
    merged[p] += f.mult;
  }
  out.basis = IntMat(basis.rows(), k);
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) out.basis(i, j) = h.H(i, j);
  out.blocks.clear();
  for (auto& [f, m] : merged) out.blocks.push_back({f, m});
  out.target.reset();
  if (target) out.target = primitive_part(ut * *target);
  return coeff;
}

Rat eval_diagonal_term(const LatticeTerm& t, const RatVec& v, const QForm& q) {
  const std::size_t k = t.rank(), n = t.ambient_dim();
  if (!t.is_diagonal()) throw std::invalid_argument("eval_diagonal_term on a non-diagonal term");
  if (v.size() != n) throw std::invalid_argument("shift has wrong dimension");
  std::vector<IntVec> cols;
  std::vector<unsigned> p;
  for (const auto& b : t.blocks) {
    cols.push_back(b.form);
    p.push_back(b.mult);
  }
  const IntMat rho = IntMat::from_columns(cols, k);
  const BigInt D = abs(det(rho));
  const RatMat rinv = inverse(to_rat(rho));
  // v' = G^t v
  RatVec vp(k, Rat(0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) vp[j] += t.basis(i, j) * v[i];
  // directions for the signs of Q' = Q G rho^{-t}: column j of G rho^{-t}
  const RatMat dirs = to_rat(t.basis) * rinv.transpose();
  std::map<std::pair<std::size_t, std::size_t>, int> sign_cache;
  auto sign_of = [&](std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    auto it = sign_cache.find(key);
    if (it != sign_cache.end()) return it->second;
    if (q.dim() != n) throw std::invalid_argument("QForm has wrong dimension");
    int s = q.sign(i, dirs.col(j));
    if (s == 0) throw DegeneracyError("degenerate Q at leaf " + t.describe());
    sign_cache.emplace(key, s);
    return s;
  };

  const HnfResult h = hnf(rho);
  std::vector<BigInt> box(k);
  for (std::size_t i = 0; i < k; ++i) box[i] = h.H(i, i);
  IntVec r(k, BigInt(0));
  Rat total = 0;
  while (true) {
    RatVec shifted(k);
    for (std::size_t i = 0; i < k; ++i) shifted[i] = Rat(r[i]) + vp[i];
    RatVec u = rinv * shifted;
    total += qlimit_product(p, u, q.num_rows(), sign_of);
    std::size_t i = 0;
    while (i < k) {
      if (++r[i] < box[i]) break;
      r[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  Rat kappa = 1;
  for (auto pj : p) kappa /= -Rat(factorial(pj));
  return kappa * total / Rat(D);
}

}  // namespace dedekind
