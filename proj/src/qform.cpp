#include "dedekind/qform.hpp"

#include <map>
#include <mutex>

namespace dedekind {

QForm::QForm(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ValidationError("QForm needs at least one row");
  const std::size_t n = rows_.front().entries.size();
  for (const auto& r : rows_) {
    if (r.entries.size() != n) throw ValidationError("QForm rows have different lengths");
    bool all_zero = true;
    for (const auto& x : r.entries) {
      if (x.field() != r.emb.field()) throw ValidationError("QForm entry from a different field");
      all_zero = all_zero && x.is_zero();
    }
    if (all_zero) throw ValidationError("QForm row vanishes identically");
  }
}

QForm QForm::rational(const RatMat& q) {
  NumberField k = NumberField::rationals();
  RealEmbedding emb = real_embeddings(k).front();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    Row r{emb, {}};
    for (std::size_t j = 0; j < q.cols(); ++j) r.entries.push_back(k.from_rat(q(i, j)));
    rows.push_back(std::move(r));
  }
  return QForm(std::move(rows));
}

std::vector<Rat> real_cyclotomic_poly(unsigned p) {
  // C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}; C_k(2cos t) = 2cos(kt)
  const unsigned h = (p - 1) / 2;
  RatPoly x({Rat(0), Rat(1)});
  RatPoly prev({Rat(2)}), cur = x;
  RatPoly sum({Rat(1)});
  for (unsigned k = 1; k <= h; ++k) {
    sum = sum + cur;
    RatPoly next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return sum.coeffs();
}

QForm QForm::generic(std::size_t n) {
  static std::mutex mu;
  static std::map<unsigned, NumberField> fields;
  unsigned p = 3;
  auto is_prime = [](unsigned q) {
    for (unsigned d = 2; d * d <= q; ++d)
      if (q % d == 0) return false;
    return true;
  };
  while ((p - 1) / 2 < n || !is_prime(p)) p += 2;
  NumberField k = [&] {
    std::lock_guard<std::mutex> lock(mu);
    auto it = fields.find(p);
    if (it == fields.end()) it = fields.emplace(p, NumberField(real_cyclotomic_poly(p))).first;
    return it->second;
  }();
  // the largest root is 2cos(2 pi/p)
  RealEmbedding emb = real_embeddings(k).back();
  Row r{emb, {}};
  FieldElem t = k.theta(), pw = k.from_rat(1);
  for (std::size_t j = 0; j < n; ++j) {
    r.entries.push_back(pw);
    pw = pw * t;
  }
  return QForm({std::move(r)});
}

int QForm::sign(std::size_t row, const RatVec& x) const {
  const Row& r = rows_.at(row);
  if (x.size() != r.entries.size()) throw std::invalid_argument("QForm::sign dimension mismatch");
  FieldElem acc = r.emb.field().from_rat(0);
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != 0) acc = acc + x[k] * r.entries[k];
  return sign_at(r.emb, acc);
}

int QForm::entry_sign(std::size_t row, std::size_t col) const {
  const Row& r = rows_.at(row);
  return sign_at(r.emb, r.entries.at(col));
}

QForm QForm::compose(const RatMat& g) const {
  if (g.rows() != dim()) throw std::invalid_argument("QForm::compose dimension mismatch");
  std::vector<Row> out;
  for (const auto& r : rows_) {
    Row nr{r.emb, {}};
    for (std::size_t j = 0; j < g.cols(); ++j) {
      FieldElem acc = r.emb.field().from_rat(0);
      for (std::size_t k = 0; k < g.rows(); ++k)
        if (g(k, j) != 0) acc = acc + g(k, j) * r.entries[k];
      nr.entries.push_back(acc);
    }
    out.push_back(std::move(nr));
  }
  return QForm(std::move(out));
}

QForm QForm::pad(std::size_t N) const {
  std::vector<Row> out;
  for (const auto& r : rows_) {
    Row nr = r;
    while (nr.entries.size() < N) nr.entries.push_back(r.emb.field().from_rat(0));
    out.push_back(std::move(nr));
  }
  return QForm(std::move(out));
}

}  // namespace dedekind
