#include "dedekind/poly.hpp"

#include <algorithm>
#include <functional>

namespace dedekind {

RatPoly::RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::x_minus(const Rat& a) { return RatPoly({-a, Rat(1)}); }

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat RatPoly::operator()(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return RatPoly(d);
}

RatPoly RatPoly::monic() const {
  if (c_.empty()) return *this;
  return (Rat(1) / lead()) * (*this);
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return RatPoly(c);
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return RatPoly(c);
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(c);
}

RatPoly operator*(const Rat& s, const RatPoly& a) {
  std::vector<Rat> c(a.c_);
  for (auto& x : c) x *= s;
  return RatPoly(c);
}

void RatPoly::divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rat> rem = a.c_;
  const int db = b.degree();
  std::vector<Rat> quo(std::max(0, a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    Rat f = rem[static_cast<std::size_t>(i)] / b.lead();
    if (f == 0) continue;
    quo[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
  }
  q = RatPoly(quo);
  r = RatPoly(rem);
}

RatPoly RatPoly::gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RatInterval eval_interval(const std::vector<Rat>& coeffs, const RatInterval& x) {
  RatInterval acc{0, 0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    Rat p[4] = {acc.lo * x.lo, acc.lo * x.hi, acc.hi * x.lo, acc.hi * x.hi};
    acc.lo = *std::min_element(p, p + 4) + *it;
    acc.hi = *std::max_element(p, p + 4) + *it;
  }
  return acc;
}

SturmSequence::SturmSequence(const RatPoly& f) {
  seq_.push_back(f);
  seq_.push_back(f.derivative());
  while (!seq_.back().is_zero()) {
    RatPoly q, r;
    RatPoly::divmod(seq_[seq_.size() - 2], seq_.back(), q, r);
    seq_.push_back(Rat(-1) * r);
  }
  seq_.pop_back();
}

int SturmSequence::sign_changes(const Rat& x) const {
  int changes = 0, last = 0;
  for (const auto& p : seq_) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count_roots(const Rat& a, const Rat& b) const {
  return sign_changes(a) - sign_changes(b);
}

void bisect_root(const RatPoly& f, RatInterval& iv) {
  if (iv.lo == iv.hi) return;
  Rat mid = (iv.lo + iv.hi) / 2;
  int sm = sgn(f(mid));
  if (sm == 0) {
    iv.lo = iv.hi = mid;
    return;
  }
  if (sm == sgn(f(iv.lo)))
    iv.lo = mid;
  else
    iv.hi = mid;
}

std::vector<RatInterval> isolate_real_roots(const RatPoly& f) {
  std::vector<RatInterval> out;
  if (f.degree() < 1) return out;
  Rat bound = 0;
  for (int i = 0; i < f.degree(); ++i) bound = std::max(bound, Rat(abs(f.coeff(static_cast<std::size_t>(i)) / f.lead())));
  bound += 1;
  SturmSequence st(f);
  std::function<void(const Rat&, const Rat&, int)> rec = [&](const Rat& a, const Rat& b, int count) {
    if (count == 0) return;
    if (count == 1) {
      // root in (a, b]
      if (f(b) == 0) {
        out.push_back({b, b});
        return;
      }
      RatInterval iv{a, b};
      // a may be a root that belongs to the neighbouring interval
      while (f(iv.lo) == 0) {
        Rat m = (iv.lo + iv.hi) / 2;
        if (f(m) == 0) {
          out.push_back({m, m});
          return;
        }
        if (st.count_roots(iv.lo, m) == 1)
          iv.hi = m;
        else
          iv.lo = m;
      }
      out.push_back(iv);
      return;
    }
    Rat m = (a + b) / 2;
    int left = st.count_roots(a, m);
    rec(a, m, left);
    rec(m, b, count - left);
  };
  rec(-bound, bound, st.count_roots(-bound, bound));
  // neighbouring intervals may share an endpoint; pull them apart
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    while (out[i].hi >= out[i + 1].lo) {
      bisect_root(f, out[i]);
      bisect_root(f, out[i + 1]);
    }
  return out;
}

}  // namespace dedekind
