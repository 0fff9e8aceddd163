#pragma once

#include <string>
#include <vector>

#include "dedekind/rational.hpp"

namespace dedekind {

// Univariate polynomial over Q, coefficients constant term first.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);

  static RatPoly x_minus(const Rat& a);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& lead() const { return c_.back(); }

  Rat operator()(const Rat& x) const;
  RatPoly derivative() const;
  RatPoly monic() const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const Rat& s, const RatPoly& a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  // a = q b + r with deg r < deg b.
  static void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
  static RatPoly gcd(RatPoly a, RatPoly b);

 private:
  void trim();
  std::vector<Rat> c_;
};

// Closed rational interval.
struct RatInterval {
  Rat lo, hi;
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Rat width() const { return hi - lo; }
};

// Interval extension of Horner's rule.
RatInterval eval_interval(const std::vector<Rat>& coeffs, const RatInterval& x);

class SturmSequence {
 public:
  explicit SturmSequence(const RatPoly& f);
  int sign_changes(const Rat& x) const;
  // Number of distinct real roots in (a, b].
  int count_roots(const Rat& a, const Rat& b) const;

 private:
  std::vector<RatPoly> seq_;
};

// Isolating intervals for the real roots of a squarefree polynomial, in
// increasing order.  Each interval (lo, hi) has f(lo) f(hi) < 0, unless the
// root is rational and then lo == hi.
std::vector<RatInterval> isolate_real_roots(const RatPoly& f);

// Halves an isolating interval, keeping the sign change.
void bisect_root(const RatPoly& f, RatInterval& iv);

}  // namespace dedekind
