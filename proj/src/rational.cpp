#include "dedekind/rational.hpp"

#include <algorithm>

namespace dedekind {

Rat parse_rat(std::string_view s) {
  std::string str(s);
  auto bad = [&] { return ValidationError("malformed rational: '" + str + "'"); };
  if (str.empty()) throw bad();
  auto slash = str.find('/');
  auto digits_ok = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = str.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+') throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Rat q;
  q.get_num().set_str(num, 10);
  q.get_den().set_str(den, 10);
  if (q.get_den() == 0) throw ValidationError("zero denominator: '" + str + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

BigInt floor_of(const Rat& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat frac_part(const Rat& q) { return q - Rat(floor_of(q)); }

bool is_integer(const Rat& q) { return q.get_den() == 1; }

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt gcd_of(const IntVec& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

BigInt lcm_of_denominators(const RatVec& v) {
  BigInt l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  return l;
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

IntVec to_int(const RatVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integer(x)) throw DegeneracyError("expected an integral vector");
    out.push_back(x.get_num());
  }
  return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigInt dot(const IntVec& a, const IntVec& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

int compare(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

}  // namespace dedekind
