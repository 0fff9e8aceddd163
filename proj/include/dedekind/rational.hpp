#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dedekind {

using BigInt = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<BigInt>;
using RatVec = std::vector<Rat>;

// Thrown for malformed input (CLI exit code 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the mathematics breaks down: singular data, degenerate Q, caps.
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q", "-p/q".  The result is canonical.
Rat parse_rat(std::string_view s);
std::string to_string(const Rat& q);
std::string to_string(const BigInt& z);

inline int sign(const Rat& q) { return sgn(q); }
inline int sign(const BigInt& z) { return sgn(z); }

BigInt floor_of(const Rat& q);
Rat frac_part(const Rat& q);
bool is_integer(const Rat& q);

BigInt factorial(unsigned long n);
// Zero when k < 0 or k > n (n >= 0); also zero for n < 0.
BigInt binomial(long n, long k);
BigInt gcd_of(const IntVec& v);
BigInt lcm_of_denominators(const RatVec& v);

RatVec to_rat(const IntVec& v);
// Requires every entry to be integral.
IntVec to_int(const RatVec& v);

Rat dot(const RatVec& a, const RatVec& b);
BigInt dot(const IntVec& a, const IntVec& b);
bool is_zero(const IntVec& v);
bool is_zero(const RatVec& v);

// Lexicographic comparison used for deterministic ordering.
int compare(const IntVec& a, const IntVec& b);

}  // namespace dedekind
