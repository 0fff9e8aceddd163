#pragma once

#include <deque>
#include <mutex>
#include <vector>

#include "dedekind/rational.hpp"

namespace dedekind {

// Coefficients of the Bernoulli polynomials, computed once and shared.
// Safe to use from several threads.
class BernoulliCache {
 public:
  static BernoulliCache& instance();

  // B_e as a coefficient vector, constant term first.  The reference stays
  // valid for the life of the cache.
  const std::vector<Rat>& poly(unsigned e);
  Rat number(unsigned e);

 private:
  std::mutex mu_;
  std::vector<Rat> numbers_{Rat(1)};
  std::deque<std::vector<Rat>> polys_;
};

Rat bernoulli_number(unsigned e);
Rat bernoulli_poly(unsigned e, const Rat& x);
// B_e({x}); for e = 1 the value at integers is 0.
Rat periodic_bernoulli(unsigned e, const Rat& x);

}  // namespace dedekind
