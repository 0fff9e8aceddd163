#include "dedekind/bernoulli.hpp"

namespace dedekind {

BernoulliCache& BernoulliCache::instance() {
  static BernoulliCache cache;
  return cache;
}

const std::vector<Rat>& BernoulliCache::poly(unsigned e) {
  std::lock_guard<std::mutex> lock(mu_);
  while (numbers_.size() <= e) {
    // sum_{j<=m} C(m+1, j) B_j = 0
    const unsigned m = static_cast<unsigned>(numbers_.size());
    Rat s = 0;
    for (unsigned j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * numbers_[j];
    numbers_.push_back(-s / Rat(m + 1));
  }
  while (polys_.size() <= e) {
    const unsigned d = static_cast<unsigned>(polys_.size());
    std::vector<Rat> c(d + 1);
    for (unsigned j = 0; j <= d; ++j) c[j] = Rat(binomial(d, j)) * numbers_[d - j];
    polys_.push_back(std::move(c));
  }
  return polys_[e];
}

Rat BernoulliCache::number(unsigned e) { return poly(e)[0]; }

Rat bernoulli_number(unsigned e) { return BernoulliCache::instance().number(e); }

Rat bernoulli_poly(unsigned e, const Rat& x) {
  const auto& c = BernoulliCache::instance().poly(e);
  Rat acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rat periodic_bernoulli(unsigned e, const Rat& x) {
  Rat f = frac_part(x);
  if (e == 1 && f == 0) return 0;
  return bernoulli_poly(e, f);
}

}  // namespace dedekind
