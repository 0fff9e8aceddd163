#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dedekind/sum.hpp"
#include "dedekind/term.hpp"

namespace dedekind {

// Q-linear combination of lattice terms; zero coefficients are dropped and
// equal terms merged.
class Combination {
 public:
  void add(const Rat& c, const LatticeTerm& t);
  void add(const Combination& other, const Rat& factor = 1);
  const std::map<LatticeTerm, Rat>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::size_t max_rank() const;

 private:
  std::map<LatticeTerm, Rat> terms_;
};

using Children = std::vector<std::pair<Rat, LatticeTerm>>;

struct UnimodStep {
  std::size_t rank;
  BigInt index;      // |det| before the step
  BigInt new_index;  // largest |det| with one column replaced by w
};

struct ReductionStats {
  std::map<std::size_t, std::size_t> leaves_by_rank;
  std::map<std::size_t, std::size_t> nodes_by_rank;
  std::size_t reciprocity_steps = 0;
  // per rank: largest index among diagonal terms in each unimodularization round
  std::map<std::size_t, std::vector<BigInt>> index_trace;
  std::vector<UnimodStep> unimod_steps;

  std::size_t leaf_count() const;
};

struct ReduceOptions {
  unsigned threads = 1;
};

// Partial-fraction split of t along w = sum_j alpha_j f_{B_j}: the children
// are t with one copy of f_{B_j} replaced by w, the restrictions to
// f_{B_j}^perp when that block has multiplicity one, and the restriction to
// w^perp when w is not already one of the forms.
Children reciprocity_split(const LatticeTerm& t, const std::vector<std::size_t>& B, const IntVec& w,
                           const std::optional<IntVec>& child_target);

// One elimination step on a term with more blocks than its rank.
Children diagonalize_step(const LatticeTerm& t);
// One small-vector step on a diagonal term with index > 1.
Children unimodularize_step(const LatticeTerm& t, UnimodStep* info = nullptr);

// Rank-k terms of c (k = its top rank) are rewritten as diagonal rank-k
// terms plus rank k-1 terms; lower ranks pass through unchanged.
Combination diagonalize(const Combination& c, ReductionStats* stats = nullptr,
                        const ReduceOptions& opt = {});
// A diagonal term as unimodular diagonal terms of the same rank plus
// lower-rank terms (not reduced further).
Combination unimodularize(const LatticeTerm& t, ReductionStats* stats = nullptr,
                          const ReduceOptions& opt = {});
// Everything down to unimodular diagonal terms.
Combination reduce_full(const Combination& c, ReductionStats* stats = nullptr,
                        const ReduceOptions& opt = {});
Combination reduce_full(const DedekindSum& s, ReductionStats* stats = nullptr,
                        const ReduceOptions& opt = {});

// sum of coeff * value / (2 pi i)^weight over diagonal terms.
Rat eval_combination(const Combination& leaves, const RatVec& v, const QForm& q,
                     const ReduceOptions& opt = {});

// Exact value; without Q a generic one is used.
SumValue eval(const DedekindSum& s, const std::optional<QForm>& q = std::nullopt,
              ReductionStats* stats = nullptr, const ReduceOptions& opt = {});

}  // namespace dedekind
