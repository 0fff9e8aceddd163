#pragma once

#include <optional>
#include <vector>

#include "dedekind/qform.hpp"
#include "dedekind/term.hpp"

namespace dedekind {

// value = coeff * (2 pi i)^power
struct SumValue {
  Rat coeff;
  int power = 0;
  friend bool operator==(const SumValue&, const SumValue&) = default;
};

// scale * S(Z^rank, sigma, e, v), where Z^rank is spanned by the first
// `rank` standard basis vectors of R^n and sigma holds n columns.
struct DedekindSum {
  std::size_t n = 0;
  std::size_t rank = 0;
  RatMat sigma;
  std::vector<unsigned> e;
  RatVec v;
  Rat scale{1};

  // restriction of column j to Z^rank
  RatVec projected(std::size_t j) const;
  void validate() const;
};

// A sum over an arbitrary sublattice L of Z^n given by basis columns.
struct RawSum {
  IntMat lattice;
  RatMat sigma;
  std::vector<unsigned> e;
  RatVec v;
  Rat scale{1};
};

struct TypePartition {
  std::vector<std::vector<std::size_t>> blocks;  // indices into sigma columns
  std::vector<IntVec> representatives;           // pi(sigma_{I_k})
  std::vector<unsigned> sizes() const;
};

struct Normalized {
  DedekindSum sum;
  std::optional<QForm> q;
  RatMat g;  // x = g y
};

// Rewrites the sum over Z^rank with each restricted column primitive and
// proportional columns equal and adjacent.  Q is pulled back along g.
Normalized normalize(const RawSum& s, const std::optional<QForm>& q = std::nullopt);
Normalized normalize(const DedekindSum& s, const std::optional<QForm>& q = std::nullopt);
bool is_normalized(const DedekindSum& s);

struct Embedded {
  DedekindSum sum;
  std::optional<QForm> q;
};
// Replaces each column with e_j lifts so all exponents become 1.
Embedded properly_embed(const DedekindSum& s, const std::optional<QForm>& q = std::nullopt);

BigInt index(const DedekindSum& s);
TypePartition type_partition(const DedekindSum& s);
bool is_diagonal(const DedekindSum& s);

// Q limit of the Bernoulli product; the sign of entry (i, j) of Q is used.
Rat qlimit_B(const std::vector<unsigned>& e, const RatVec& v, const QForm& q);

// The normalized sum as coeff * (canonical lattice term).
std::pair<Rat, LatticeTerm> to_term(const DedekindSum& s);

// Direct evaluation of a normalized, diagonal sum.
SumValue eval_diagonal(const DedekindSum& s, const QForm& q);

inline constexpr long kClassicalDetCap = 1000000;
// Classical residue formula for L = Z^n.  Q is consulted only when some
// exponent is 1 at an integral point.
SumValue eval_full_rank_classical(const RatMat& sigma, const std::vector<unsigned>& e,
                                  const RatVec& v, const std::optional<QForm>& q = std::nullopt,
                                  long det_cap = kClassicalDetCap);

}  // namespace dedekind
