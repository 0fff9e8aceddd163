#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dedekind/matrix.hpp"
#include "dedekind/qform.hpp"

namespace dedekind {

struct FormBlock {
  IntVec form;  // primitive, first nonzero entry positive
  unsigned mult = 1;
  friend bool operator==(const FormBlock&, const FormBlock&) = default;
};

// The sum
//   sum'_{y in Z^k} e(<G y, v>) / prod_j <y, f_j>^{p_j}
// over a rank-k sublattice G Z^k of the ambient space, with the determinant
// factor already folded into the coefficient that accompanies it.  The
// basis G is kept in column Hermite normal form so equal sums compare equal.
// Q and v live on the ambient space; the term itself does not depend on
// either.  The optional target marks the form that diagonalization should
// keep.
struct LatticeTerm {
  IntMat basis;
  std::vector<FormBlock> blocks;
  std::optional<IntVec> target;

  std::size_t rank() const { return basis.cols(); }
  std::size_t ambient_dim() const { return basis.rows(); }
  unsigned weight() const;
  bool is_diagonal() const { return blocks.size() == rank(); }
  // |det| of the block forms; only for diagonal terms.
  BigInt diagonal_index() const;
  // max |det| over rank-subsets of the block forms.
  BigInt index() const;
  std::string describe() const;
};

int compare(const LatticeTerm& a, const LatticeTerm& b);
inline bool operator<(const LatticeTerm& a, const LatticeTerm& b) { return compare(a, b) < 0; }
inline bool operator==(const LatticeTerm& a, const LatticeTerm& b) { return compare(a, b) == 0; }

struct RawForm {
  IntVec form;  // in Z^k coordinates of the given basis
  unsigned mult;
};

// Builds the canonical term for the lattice spanned by basis (columns,
// independent) with the given forms.  Returns the factor c such that the
// described sum equals c times the canonical term.
Rat make_term(const IntMat& basis, const std::vector<RawForm>& forms,
              const std::optional<IntVec>& target, LatticeTerm& out);

// Value of a diagonal unimodular-or-not term divided by (2 pi i)^weight.
// Throws DegeneracyError naming the term if Q is needed and degenerate.
Rat eval_diagonal_term(const LatticeTerm& t, const RatVec& v, const QForm& q);

// (1/m) sum_i prod_{j in J} Sign(Q'_ij)/2 times the periodic Bernoulli
// product over the complement of J, where J = {j : e_j = 1, u_j integral}.
// sign_of(i, j) supplies Sign Q'_ij.
template <class SignFn>
Rat qlimit_product(const std::vector<unsigned>& e, const RatVec& u, std::size_t m, SignFn&& sign_of);

}  // namespace dedekind

#include "dedekind/bernoulli.hpp"

namespace dedekind {

template <class SignFn>
Rat qlimit_product(const std::vector<unsigned>& e, const RatVec& u, std::size_t m, SignFn&& sign_of) {
  std::vector<std::size_t> J;
  Rat rest = 1;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 1 && is_integer(u[j]))
      J.push_back(j);
    else
      rest *= periodic_bernoulli(e[j], u[j]);
  }
  if (J.size() % 2 == 1 || rest == 0) return 0;
  if (J.empty()) return rest;
  Rat acc = 0;
  for (std::size_t i = 0; i < m; ++i) {
    int s = 1;
    for (auto j : J) {
      int sj = sign_of(i, j);
      if (sj == 0) throw DegeneracyError("Q vanishes on a required direction");
      s *= sj;
    }
    acc += s;
  }
  Rat half_pow(1);
  mpz_mul_2exp(half_pow.get_den_mpz_t(), half_pow.get_den_mpz_t(), J.size());
  return acc * half_pow * rest / Rat(static_cast<long>(m));
}

}  // namespace dedekind
