#pragma once

#include <vector>

#include "dedekind/matrix.hpp"

namespace dedekind {

// Column Hermite normal form: M U = H with U unimodular, H lower echelon,
// positive pivots, and entries left of each pivot reduced into [0, pivot).
struct HnfResult {
  IntMat H;
  IntMat U;
  std::size_t rank = 0;
};
HnfResult hnf(const IntMat& m);

// Integer basis (as columns) of { y in Z^k : rows * y = 0 }.  Rational rows
// are cleared of denominators first.
IntMat kernel_lattice(const RatMat& rows, std::size_t k);

// Divides out the content and flips so the first nonzero entry is positive.
// Returns the signed factor c with v = c * primitive.
IntVec primitive_part(const IntVec& v, BigInt* factor = nullptr);

// Indices of a lexicographically first linearly independent subset of the
// given vectors of the requested size, or empty if none exists.
std::vector<std::size_t> first_independent(const std::vector<IntVec>& vecs,
                                            const std::vector<std::size_t>& candidates,
                                            std::size_t k);

// Nonzero w in the lattice spanned by the columns of rho (square, |det| = D > 1)
// such that replacing any column by w gives |det| < D^{(k-1)/k}.  Chosen to
// minimise the largest such determinant, ties broken by the lexicographically
// smallest w; the result is returned with its first nonzero entry positive.
IntVec small_vector(const IntMat& rho);

}  // namespace dedekind
