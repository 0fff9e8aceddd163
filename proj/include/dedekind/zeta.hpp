#pragma once

#include <string>
#include <vector>

#include "dedekind/cocycle.hpp"
#include "dedekind/numfield.hpp"

namespace dedekind {

// W is a Z-basis of f b^{-1}; the units generate the totally positive units.
struct FieldData {
  NumberField field;
  std::vector<FieldElem> W;
  std::vector<FieldElem> units;
  Rat norm_b{1};
};

struct ZetaInputs {
  HomPoly P{0};
  QForm Q;
  RatVec v;
  std::vector<IntMat> A;  // A_j = rho(eps_j)^t
  int eta = 1;
};

// Problems with the data, empty when it is usable.
std::vector<std::string> validate(const FieldData& data);

ZetaInputs build_inputs(const FieldData& data);

// Sign of det(log eps_i^(j)), 1 <= i, j <= number of units.
int regulator_sign(const std::vector<FieldElem>& units);

// Orbit of v + Z^n under the A_j, as representatives in [0,1)^n, in
// breadth-first order.  Throws DegeneracyError beyond cap elements.
std::vector<RatVec> coset_orbit(const ZetaInputs& in, std::size_t cap = 100000);

struct ZetaStats {
  std::size_t orbit_size = 0;
  std::size_t leaves = 0;
  ReductionStats reduction;
};

// zeta(b, f, 1 - s) for s >= 1.
Rat partial_zeta(const FieldData& data, unsigned s, const ReduceOptions& opt = {},
                 ZetaStats* stats = nullptr);

// Factors b_1..b_t with A = B(b_1)...B(b_t), B(b) = (b -1; 1 0), for A in
// SL_2(Z).  euclid_steps counts the division steps on the first column; the
// rest handle the final upper triangular factor.
struct ContinuedFraction {
  std::vector<BigInt> b;
  std::size_t euclid_steps = 0;
};
ContinuedFraction continued_fraction(const IntMat& a);

// Degree-two path through the continued fraction of A and the explicit
// value of Psi(1, B(b)).
Rat quadratic_fast(const FieldData& data, unsigned s, ContinuedFraction* cf = nullptr);

}  // namespace dedekind
