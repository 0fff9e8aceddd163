#pragma once

#include <string>
#include <vector>

#include "dedekind/reduce.hpp"

namespace dedekind {

struct RootSystemData {
  std::string type;
  std::size_t rank = 0;
  std::vector<IntVec> roots;   // positive roots in the basis of simple roots
  std::vector<BigInt> heights;  // (rho, alpha)
  BigInt weyl_order;
  BigInt M;  // product of the heights

  std::size_t num_roots() const { return roots.size(); }
};

// value = coeff * pi^pi_power
struct ZetaValue {
  Rat coeff;
  int pi_power = 0;
  friend bool operator==(const ZetaValue&, const ZetaValue&) = default;
};

// Built-in data for type A; simple roots come first, then by height.
RootSystemData root_system(const std::string& type, std::size_t rank);
// Heights default to the coefficient sums (simply laced).
RootSystemData root_system_from(std::string type, std::vector<IntVec> roots, BigInt weyl_order,
                                std::vector<BigInt> heights = {});

// r x r, det 1, first `rank` rows of column i are the coefficients of root i.
IntMat sigma_matrix(const RootSystemData& R);

// zeta_g(2m) = M^{2m} / #W * S(Z^l, sigma, (2m, ..., 2m), 0)
ZetaValue witten_zeta(const RootSystemData& R, unsigned m, ReductionStats* stats = nullptr,
                      const ReduceOptions& opt = {});

// The quantity printed in the tables: for A2
//   (6m+1)! #W zeta / (M^{2m} (2 pi)^{6m}),
// for A3
//   (12m+1)! (6m+1) (4m+1) #W zeta / (M^{2m} (2 pi)^{12m}),
// and #W zeta / (M^{2m} (2 pi)^{2mr}) otherwise.
Rat normalized(const RootSystemData& R, unsigned m, const ZetaValue& z);

// Riemann zeta at an even integer 2k >= 0, with zeta(0) = -1/2.
ZetaValue zeta_even(unsigned two_k);

ZetaValue sl3_closed_form(unsigned m);
ZetaValue sl4_closed_form(unsigned m);

// sum of prod_i (<x, a_i> / h_i)^{-2m} over x in [1, R]^l
long double witten_truncated(const RootSystemData& R, unsigned m, long bound);

}  // namespace dedekind
