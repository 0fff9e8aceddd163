#pragma once

#include <map>
#include <vector>

#include "dedekind/reduce.hpp"

namespace dedekind {

using MatrixTuple = std::vector<RatMat>;
using Exponent = std::vector<unsigned>;

// Homogeneous polynomial in nvars variables, coefficients keyed by exponent.
class HomPoly {
 public:
  explicit HomPoly(std::size_t nvars) : nvars_(nvars) {}
  static HomPoly constant(std::size_t nvars, const Rat& c);
  static HomPoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // degree of the (single) homogeneous component; 0 for the zero polynomial
  unsigned degree() const;
  bool is_homogeneous() const;
  Rat coeff(const Exponent& r) const;

  void add(const Exponent& r, const Rat& c);
  HomPoly operator+(const HomPoly& o) const;
  HomPoly operator*(const HomPoly& o) const;
  HomPoly operator*(const Rat& s) const;
  HomPoly pow(unsigned k) const;
  // X -> X m, i.e. X_k -> sum_j X_j m(j, k).
  HomPoly substitute(const RatMat& m) const;

  friend bool operator==(const HomPoly&, const HomPoly&) = default;

 private:
  std::size_t nvars_;
  std::map<Exponent, Rat> terms_;
};

struct Stratum {
  std::vector<std::size_t> d;  // 0-based: columns j < d_i of A_i span A(d)
  RatMat sigma;                // columns A_i[:, d_i]
  IntMat lattice;              // basis of A(d)^perp in Z^n, as columns
};

// Strata with nonempty X(d), in lexicographic order of d.
std::vector<Stratum> strata(const MatrixTuple& a);

// P(X sigma^t) = sum_r P_r(sigma) prod X_j^{r_j} / r_j!
std::map<Exponent, Rat> p_r_coeffs(const HomPoly& p, const RatMat& sigma);

// (2 pi i)^{n + deg P} Psi(A)(P, ., .) as a combination of lattice terms.
Combination psi_combination(const MatrixTuple& a, const HomPoly& p);

Rat eisenstein(const MatrixTuple& a, const HomPoly& p, const QForm& q, const RatVec& v,
               const ReduceOptions& opt = {});

}  // namespace dedekind
