#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "dedekind/matrix.hpp"
#include "dedekind/poly.hpp"

namespace dedekind {

class FieldElem;

// Totally real number field Q(theta) given by a monic irreducible integer
// polynomial.  Copies share the same underlying data.
class NumberField {
 public:
  // min_poly is c0 + c1 x + ... + cn x^n with cn = 1.  Throws ValidationError
  // unless the polynomial is monic, integral, squarefree, irreducible and has
  // n real roots.
  explicit NumberField(const std::vector<Rat>& min_poly);
  static NumberField rationals();

  std::size_t degree() const;
  const RatPoly& min_poly() const;

  FieldElem elem(const RatVec& power_coeffs) const;
  FieldElem from_rat(const Rat& q) const;
  FieldElem theta() const;

  bool operator==(const NumberField& o) const { return data_ == o.data_; }
  bool operator!=(const NumberField& o) const { return data_ != o.data_; }

  struct Data;
  const std::shared_ptr<const Data>& data() const { return data_; }

 private:
  explicit NumberField(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
  friend class RealEmbedding;
};

class FieldElem {
 public:
  FieldElem(NumberField k, RatVec coeffs);

  const NumberField& field() const { return k_; }
  const RatVec& coeffs() const { return c_; }
  bool is_zero() const { return dedekind::is_zero(c_); }

  // Matrix of multiplication by this element on the power basis, columns
  // are images of theta^j.
  RatMat mult_matrix() const;
  FieldElem inverse() const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const Rat& s, const FieldElem& a);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.k_ == b.k_ && a.c_ == b.c_;
  }

 private:
  NumberField k_;
  RatVec c_;
};

struct TraceNorm {
  Rat trace;
  Rat norm;
};
TraceNorm trace_norm(const FieldElem& a);

// One real embedding.  The isolating interval is refined on demand; the
// state is shared between copies and guarded by a mutex.
class RealEmbedding {
 public:
  RealEmbedding(NumberField k, std::size_t index, RatInterval iv);

  std::size_t index() const { return index_; }
  const NumberField& field() const { return k_; }
  RatInterval interval() const;
  void refine() const;

  // Enclosure of the image of a; narrower than max_width when given.
  RatInterval enclose(const FieldElem& a, const Rat& max_width) const;

 private:
  NumberField k_;
  std::size_t index_;
  struct State {
    std::mutex mu;
    RatInterval iv;
  };
  std::shared_ptr<State> state_;
};

// All real embeddings in increasing order of the image of theta.
std::vector<RealEmbedding> real_embeddings(const NumberField& k);

// Exact sign of the image of a under the embedding.
int sign_at(const RealEmbedding& emb, const FieldElem& a);

// Matrix A with eps * W_j = sum_k A(k,j) W_k, so eps -> A is multiplicative.  Throws DegeneracyError if M
// is not integral.
IntMat regular_rep(const std::vector<FieldElem>& basis, const FieldElem& eps);
// Same without the integrality requirement.
RatMat regular_rep_rational(const std::vector<FieldElem>& basis, const FieldElem& eps);

// W* with Trace(W*_i W_j) = delta_ij.
std::vector<FieldElem> dual_basis(const std::vector<FieldElem>& basis);

// Coordinates of a in the given basis.
RatVec coordinates(const std::vector<FieldElem>& basis, const FieldElem& a);

}  // namespace dedekind
