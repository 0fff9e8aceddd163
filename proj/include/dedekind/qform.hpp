#pragma once

#include <vector>

#include "dedekind/numfield.hpp"

namespace dedekind {

// Product of m real linear forms on R^n.  Entries of a row live in a totally
// real number field together with a chosen embedding, so signs are exact.
class QForm {
 public:
  struct Row {
    RealEmbedding emb;
    std::vector<FieldElem> entries;
  };

  explicit QForm(std::vector<Row> rows);
  static QForm rational(const RatMat& q);
  // One row (1, t, ..., t^{n-1}) with t = 2cos(2 pi/p), p the least prime
  // with (p-1)/2 >= n.  Its entries are linearly independent over Q, so it
  // vanishes at no nonzero rational point.
  static QForm generic(std::size_t n);

  std::size_t dim() const { return rows_.front().entries.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }

  // Sign of sum_k Q(row, k) x_k.
  int sign(std::size_t row, const RatVec& x) const;
  int entry_sign(std::size_t row, std::size_t col) const;

  // Rows Q_i g, so the new form at y equals the old one at g y.
  QForm compose(const RatMat& g) const;
  // Extends by zero to R^N (N >= n).
  QForm pad(std::size_t N) const;

 private:
  std::vector<Row> rows_;
};

// Minimal polynomial of 2cos(2 pi/p) for an odd prime p.
std::vector<Rat> real_cyclotomic_poly(unsigned p);

}  // namespace dedekind
