#include "dedekind/matrix.hpp"

#include <utility>

namespace dedekind {

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

IntMat to_int(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw DegeneracyError("expected an integral matrix");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

// Bareiss fraction-free elimination.
BigInt det(const IntMat& in) {
  if (in.rows() != in.cols()) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = in.rows();
  if (n == 0) return 1;
  IntMat a = in;
  BigInt prev = 1;
  int s = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return s * a(n - 1, n - 1);
}

Rat det(const RatMat& in) {
  if (in.rows() != in.cols()) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = in.rows();
  RatMat a = in;
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(p, j));
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rat f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return d;
}

std::size_t rank(const RatMat& in) {
  RatMat a = in;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < a.cols() && rk < a.rows(); ++c) {
    std::size_t p = rk;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rk, j), a(p, j));
    for (std::size_t r = rk + 1; r < a.rows(); ++r) {
      if (a(r, c) == 0) continue;
      Rat f = a(r, c) / a(rk, c);
      for (std::size_t k = c; k < a.cols(); ++k) a(r, k) -= f * a(rk, k);
    }
    ++rk;
  }
  return rk;
}

namespace {

// Gauss-Jordan on [m | rhs]; rhs is overwritten with m^{-1} rhs.
void gauss_jordan(RatMat& a, RatMat& rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("solve with non-square matrix");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw DegeneracyError("singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(p, j));
      for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs(c, j), rhs(p, j));
    }
    Rat piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) a(c, j) /= piv;
    for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(c, j) /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rat f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(c, j);
      for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(r, j) -= f * rhs(c, j);
    }
  }
}

}  // namespace

RatVec solve(const RatMat& m, const RatVec& b) {
  RatMat a = m;
  RatMat rhs = RatMat::from_columns({b}, b.size());
  gauss_jordan(a, rhs);
  return rhs.col(0);
}

RatMat inverse(const RatMat& m) {
  RatMat a = m;
  RatMat rhs = RatMat::identity(m.rows());
  gauss_jordan(a, rhs);
  return rhs;
}

IntMat adjugate(const IntMat& m) {
  const std::size_t n = m.rows();
  IntMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMat sub(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          sub(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      BigInt d = det(sub);
      adj(j, i) = ((i + j) % 2 == 0) ? d : BigInt(-d);
    }
  return adj;
}

BigInt minor_det(const IntMat& m, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
  IntMat sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = m(rows[i], cols[j]);
  return det(sub);
}

}  // namespace dedekind
