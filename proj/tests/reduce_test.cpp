#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dedekind/lattice.hpp"
#include "dedekind/reduce.hpp"
#include "dedekind/witten.hpp"
#include "oracles.hpp"

using namespace dedekind;

namespace {

DedekindSum make_sum(std::size_t rank, const RatMat& sigma, std::vector<unsigned> e, RatVec v) {
  DedekindSum s;
  s.n = sigma.rows();
  s.rank = rank;
  s.sigma = sigma;
  s.e = std::move(e);
  s.v = std::move(v);
  return s;
}

Combination single(const DedekindSum& s) {
  auto [c, t] = to_term(s);
  Combination out;
  out.add(c, t);
  return out;
}

double root(const BigInt& D, std::size_t k) {
  return std::pow(D.get_d(), static_cast<double>(k - 1) / static_cast<double>(k));
}

}  // namespace

TEST(ReciprocitySplit, SingleCoefficientIsIdentity) {
  auto s = make_sum(2, RatMat{{1, 2}, {0, 5}}, {1, 1}, {0, 0});
  auto [c, t] = to_term(s);
  ASSERT_TRUE(t.is_diagonal());
  for (std::size_t k = 0; k < 2; ++k) {
    auto ch = reciprocity_split(t, {0, 1}, t.blocks[k].form, std::nullopt);
    Combination got;
    for (const auto& [x, u] : ch) got.add(x, u);
    // the replaced term is t itself; the rank-one pieces cancel
    Combination top;
    for (const auto& [u, x] : got.terms())
      if (u.rank() == 2) top.add(x, u);
    ASSERT_EQ(top.size(), 1u);
    EXPECT_EQ(top.terms().begin()->first, t);
    EXPECT_EQ(top.terms().begin()->second, 1);
  }
}

TEST(ReciprocitySplit, ClassicalTwoTermStep) {
  // splitting [[1,a],[0,c]] along the Euclidean vector keeps the value
  for (auto [a, c] : {std::pair{3L, 7L}, {2L, 9L}, {5L, 13L}}) {
    auto s = make_sum(2, RatMat{{1, Rat(a)}, {0, Rat(c)}}, {1, 1}, {Rat(1, 3), Rat(1, 5)});
    auto [coeff, t] = to_term(s);
    auto ch = unimodularize_step(t);
    Combination parts;
    for (const auto& [x, u] : ch) parts.add(coeff * x, u);
    QForm q = QForm::generic(2);
    Rat got = eval_combination(reduce_full(parts), s.v, q);
    EXPECT_EQ(got, eval_full_rank_classical(s.sigma, s.e, s.v, q).coeff) << a << "/" << c;
  }
}

TEST(ReciprocitySplit, PiecesMatchTruncation) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-3, 3);
  int done = 0;
  while (done < 3) {
    RatMat sigma(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) sigma(i, j) = d(rng);
    if (det(sigma) == 0 || abs(det(sigma)) > 20) continue;
    auto s = make_sum(3, sigma, {2, 2, 2}, {Rat(1, 3), 0, Rat(1, 4)});
    auto [coeff, t] = to_term(s);
    if (t.diagonal_index() == 1) continue;
    Combination parts;
    for (const auto& [x, u] : unimodularize_step(t)) parts.add(coeff * x, u);
    Rat exact = eval_combination(reduce_full(parts), s.v, QForm::generic(3));
    auto approx = oracle::truncated_sum(IntMat::identity(3), sigma, s.e, s.v, 60, oracle::to_ld(det(sigma)));
    auto ref = oracle::sum_value(exact, 6);
    EXPECT_LT(static_cast<double>(std::abs(approx - ref)), 2e-2 * std::max(1.0, static_cast<double>(std::abs(ref))));
    ++done;
  }
}

TEST(ReciprocitySplit, DependentRepresentatives) {
  auto [c, t] = to_term(make_sum(2, RatMat{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}, {1, 1, 1}, {0, 0, 0}));
  ASSERT_EQ(t.blocks.size(), 3u);
  LatticeTerm bad = t;
  bad.blocks[1] = bad.blocks[0];
  EXPECT_THROW(reciprocity_split(bad, {0, 1}, t.blocks[2].form, std::nullopt), DegeneracyError);
}

TEST(Diagonalize, DiagonalInputIsUnchanged) {
  auto c = single(make_sum(2, RatMat{{1, 3}, {0, 7}}, {1, 2}, {0, 0}));
  Combination out = diagonalize(c);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.terms().begin()->first, c.terms().begin()->first);
  EXPECT_EQ(out.terms().begin()->second, c.terms().begin()->second);
}

TEST(Diagonalize, Sl3) {
  auto R = root_system("A", 2);
  auto s = make_sum(2, to_rat(sigma_matrix(R)), {2, 2, 2}, {0, 0, 0});
  Combination out = diagonalize(single(s));
  std::size_t top = 0, lower = 0;
  for (const auto& [t, c] : out.terms()) {
    if (t.rank() == 2) {
      EXPECT_TRUE(t.is_diagonal()) << t.describe();
      ++top;
    } else {
      EXPECT_EQ(t.rank(), 1u);
      ++lower;
    }
  }
  EXPECT_GT(top, 0u);
  EXPECT_GT(lower, 0u);
  // each split removes one multiplicity from a block of weight 6
  EXPECT_LE(out.size(), 64u);
}

TEST(Diagonalize, RankDropDoesNotRaiseIndex) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(-4, 4);
  int done = 0;
  while (done < 40) {
    const std::size_t k = 2 + done % 2, cols = k + 1 + done % 2;
    RatMat sigma(k, cols);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < cols; ++j) sigma(i, j) = d(rng);
    bool ok = true;
    for (std::size_t j = 0; j < cols && ok; ++j) {
      bool z = true;
      for (std::size_t i = 0; i < k; ++i) z = z && sigma(i, j) == 0;
      ok = !z;
    }
    if (!ok || rank(to_int(sigma)) < k) continue;
    // embed as the first k coordinates of an n-dimensional sum
    RatMat big(cols, cols);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < cols; ++j) big(i, j) = sigma(i, j);
    for (std::size_t i = k; i < cols; ++i) big(i, i) = 1;
    if (det(big) == 0) continue;
    auto [c, t] = to_term(make_sum(k, big, std::vector<unsigned>(cols, 1), RatVec(cols, 0)));
    if (t.is_diagonal()) continue;
    for (const auto& [x, u] : diagonalize_step(t)) {
      if (u.rank() + 1 == t.rank()) EXPECT_LE(u.index(), t.index()) << t.describe() << " -> " << u.describe();
      EXPECT_GE(u.rank() + 1, t.rank());
    }
    ++done;
  }
}

TEST(Unimodularize, UnimodularInputIsIdentity) {
  auto [c, t] = to_term(make_sum(2, RatMat{{1, 3}, {0, 1}}, {1, 1}, {0, 0}));
  ASSERT_EQ(t.diagonal_index(), 1);
  Combination out = unimodularize(t);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.terms().begin()->first, t);
  EXPECT_EQ(out.terms().begin()->second, 1);
}

TEST(Unimodularize, IndexFiveNeedsTwoRounds) {
  auto s = make_sum(2, RatMat{{1, 2}, {0, 5}}, {1, 1}, {Rat(1, 7), Rat(2, 3)});
  auto [c, t] = to_term(s);
  ASSERT_EQ(t.diagonal_index(), 5);
  ReductionStats st;
  Combination out = unimodularize(t, &st);
  for (const auto& [u, x] : out.terms())
    if (u.rank() == 2) EXPECT_EQ(u.diagonal_index(), 1);
  ASSERT_GE(st.index_trace[2].size(), 2u);
  EXPECT_EQ(st.index_trace[2][0], 5);
  EXPECT_LE(st.index_trace[2][1], 2);
  Combination scaled;
  scaled.add(out, c);
  QForm q = QForm::generic(2);
  EXPECT_EQ(eval_combination(reduce_full(scaled), s.v, q), eval_full_rank_classical(s.sigma, s.e, s.v, q).coeff);
}

TEST(Unimodularize, EuclideanCascadeIsLogarithmic) {
  for (long c : {7L, 101L, 1009L, 10007L, 100003L}) {
    auto [x, t] = to_term(make_sum(2, RatMat{{1, 3}, {0, Rat(c)}}, {1, 1}, {0, 0}));
    ReductionStats st;
    Combination out = unimodularize(t, &st);
    std::size_t top = 0;
    for (const auto& [u, y] : out.terms()) top += u.rank() == 2;
    EXPECT_LE(static_cast<double>(top), 4 * std::log2(static_cast<double>(c)) + 4) << c;
  }
}

TEST(Unimodularize, IndexDecaysEachRound) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-30, 30);
  int done = 0;
  while (done < 40) {
    const std::size_t k = 2 + done % 2;
    RatMat sigma(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sigma(i, j) = d(rng);
    if (det(sigma) == 0) continue;
    auto [c, t] = to_term(make_sum(k, sigma, std::vector<unsigned>(k, 1), RatVec(k, 0)));
    ReductionStats st;
    unimodularize(t, &st);
    const auto& trace = st.index_trace[k];
    ASSERT_FALSE(trace.empty());
    EXPECT_EQ(trace.back(), 1);
    for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LT(trace[i], trace[i - 1]);
    for (const auto& u : st.unimod_steps) {
      EXPECT_LE(u.new_index.get_d(), root(u.index, u.rank) + 1e-9) << u.index;
      EXPECT_LT(u.new_index, u.index);
    }
    ++done;
  }
}

TEST(ReduceFull, RankOneIsItself) {
  auto c = single(make_sum(1, RatMat{{3}}, {2}, {Rat(1, 4)}));
  Combination out = reduce_full(c);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.terms().begin()->first, c.terms().begin()->first);
}

TEST(ReduceFull, LeavesAreDiagonalUnimodular) {
  auto R = root_system("A", 3);
  auto s = make_sum(3, to_rat(sigma_matrix(R)), std::vector<unsigned>(6, 2), RatVec(6, 0));
  ReductionStats st;
  Combination out = reduce_full(s, &st, {4});
  for (const auto& [t, c] : out.terms()) {
    EXPECT_TRUE(t.is_diagonal());
    EXPECT_EQ(t.diagonal_index(), 1);
  }
  EXPECT_EQ(st.leaf_count(), out.size());
  EXPECT_GT(st.reciprocity_steps, 0u);
}

TEST(ReduceFull, ClassicalThreeOverSeven) {
  auto s = make_sum(2, RatMat{{1, 3}, {0, 7}}, {1, 1}, {Rat(1, 2), Rat(1, 3)});
  QForm q = QForm::generic(2);
  EXPECT_EQ(eval(s, q), eval_full_rank_classical(s.sigma, s.e, s.v, q));
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(make_sum(1, RatMat{{1}}, {2}, {0})), (SumValue{Rat(-1, 12), 2}));
  RatMat ones(1, 2);
  ones(0, 0) = ones(0, 1) = 1;
  auto s = make_sum(2, RatMat::identity(2), {1, 1}, {Rat(1, 3), Rat(1, 5)});
  EXPECT_EQ(eval(s, QForm::rational(ones)), (SumValue{Rat(1, 20), 2}));
}

TEST(Eval, DegenerateQNamesTheLeaf) {
  // (x, y) -> x vanishes on (0, 1), which the e = (1, 1), v = 0 leaf needs
  RatMat q(1, 2);
  q(0, 0) = 1;
  auto s = make_sum(2, RatMat::identity(2), {1, 1}, {0, 0});
  try {
    eval(s, QForm::rational(q));
    FAIL() << "expected DegeneracyError";
  } catch (const DegeneracyError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("leaf"), std::string::npos) << msg;
    EXPECT_NE(msg.find("forms [(0,1)^1 (1,0)^1]"), std::string::npos) << msg;
  }
}

TEST(Eval, MatchesClassicalWithGenericQ) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> d(-9, 9);
  std::uniform_int_distribution<unsigned> ed(1, 3);
  int done = 0;
  while (done < 60) {
    const std::size_t n = 1 + done % 3;
    RatMat sigma(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sigma(i, j) = d(rng);
    Rat D = det(sigma);
    if (D == 0 || abs(D) > 200) continue;
    std::vector<unsigned> e(n);
    for (auto& x : e) x = ed(rng);
    // force some exponent-one columns
    e[0] = done % 2 ? 1 : e[0];
    RatVec v(n);
    for (auto& x : v) {
      x = Rat(d(rng), 4);
      x.canonicalize();
    }
    QForm q = QForm::generic(n);
    auto s = make_sum(n, sigma, e, v);
    EXPECT_EQ(eval(s, q), eval_full_rank_classical(sigma, e, v, q)) << "trial " << done;
    ++done;
  }
}

TEST(Eval, ThreadCountDoesNotMatter) {
  auto R = root_system("A", 2);
  auto s = make_sum(2, to_rat(sigma_matrix(R)), {4, 4, 4}, {0, 0, 0});
  ReductionStats a, b;
  Combination one = reduce_full(s, &a, {1}), many = reduce_full(s, &b, {8});
  EXPECT_EQ(one.size(), many.size());
  auto it = many.terms().begin();
  for (const auto& [t, c] : one.terms()) {
    EXPECT_EQ(t, it->first);
    EXPECT_EQ(c, it->second);
    ++it;
  }
  EXPECT_EQ(a.leaves_by_rank, b.leaves_by_rank);
  EXPECT_EQ(a.index_trace, b.index_trace);
  EXPECT_EQ(a.reciprocity_steps, b.reciprocity_steps);
}
