#include <gtest/gtest.h>

#include <random>

#include "dedekind/numfield.hpp"

using namespace dedekind;

namespace {

NumberField qsqrt5() { return NumberField({-5, 0, 1}); }
NumberField cubic() { return NumberField({1, -3, -1, 1}); }

FieldElem random_elem(const NumberField& k, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-20, 20), den(1, 6);
  RatVec c(k.degree());
  for (auto& x : c) {
    x = Rat(d(rng), den(rng));
    x.canonicalize();
  }
  return k.elem(c);
}

}  // namespace

TEST(NumberField, RejectsBadPolynomials) {
  EXPECT_THROW(NumberField({1, 0, 1}), ValidationError);        // x^2 + 1 not totally real
  EXPECT_THROW(NumberField({1, -2, 1}), ValidationError);       // (x-1)^2
  EXPECT_THROW(NumberField({-2, 1, 1}), ValidationError);       // (x+2)(x-1)
  EXPECT_THROW(NumberField({0, -1, 0, 1}), ValidationError);    // x^3 - x
  EXPECT_THROW(NumberField({-5, 0, 2}), ValidationError);       // not monic
  EXPECT_THROW(NumberField({Rat(1, 2), 0, 1}), ValidationError);
}

TEST(NumberField, ReducibleQuarticWithoutRationalRoots) {
  // (x^2 - 2)(x^2 - 3) = x^4 - 5x^2 + 6
  EXPECT_THROW(NumberField({6, 0, -5, 0, 1}), ValidationError);
  // x^4 - 10x^2 + 1 is irreducible (minimal polynomial of sqrt2 + sqrt3)
  EXPECT_NO_THROW(NumberField({1, 0, -10, 0, 1}));
}

TEST(NumberField, RealEmbeddings) {
  auto e5 = real_embeddings(qsqrt5());
  ASSERT_EQ(e5.size(), 2u);
  EXPECT_LT(e5[0].interval().hi, 0);
  EXPECT_GT(e5[1].interval().lo, 0);

  auto ec = real_embeddings(cubic());
  ASSERT_EQ(ec.size(), 3u);
  for (std::size_t i = 0; i + 1 < ec.size(); ++i) EXPECT_LT(ec[i].interval().hi, ec[i + 1].interval().lo);

  auto e2 = real_embeddings(NumberField({-2, 0, 1}));
  ASSERT_EQ(e2.size(), 2u);
  for (auto& e : e2)
    while (e.interval().width() > Rat(1, 2)) e.refine();
  EXPECT_GE(e2[0].interval().lo, -2);
  EXPECT_LE(e2[0].interval().hi, -1);
  EXPECT_GE(e2[1].interval().lo, 1);
  EXPECT_LE(e2[1].interval().hi, 2);
}

TEST(NumberField, SignAt) {
  NumberField k = qsqrt5();
  auto emb = real_embeddings(k);
  FieldElem r5 = k.theta();
  EXPECT_EQ(sign_at(emb[1], r5 - k.from_rat(2)), 1);
  EXPECT_EQ(sign_at(emb[0], k.from_rat(0)), 0);
  EXPECT_EQ(sign_at(emb[0], r5), -1);
  // sqrt5 - 2.2360679 > 0 and sqrt5 - 2.2360680 < 0
  EXPECT_EQ(sign_at(emb[1], r5 - k.from_rat(Rat(22360679, 10000000))), 1);
  EXPECT_EQ(sign_at(emb[1], r5 - k.from_rat(Rat(22360680, 10000000))), -1);
}

TEST(NumberField, SignIsMultiplicative) {
  std::mt19937_64 rng(3);
  for (const NumberField& k : {qsqrt5(), cubic()}) {
    auto embs = real_embeddings(k);
    int done = 0;
    while (done < 100) {
      FieldElem a = random_elem(k, rng), b = random_elem(k, rng);
      if (a.is_zero() || b.is_zero()) continue;
      const auto& emb = embs[static_cast<std::size_t>(done) % embs.size()];
      EXPECT_EQ(sign_at(emb, a * b), sign_at(emb, a) * sign_at(emb, b));
      ++done;
    }
  }
}

TEST(NumberField, TraceNorm) {
  NumberField k = cubic();
  auto tn = trace_norm(k.from_rat(1));
  EXPECT_EQ(tn.trace, 3);
  EXPECT_EQ(tn.norm, 1);
  NumberField q5 = qsqrt5();
  tn = trace_norm(q5.theta());
  EXPECT_EQ(tn.trace, 0);
  EXPECT_EQ(tn.norm, -5);
  FieldElem eps = q5.elem({Rat(3, 2), Rat(1, 2)});
  tn = trace_norm(eps);
  EXPECT_EQ(tn.trace, 3);
  EXPECT_EQ(tn.norm, 1);
}

TEST(NumberField, InverseAndArithmetic) {
  NumberField k = cubic();
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    FieldElem a = random_elem(k, rng);
    if (a.is_zero()) continue;
    EXPECT_EQ(a * a.inverse(), k.from_rat(1));
  }
  FieldElem th = k.theta();
  // theta^3 = theta^2 + 3 theta - 1
  EXPECT_EQ(th * th * th, k.elem({-1, 3, 1}));
}

TEST(NumberField, RegularRepresentation) {
  NumberField q5 = qsqrt5();
  FieldElem eps = q5.elem({Rat(3, 2), Rat(1, 2)});
  std::vector<FieldElem> w{Rat(-1) * eps, q5.from_rat(1)};
  EXPECT_EQ(regular_rep(w, eps), (IntMat{{3, -1}, {1, 0}}));
  EXPECT_EQ(regular_rep(w, q5.from_rat(1)), IntMat::identity(2));

  NumberField k = cubic();
  std::vector<FieldElem> w3{k.elem({2, 0, 0}), k.elem({0, 2, 0}), k.elem({0, 0, 2})};
  FieldElem e1 = k.elem({10, 2, -3}), e2 = k.elem({-2, 6, 5});
  IntMat a1 = regular_rep(w3, e1);
  EXPECT_EQ(a1, (IntMat{{10, 3, 1}, {2, 1, 0}, {-3, -1, 0}}));
  EXPECT_EQ(regular_rep(w3, e1 * e2), a1 * regular_rep(w3, e2));
  EXPECT_THROW(regular_rep(w3, k.elem({Rat(1, 2), 0, 0})), DegeneracyError);
}

TEST(NumberField, DualBasis) {
  NumberField q = NumberField::rationals();
  auto d1 = dual_basis({q.from_rat(1)});
  EXPECT_EQ(d1[0], q.from_rat(1));

  NumberField q5 = qsqrt5();
  std::vector<FieldElem> w{q5.from_rat(1), q5.elem({Rat(1, 2), Rat(1, 2)})};
  auto ds = dual_basis(w);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(trace_norm(ds[i] * w[j]).trace, i == j ? 1 : 0);
  EXPECT_EQ(dual_basis(ds), w);

  NumberField k = cubic();
  std::vector<FieldElem> w3{k.elem({2, 0, 0}), k.elem({0, 2, 0}), k.elem({0, 0, 2})};
  auto d3 = dual_basis(w3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(trace_norm(d3[i] * w3[j]).trace, i == j ? 1 : 0);
  EXPECT_EQ(dual_basis(d3), w3);
  EXPECT_THROW(dual_basis({k.from_rat(1), k.from_rat(2), k.theta()}), ValidationError);
}

TEST(NumberField, EmbeddingsBracketTrace) {
  std::mt19937_64 rng(21);
  NumberField k = cubic();
  auto embs = real_embeddings(k);
  for (int t = 0; t < 20; ++t) {
    FieldElem a = random_elem(k, rng);
    Rat tr = trace_norm(a).trace;
    for (Rat width : {Rat(1), Rat(1, 1000), Rat(1, 1000000)}) {
      Rat lo = 0, hi = 0;
      for (const auto& e : embs) {
        RatInterval iv = e.enclose(a, width);
        lo += iv.lo;
        hi += iv.hi;
      }
      EXPECT_LE(lo, tr);
      EXPECT_GE(hi, tr);
    }
  }
}
