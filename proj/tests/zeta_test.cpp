#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dedekind/bernoulli.hpp"
#include "dedekind/zeta.hpp"

using namespace dedekind;

namespace {

struct Quadratic {
  long d;       // field Q(sqrt d)
  long disc;    // fundamental discriminant
  RatVec unit;  // totally positive generator, power basis
};

const std::vector<Quadratic>& quadratics() {
  static const std::vector<Quadratic> q{
      {5, 5, {Rat(3, 2), Rat(1, 2)}}, {2, 8, {3, 2}},    {13, 13, {Rat(11, 2), Rat(3, 2)}},
      {17, 17, {33, 8}},              {29, 29, {Rat(27, 2), Rat(5, 2)}}, {3, 12, {2, 1}},
      {6, 24, {5, 2}},                {7, 28, {8, 3}},
  };
  return q;
}

NumberField quad_field(long d) { return NumberField({Rat(-d), 0, 1}); }

// ring of integers basis times N, transformed by a unimodular u
FieldData quad_data(const Quadratic& q, long N, const IntMat& u = IntMat::identity(2)) {
  NumberField k = quad_field(q.d);
  FieldElem w1 = k.from_rat(1);
  FieldElem w2 = q.d % 4 == 1 ? k.elem({Rat(1, 2), Rat(1, 2)}) : k.theta();
  std::vector<FieldElem> W;
  for (std::size_t j = 0; j < 2; ++j) W.push_back(Rat(N) * (Rat(u(0, j)) * w1 + Rat(u(1, j)) * w2));
  return FieldData{k, W, {k.elem(q.unit)}, 1};
}

// zeta_K(1 - s) = zeta(1 - s) L(1 - s, chi_D), both from Bernoulli numbers
Rat dedekind_zeta_oracle(long disc, unsigned s) {
  Rat bchi = 0;
  for (long a = 1; a <= disc; ++a) {
    int chi = mpz_kronecker_si(BigInt(disc).get_mpz_t(), a);
    if (chi) bchi += chi * bernoulli_poly(s, Rat(a, disc));
  }
  BigInt dp;
  mpz_pow_ui(dp.get_mpz_t(), BigInt(disc).get_mpz_t(), s - 1);
  bchi *= dp;
  return (-bernoulli_number(s) / s) * (-bchi / s);
}

NumberField cubic_field() {
  static const NumberField k({1, -3, -1, 1});
  return k;
}

FieldData cubic_data(long N) {
  NumberField k = cubic_field();
  std::vector<FieldElem> W;
  for (std::size_t j = 0; j < 3; ++j) {
    RatVec c(3, 0);
    c[j] = N;
    W.push_back(k.elem(c));
  }
  return FieldData{k, W, {k.elem({10, 2, -3}), k.elem({-2, 6, 5})}, 1};
}

IntMat random_sl2(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3), pick(0, 1);
  IntMat m = IntMat::identity(2);
  for (int s = 0; s < 3; ++s) {
    IntMat e;
    if (pick(rng)) e = IntMat{{1, c(rng)}, {0, 1}};
    else e = IntMat{{1, 0}, {c(rng), 1}};
    m = m * e;
  }
  return m;
}

}  // namespace

TEST(BuildInputs, QuadraticExample) {
  NumberField k = quad_field(5);
  FieldElem eps = k.elem({Rat(3, 2), Rat(1, 2)});
  FieldData data{k, {Rat(-1) * eps, k.from_rat(1)}, {eps}, 1};
  ZetaInputs in = build_inputs(data);
  EXPECT_EQ(in.A.front(), (IntMat{{3, -1}, {1, 0}}));
  EXPECT_EQ(in.eta, 1);
  EXPECT_EQ(in.v, (RatVec{0, 1}));
  // N(-x1 eps + x2) = x1^2 - 3 x1 x2 + x2^2
  EXPECT_EQ(in.P.coeff({2, 0}), 1);
  EXPECT_EQ(in.P.coeff({1, 1}), -3);
  EXPECT_EQ(in.P.coeff({0, 2}), 1);
}

TEST(BuildInputs, CubicExample) {
  ZetaInputs in = build_inputs(cubic_data(2));
  EXPECT_EQ(in.v, (RatVec{Rat(1, 2), 0, 0}));
  EXPECT_EQ(in.eta, 1);
  EXPECT_EQ(in.A[0], (IntMat{{10, 3, 1}, {2, 1, 0}, {-3, -1, 0}}));
  EXPECT_EQ(in.A[1], (IntMat{{-2, -5, -11}, {6, 13, 28}, {5, 11, 24}}));
  EXPECT_EQ(in.A[0] * in.A[1], (IntMat{{3, 0, -2}, {2, 3, 6}, {0, 2, 5}}));
}

TEST(BuildInputs, DegreeOne) {
  NumberField q = NumberField::rationals();
  FieldData data{q, {q.from_rat(1)}, {}, 3};
  ZetaInputs in = build_inputs(data);
  EXPECT_EQ(in.v, RatVec{1});
  EXPECT_EQ(in.P.coeff({1}), 3);
  EXPECT_EQ(in.Q.num_rows(), 1u);
  EXPECT_EQ(in.Q.sign(0, {1}), 1);
}

TEST(Validate, Findings) {
  NumberField k = quad_field(5);
  FieldElem eps = k.elem({Rat(3, 2), Rat(1, 2)});
  EXPECT_TRUE(validate(FieldData{k, {Rat(-1) * eps, k.from_rat(1)}, {eps}, 1}).empty());

  auto f = validate(FieldData{k, {k.from_rat(1), k.theta()}, {k.elem({3, 1})}, 1});  // norm 4
  ASSERT_FALSE(f.empty());
  EXPECT_NE(f.front().find("not a unit"), std::string::npos);

  f = validate(FieldData{k, {k.from_rat(1), k.from_rat(2)}, {eps}, 1});
  ASSERT_FALSE(f.empty());
  EXPECT_EQ(f.front(), "singular basis");

  // (1 + sqrt 5)/2 has norm -1 and a negative conjugate
  f = validate(FieldData{k, {k.from_rat(1), k.elem({Rat(1, 2), Rat(1, 2)})}, {k.elem({Rat(1, 2), Rat(1, 2)})}, 1});
  ASSERT_FALSE(f.empty());
  EXPECT_NE(f.front().find("not totally positive"), std::string::npos);

  EXPECT_THROW(build_inputs(FieldData{k, {k.from_rat(1), k.from_rat(2)}, {eps}, 1}), ValidationError);
}

TEST(RegulatorSign, Quadratic) {
  NumberField k = quad_field(5);
  FieldElem eps = k.elem({Rat(3, 2), Rat(1, 2)});
  // the first embedding sends sqrt 5 to its negative root, where eps < 1
  EXPECT_EQ(regulator_sign({eps}), -1);
  EXPECT_EQ(regulator_sign({eps.inverse()}), 1);
  EXPECT_EQ(regulator_sign({}), 1);
}

TEST(Orbit, QuadraticTrivialConductor) {
  ZetaInputs in = build_inputs(quad_data(quadratics()[0], 1));
  EXPECT_EQ(coset_orbit(in).size(), 1u);
}

TEST(Orbit, CubicConductors) {
  ZetaInputs in2 = build_inputs(cubic_data(2));
  auto v2 = coset_orbit(in2);
  ASSERT_EQ(v2.size(), 2u);
  EXPECT_EQ(v2[1], (RatVec{0, 0, Rat(1, 2)}));  // A_1 v = v, A_2 v
  EXPECT_EQ(coset_orbit(build_inputs(cubic_data(3))).size(), 13u);
  EXPECT_THROW(coset_orbit(build_inputs(cubic_data(3)), 5), DegeneracyError);
}

TEST(Orbit, ClosedUnderUnits) {
  for (long N : {4, 5, 6}) {
    ZetaInputs in = build_inputs(cubic_data(N));
    auto V = coset_orbit(in);
    for (const auto& x : V)
      for (const auto& a : in.A) {
        RatVec y = to_rat(a) * x;
        for (auto& t : y) t = frac_part(t);
        EXPECT_NE(std::find(V.begin(), V.end(), y), V.end());
      }
  }
}

TEST(PartialZeta, QuadraticExample) {
  NumberField k = quad_field(5);
  FieldElem eps = k.elem({Rat(3, 2), Rat(1, 2)});
  FieldData data{k, {Rat(-1) * eps, k.from_rat(1)}, {eps}, 1};
  EXPECT_EQ(partial_zeta(data, 2), Rat(1, 30));
  EXPECT_EQ(quadratic_fast(data, 2), Rat(1, 30));
}

TEST(PartialZeta, DedekindZetaOfQuadraticFields) {
  // narrow class number one, so the partial zeta function is the full one
  for (const auto& q : quadratics()) {
    if (q.d == 3 || q.d == 6 || q.d == 7) continue;
    for (unsigned s = 1; s <= 4; ++s) {
      FieldData data = quad_data(q, 1);
      Rat expect = dedekind_zeta_oracle(q.disc, s);
      EXPECT_EQ(partial_zeta(data, s), expect) << "d=" << q.d << " s=" << s;
      EXPECT_EQ(quadratic_fast(data, s), expect) << "d=" << q.d << " s=" << s;
    }
  }
}

TEST(PartialZeta, RationalField) {
  // sum over x = 1 mod N, x > 0 of x^{-s}, at 1 - s
  NumberField q = NumberField::rationals();
  for (long N : {2, 3, 5, 7})
    for (unsigned s = 1; s <= 4; ++s) {
      FieldData data{q, {q.from_rat(N)}, {}, 1};
      BigInt np;
      mpz_pow_ui(np.get_mpz_t(), BigInt(N).get_mpz_t(), s - 1);
      Rat expect = -Rat(np) * bernoulli_poly(s, Rat(1, N)) / s;
      EXPECT_EQ(partial_zeta(data, s), expect) << N << " " << s;
    }
}

TEST(PartialZeta, CubicExample) {
  EXPECT_EQ(partial_zeta(cubic_data(2), 1), 0);
  EXPECT_EQ(partial_zeta(cubic_data(3), 1), Rat(2, 3));
}

TEST(PartialZeta, CubicTable) {
  const std::vector<long> expect{0, 2, 1, -4, 4, 2, 3, -10, -2, -18, 5};
  for (long N = 2; N <= 12; ++N)
    EXPECT_EQ(N * partial_zeta(cubic_data(N), 1, {4}), expect[N - 2]) << "N=" << N;
}

TEST(PartialZeta, ThreadCountDoesNotMatter) {
  EXPECT_EQ(partial_zeta(cubic_data(5), 1, {1}), partial_zeta(cubic_data(5), 1, {8}));
}

TEST(QuadraticFast, AgreesWithCocyclePath) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> field(0, quadratics().size() - 1);
  std::uniform_int_distribution<long> cond(1, 4);
  std::uniform_int_distribution<unsigned> sdist(1, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto& q = quadratics()[field(rng)];
    FieldData data = quad_data(q, cond(rng), random_sl2(rng));
    unsigned s = sdist(rng);
    ContinuedFraction cf;
    EXPECT_EQ(quadratic_fast(data, s, &cf), partial_zeta(data, s)) << "trial " << trial;
    const BigInt c = build_inputs(data).A.front()(1, 0);
    EXPECT_LE(static_cast<double>(cf.euclid_steps), 2 + 2 * std::log2(std::abs(c.get_d())));
  }
}

TEST(ContinuedFractionSplit, MultipliesBack) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    IntMat a = random_sl2(rng) * random_sl2(rng);
    auto cf = continued_fraction(a);
    IntMat m = IntMat::identity(2);
    for (const auto& b : cf.b) m = m * IntMat{{b, -1}, {1, 0}};
    EXPECT_EQ(m, a);
  }
  EXPECT_EQ(continued_fraction(IntMat{{3, -1}, {1, 0}}).b, std::vector<BigInt>{3});
}
