#include <gtest/gtest.h>

#include "tto/atto.hpp"
#include "tto/errors.hpp"
#include "tto/modelspace.hpp"

using namespace tto;

namespace {

const cplx kTwoI{0, 2};

void expect_near(cplx a, cplx b, double tol) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }

int index_of_pole(const ModelSpace& s, cplx pole) {
  for (int k = 0; k < s.dim(); ++k)
    if (std::abs(s.entries()[k].pole - pole) < 1e-12) return k;
  return -1;
}

}  // namespace

TEST(ModelSpace, GramOfTwoSimpleZeros) {
  auto s = make_space(InnerFunction(Domain::half_plane, {{kI, 1}, {kTwoI, 1}}));
  ASSERT_EQ(s->dim(), 2);
  int a = index_of_pole(*s, -kI), b = index_of_pole(*s, -kTwoI);
  ASSERT_GE(a, 0);
  ASSERT_GE(b, 0);
  expect_near(s->gram()(a, a), kPi, 1e-12);
  expect_near(s->gram()(b, b), kPi / 2, 1e-12);
  expect_near(s->gram()(a, b), 2 * kPi / 3, 1e-12);
  expect_near(s->gram()(b, a), 2 * kPi / 3, 1e-12);
}

TEST(ModelSpace, ConfluentBasis) {
  auto s = make_space(InnerFunction::blaschke(kI, 3));
  ASSERT_EQ(s->dim(), 3);
  for (const auto& e : s->entries()) expect_near(e.pole, -kI, 1e-14);
  // <(x+i)^-2, (x+i)^-2> = integral 1/(x^2+1)^2 = pi/2
  for (int k = 0; k < 3; ++k)
    if (s->entries()[k].order == 2) expect_near(s->gram()(k, k), kPi / 2, 1e-12);
}

TEST(ModelSpace, DiscZeroAtOriginGivesMonomials) {
  auto s = make_space(InnerFunction::blaschke(0.0, 2, Domain::disc));
  ASSERT_EQ(s->dim(), 2);
  EXPECT_TRUE(s->entries()[0].monomial);
  expect_near(s->gram()(0, 0), 1.0, 1e-14);
  expect_near(s->gram()(0, 1), 0.0, 1e-14);
}

TEST(ModelSpace, DegreeZeroSpace) {
  EXPECT_THROW(make_space(InnerFunction::identity()), MathError);
  EXPECT_EQ(make_space_or_zero(InnerFunction::identity())->dim(), 0);
}

TEST(ModelSpace, KernelAtTwoI) {
  InnerFunction r = InnerFunction::blaschke(kI);
  SpaceElement k = kernel_k(r, kTwoI);
  // (1 - r/3)/(x + 2i)
  for (cplx x : {cplx(0.5, 0.0), cplx(-1.0, 0.3)}) expect_near(k.rational(x), (1.0 - r(x) / 3.0) / (x + kTwoI), 1e-12);
  // reproducing property <f, k_w> = 2 pi i f(w) for f = 1/(x + i)
  RationalFunction f = RationalFunction::pole(-kI);
  expect_near(l2_inner(f, k.rational), 2.0 * kPi * kI * f(kTwoI), 1e-12);
}

TEST(ModelSpace, ProjectionOfTwoPoles) {
  InnerFunction r = InnerFunction::blaschke(kI);
  // P_r (1/(x+2i)) = <f, e> / <e, e> e with e = 1/(x+i): (2 pi/3) / pi = 2/3
  SpaceElement p = project_theta(r, RationalFunction::pole(-kTwoI));
  ASSERT_EQ(p.coords.size(), 1);
  expect_near(p.coords(0), 2.0 / 3.0, 1e-12);
}

TEST(ModelSpace, ProjectionOfThetaMultipleVanishes) {
  InnerFunction t(Domain::half_plane, {{kI, 1}, {cplx(1, 2), 1}});
  RationalFunction f = as_rational(t) * RationalFunction::pole(cplx(0.5, -1));
  SpaceElement p = project_theta(t, f);
  EXPECT_LT(p.coords.norm(), 1e-10);
}

TEST(ModelSpace, ConjugationOnKr) {
  InnerFunction r = InnerFunction::blaschke(kI);
  // C_r (1/(x+i)) = r conj(1/(x+i)) = (x-i)/(x+i) / (x-i) = 1/(x+i)
  SpaceElement c = conjugation_C(r, RationalFunction::pole(-kI));
  expect_near(c.coords(0), 1.0, 1e-12);
}

TEST(ModelSpace, ElementOfRejectsOutsideFunctions) {
  auto s = make_space(InnerFunction::blaschke(kI));
  EXPECT_THROW(element_of(s, RationalFunction::pole(-kTwoI), 1e-9), MathError);
  EXPECT_NO_THROW(element_of(s, RationalFunction::pole(-kI, 1, 3.0), 1e-9));
}

TEST(ModelSpace, ShiftedSpaceDimensions) {
  InnerFunction theta(Domain::half_plane, {{kI, 2}, {kTwoI, 1}});
  InnerFunction alpha = InnerFunction::blaschke(kI);
  ShiftedSpace s = shifted_space(alpha, theta);
  EXPECT_EQ(s.quotient->dim(), 2);
  EXPECT_EQ(s.embedding.rows(), 3);
  EXPECT_EQ(s.embedding.cols(), 2);
  EXPECT_LT(s.formula_residual, 1e-9);
}
