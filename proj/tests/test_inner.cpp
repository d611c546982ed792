#include <gtest/gtest.h>

#include "tto/errors.hpp"
#include "tto/inner.hpp"

using namespace tto;

namespace {

const cplx kTwoI{0, 2};

void expect_near(cplx a, cplx b, double tol) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }

}  // namespace

TEST(Inner, HalfPlaneFactorValues) {
  InnerFunction r = InnerFunction::blaschke(kI);
  expect_near(r(kTwoI), 1.0 / 3.0, 1e-14);
  expect_near(r(0.0), -1.0, 1e-14);
  expect_near(r.value_at_infinity(), 1.0, 1e-14);
  for (double x : {-3.0, 0.2, 5.0}) EXPECT_NEAR(std::abs(r(x)), 1.0, 1e-14);
}

TEST(Inner, DiscFactorValues) {
  InnerFunction b = InnerFunction::blaschke(0.5, 1, Domain::disc);
  expect_near(b(0.0), 0.5, 1e-14);
  expect_near(b(0.5), 0.0, 1e-14);
  InnerFunction z = InnerFunction::blaschke(0.0, 2, Domain::disc);
  expect_near(z(cplx(0.3, 0.1)), cplx(0.3, 0.1) * cplx(0.3, 0.1), 1e-14);
  for (double t : {0.1, 1.7, 3.0}) EXPECT_NEAR(std::abs(b(std::polar(1.0, t))), 1.0, 1e-14);
}

TEST(Inner, ZeroOutsideDomainIsRejected) {
  EXPECT_THROW(InnerFunction::blaschke(cplx(0, -1)), MathError);
  EXPECT_THROW(InnerFunction::blaschke(1.5, 1, Domain::disc), MathError);
  EXPECT_THROW(InnerFunction(Domain::half_plane, {{kI, 1}}, cplx(2, 0)), MathError);
}

TEST(Inner, MultiplyDivideGcd) {
  InnerFunction a(Domain::half_plane, {{kI, 2}, {cplx(1, 1), 1}});
  InnerFunction b(Domain::half_plane, {{kI, 1}, {kTwoI, 1}});
  InnerFunction ab = multiply(a, b);
  EXPECT_EQ(ab.degree(), 5);
  EXPECT_EQ(ab.multiplicity_of(kI), 3);
  EXPECT_TRUE(divides(a, ab));
  EXPECT_FALSE(divides(b, a));
  InnerFunction g = gcd(a, b);
  EXPECT_EQ(g.degree(), 1);
  EXPECT_EQ(g.multiplicity_of(kI), 1);
  InnerFunction q = divide_exact(ab, b);
  EXPECT_TRUE(same_zeros(q, a));
  EXPECT_THROW(divide_exact(a, b), MathError);
}

TEST(Inner, DivisorsEnumerateSubMultisets) {
  InnerFunction t(Domain::half_plane, {{kI, 2}, {kTwoI, 1}});
  // (2+1)(1+1) sub-multisets
  EXPECT_EQ(divisors(t).size(), 6u);
  for (const auto& d : divisors(t)) EXPECT_TRUE(divides(d, t));
}

TEST(Inner, FactorsMultiplyToTheProduct) {
  InnerFunction t(Domain::disc, {{0.0, 1}, {cplx(0.3, -0.4), 2}}, std::polar(1.0, 0.7));
  cplx z(0.2, 0.35);
  cplx prod = 1.0, rprod = 1.0;
  for (const auto& f : t.factors()) prod *= f(z);
  for (const auto& f : t.factors(true)) rprod *= f(z);
  expect_near(prod, t(z), 1e-13);
  expect_near(rprod * t(z), 1.0, 1e-12);
}

TEST(Inner, InnerFactorOfAnalyticRational) {
  // (x - i)(x - 2)/(x + i)^2 has inner factor b_i.
  RationalFunction f = RationalFunction::from_roots(1.0, {kI, 2.0}, {-kI, -kI});
  InnerFunction in = inner_factor(f);
  EXPECT_EQ(in.degree(), 1);
  EXPECT_EQ(in.multiplicity_of(kI), 1);
  EXPECT_THROW(inner_factor(RationalFunction::pole(kI)), MathError);
}

TEST(Inner, ReciprocalIsBoundaryConjugate) {
  InnerFunction t(Domain::half_plane, {{cplx(0.5, 1.5), 2}}, cplx(0, 1));
  for (double x : {-1.0, 0.0, 2.5}) expect_near(t.reciprocal()(x), std::conj(t(x)), 1e-13);
}
