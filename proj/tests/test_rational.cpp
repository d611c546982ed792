#include <gtest/gtest.h>

#include "tto/errors.hpp"
#include "tto/polynomial.hpp"
#include "tto/rational.hpp"

using namespace tto;

namespace {

void expect_near(cplx a, cplx b, double tol) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }

}  // namespace

TEST(Polynomial, RootsOfProduct) {
  Polynomial p = Polynomial::from_roots(2.0, {1.0, cplx(0, 2), -3.0});
  auto r = roots(p);
  ASSERT_EQ(r.size(), 3u);
  for (cplx z : r) EXPECT_LT(std::abs(p(z)), 1e-10);
  expect_near(p(0.0), 2.0 * (-1.0) * cplx(0, -2) * 3.0, 1e-12);
}

TEST(Polynomial, DivmodReconstructs) {
  Polynomial a{1.0, 2.0, 3.0, 4.0};
  Polynomial d{cplx(0, 1), 1.0};
  auto [q, r] = a.divmod(d);
  Polynomial back = q * d + r;
  for (int k = 0; k <= 3; ++k) expect_near(back[k], a[k], 1e-12);
  EXPECT_LE(r.degree(), 0);
}

TEST(Polynomial, ClusteredRootsMergeRepeated) {
  Polynomial p = Polynomial::from_roots(1.0, {cplx(0, 1), cplx(0, 1), cplx(0, 1), 2.0});
  auto r = clustered_roots(p, 1e-4);
  ASSERT_EQ(r.size(), 2u);
  int total = r[0].multiplicity + r[1].multiplicity;
  EXPECT_EQ(total, 4);
}

TEST(Rational, PartialFractionsOfProduct) {
  // 1/((x+i)(x+2i)) = -i/(x+i) + i/(x+2i)
  RationalFunction f = RationalFunction::pole(cplx(0, -1)) * RationalFunction::pole(cplx(0, -2));
  expect_near(f.pole_coeff(cplx(0, -1), 1), cplx(0, -1), 1e-12);
  expect_near(f.pole_coeff(cplx(0, -2), 1), cplx(0, 1), 1e-12);
  EXPECT_TRUE(f.decays());
}

TEST(Rational, FromRootsCancelsCommonFactor) {
  RationalFunction f = RationalFunction::from_roots(1.0, {cplx(0, 1), 2.0}, {cplx(0, 1), cplx(0, -1)});
  EXPECT_EQ(f.terms().size(), 1u);
  expect_near(f(3.0), (3.0 - 2.0) / (3.0 + cplx(0, 1)), 1e-12);
}

TEST(Rational, CoefficientsRoundTrip) {
  Polynomial num{1.0, cplx(0, 2)};
  Polynomial den{2.0, 3.0, 1.0};
  RationalFunction f = RationalFunction::from_coefficients(num, den);
  for (cplx z : {cplx(0.3, 0.7), cplx(-1.2, 2.0)}) expect_near(f(z), num(z) / den(z), 1e-12);
  RationalFunction g = RationalFunction::from_coefficients(f.numerator(), f.denominator());
  expect_near(g(cplx(0.5, 0.5)), f(cplx(0.5, 0.5)), 1e-12);
}

TEST(Rational, ReciprocalAndDerivative) {
  RationalFunction f = RationalFunction::from_roots(2.0, {1.0}, {cplx(0, -1)});
  RationalFunction inv = f.reciprocal();
  expect_near(inv(cplx(0.2, 0.1)) * f(cplx(0.2, 0.1)), 1.0, 1e-12);
  // d/dx (2(x-1)/(x+i)) = 2(1+i)/(x+i)^2
  cplx x(0.4, -0.3);
  expect_near(f.derivative()(x), 2.0 * cplx(1, 1) / ((x + cplx(0, 1)) * (x + cplx(0, 1))), 1e-12);
}

TEST(Rational, ConjReflectOnTheLine) {
  RationalFunction f = RationalFunction::from_roots(cplx(1, 2), {cplx(0.5, 1)}, {cplx(0, -1), cplx(1, -2)});
  RationalFunction fs = f.conj_reflect();
  for (double x : {-2.0, 0.0, 1.5}) expect_near(fs(x), std::conj(f(x)), 1e-12);
}

TEST(Rational, LaurentAtPole) {
  RationalFunction f = RationalFunction::pole(1.0, 2, 3.0) + RationalFunction::pole(1.0, 1, 5.0) + 7.0;
  auto c = f.laurent(1.0, -2, 0);
  expect_near(c[0], 3.0, 1e-12);
  expect_near(c[1], 5.0, 1e-12);
  expect_near(c[2], 7.0, 1e-12);
}

TEST(Rational, RieszSplitSeparatesHalfPlanes) {
  RationalFunction plus = RationalFunction::pole(cplx(0, -1), 1, 2.0);
  RationalFunction minus = RationalFunction::pole(cplx(1, 2), 2, cplx(0, 1));
  RieszSplit s = riesz_split(plus + minus + 4.0);
  expect_near(s.constant, 4.0, 1e-12);
  expect_near(s.plus(cplx(0.3, 0.2)), plus(cplx(0.3, 0.2)), 1e-12);
  expect_near(s.minus(cplx(0.3, 0.2)), minus(cplx(0.3, 0.2)), 1e-12);
}

TEST(Rational, NormOfCauchyKernel) {
  // integral of 1/(x^2+1) over the line
  EXPECT_NEAR(l2_norm(RationalFunction::pole(cplx(0, -1))), std::sqrt(kPi), 1e-12);
}

TEST(Rational, GramEntriesOfTwoPoles) {
  RationalFunction e1 = RationalFunction::pole(cplx(0, -1));
  RationalFunction e2 = RationalFunction::pole(cplx(0, -2));
  expect_near(l2_inner(e2, e2), kPi / 2, 1e-12);
  expect_near(l2_inner(e2, e1), 2 * kPi / 3, 1e-12);
  expect_near(l2_inner(e1, e2), 2 * kPi / 3, 1e-12);
}

TEST(Rational, InnerProductWithBlaschkeFactor) {
  RationalFunction f = RationalFunction::pole(cplx(0, -1));
  RationalFunction b = RationalFunction::from_roots(1.0, {cplx(0, 2)}, {cplx(0, -2)});
  cplx residue = l2_inner(f, b * f);
  expect_near(residue, -kPi / 3, 1e-12);
  Tolerances tol;
  cplx quad = quadrature_oracle(f, b * f, tol);
  EXPECT_LT(std::abs(quad - residue) / std::abs(residue), 1e-8);
}

TEST(Rational, ModelSpaceOrthogonalToThetaMultiple) {
  RationalFunction b = RationalFunction::from_roots(1.0, {cplx(0, 2)}, {cplx(0, -2)});
  expect_near(l2_inner(RationalFunction::pole(cplx(0, -2)), b * RationalFunction::pole(cplx(0, -1))), 0.0, 1e-12);
}

TEST(Rational, DiscInnerOfMonomials) {
  RationalFunction z = RationalFunction::x();
  expect_near(disc_inner(z * z, z * z), 1.0, 1e-12);
  expect_near(disc_inner(z, z * z), 0.0, 1e-12);
  expect_near(disc_inner(1.0, 1.0), 1.0, 1e-12);
}

TEST(Rational, BoundaryIntegralMatchesFlatProduct) {
  RationalFunction a = RationalFunction::from_roots(1.0, {cplx(0.5, 1)}, {cplx(0, -1), cplx(2, -1)});
  RationalFunction b = RationalFunction::from_roots(2.0, {cplx(-1, 3)}, {cplx(1, 1)});
  RationalFunction c = RationalFunction::pole(cplx(-0.5, -2));
  cplx factored = boundary_integral({a, b, c}, Domain::half_plane);
  cplx flat = boundary_integral({a * b * c}, Domain::half_plane);
  EXPECT_LT(std::abs(factored - flat), 1e-10 * std::max(1.0, std::abs(flat)));
}

TEST(Rational, RealPoleIsRejected) {
  RationalFunction f = RationalFunction::pole(1.0);
  try {
    check_boundary_poles(f, Domain::half_plane);
    FAIL() << "expected RealPole";
  } catch (const MathError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RealPole);
  }
}

TEST(Rational, ZeroOrderCountsMultiplicity) {
  RationalFunction f = RationalFunction::from_roots(1.0, {cplx(0, 1), cplx(0, 1), 3.0}, {cplx(0, -1), cplx(0, -1),
                                                                                          cplx(0, -1), 2.0});
  EXPECT_EQ(zero_order(f, cplx(0, 1)), 2);
  EXPECT_EQ(zero_order(f, 3.0), 1);
  EXPECT_EQ(zero_order(f, 1.0), 0);
}

TEST(Rational, CompositionWithMobius) {
  RationalFunction f = RationalFunction::pole(cplx(0, -1));
  // f((x + 1)/(x - 2))
  RationalFunction g = f.compose_mobius(1.0, 1.0, 1.0, -2.0);
  cplx x(0.7, 0.4);
  expect_near(g(x), f((x + 1.0) / (x - 2.0)), 1e-12);
}
