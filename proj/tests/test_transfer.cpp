#include <gtest/gtest.h>

#include "tto/transfer.hpp"

using namespace tto;

namespace {

void expect_near(cplx a, cplx b, double tol) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }

}  // namespace

TEST(Transfer, CayleyMapPoints) {
  expect_near(cayley_m(0.0), kI, 1e-15);
  expect_near(cayley_m(1.0), 0.0, 1e-15);
  expect_near(cayley_inv(kI), 0.0, 1e-15);
  cplx z(0.3, -0.5);
  expect_near(cayley_inv(cayley_m(z)), z, 1e-14);
}

TEST(Transfer, ImageOfConstant) {
  RationalFunction v = v_map(RationalFunction(1.0));
  for (cplx x : {cplx(0.0, 0.0), cplx(1.5, 0.0), cplx(-2.0, 0.5)})
    expect_near(v(x), 1.0 / (std::sqrt(kPi) * (kI + x)), 1e-14);
  EXPECT_NEAR(l2_norm(v), 1.0, 1e-12);
}

TEST(Transfer, ZeroAtOriginMapsToI) {
  InnerFunction t = transfer_inner(InnerFunction::blaschke(0.0, 1, Domain::disc));
  ASSERT_EQ(t.degree(), 1);
  EXPECT_EQ(t.multiplicity_of(kI), 1);
  cplx x(0.7, 0.2);
  expect_near(t(x), cayley_inv(x), 1e-12);
}

TEST(Transfer, IsometryOnMonomials) { EXPECT_LT(isometry_residual(6), 1e-9); }

TEST(Transfer, VMatrixIsUnitaryBetweenOrthonormalBases) {
  InnerFunction theta(Domain::disc, {{cplx(0.5, 0.2), 2}, {cplx(-0.4, 0.1), 1}});
  auto disc = make_space(theta);
  auto half = make_space(transfer_inner(theta));
  CMat v = v_matrix(disc, half);
  CMat vo = half->to_orthonormal(v * disc->from_orthonormal(CMat::Identity(3, 3)));
  EXPECT_LT((vo.adjoint() * vo - CMat::Identity(3, 3)).norm(), 1e-9);
}

TEST(Transfer, DiagramCommutes) {
  InnerFunction theta(Domain::disc, {{cplx(0.5, 0.2), 2}, {cplx(-0.4, 0.1), 1}});
  InnerFunction alpha = InnerFunction::blaschke(cplx(0.5, 0.2), 1, Domain::disc);
  RationalFunction g = RationalFunction::from_roots(1.0, {cplx(0.1, 0.3)}, {cplx(2, 0.5)}) +
                       RationalFunction::pole(cplx(0.1, -0.2));
  CheckReport rep = diagram_check(Symbol(g), alpha, theta);
  EXPECT_TRUE(rep.passed);
}
