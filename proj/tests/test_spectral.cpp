#include <gtest/gtest.h>

#include "tto/errors.hpp"
#include "tto/linalg.hpp"
#include "tto/spectral.hpp"

using namespace tto;

namespace {

const cplx kTwoI{0, 2};

InnerFunction r() { return InnerFunction::blaschke(kI); }

}  // namespace

TEST(Linalg, RankAndNullSpace) {
  CMat m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  EXPECT_EQ(numerical_rank(m, 1e-12), 2);
  CMat n = null_space(m, 1e-12);
  ASSERT_EQ(n.cols(), 1);
  EXPECT_LT((m * n).norm(), 1e-12);
  EXPECT_EQ(null_space(CMat::Zero(2, 2), 1e-9).cols(), 2);
  EXPECT_DOUBLE_EQ(sigma_ratio(CMat::Zero(2, 2)), 0.0);
}

TEST(Linalg, SubspaceDistances) {
  CMat a = CMat::Identity(3, 2);
  CMat b = CMat::Zero(3, 1);
  b(0, 0) = 1;
  EXPECT_LT(subspace_residual(a, b), 1e-15);
  EXPECT_DOUBLE_EQ(subspace_distance(a, b), 1.0);
  CMat c = CMat::Zero(3, 1);
  c(2, 0) = 1;
  EXPECT_NEAR(subspace_residual(a, c), 1.0, 1e-15);
}

TEST(Kernel, ConstantSymbolBetweenNestedSpaces) {
  InnerFunction theta = InnerFunction::blaschke(kI, 2);
  AttoOperator a = build_A(Symbol(1.0), r(), theta);
  KernelReport num = numeric_kernel(a);
  EXPECT_EQ(num.dimension, 1);
  KernelReport an = analytic_kernel(RationalFunction(1.0), r(), theta);
  EXPECT_TRUE(an.prediction_applied);
  EXPECT_EQ(an.predicted_dimension, 1);
  EXPECT_EQ(an.dimension, 1);
  EXPECT_LT(an.principal_angle_residual, 1e-7);
}

TEST(Kernel, AnalyticSymbolAbsorbingAlpha) {
  InnerFunction theta = InnerFunction::blaschke(kI, 2);
  KernelReport k = analytic_kernel(as_rational(r()), r(), theta);
  EXPECT_EQ(k.predicted_dimension, 2);
  EXPECT_EQ(k.dimension, 2);
}

TEST(Kernel, WitnessesForEveryNullVector) {
  InnerFunction theta(Domain::half_plane, {{kI, 2}, {kTwoI, 1}});
  InnerFunction alpha = InnerFunction::blaschke(kI);
  Symbol g(RationalFunction::from_roots(1.0, {cplx(0.5, -1)}, {cplx(0, -3)}));
  AttoOperator a = build_A(g, alpha, theta);
  auto ws = kernel_correspondence(a, matrix_symbol(g, alpha, theta));
  EXPECT_EQ(static_cast<int>(ws.size()), numeric_kernel(a).dimension);
  EXPECT_EQ(ws.size(), 2u);
}

TEST(Kernel, WitnessResidualsOfKernelVector) {
  InnerFunction theta = InnerFunction::blaschke(kI, 2);
  // b_i/(x+i) lies in the kernel of A_1 from K_theta to K_r.
  RationalFunction phi = as_rational(r()) * RationalFunction::pole(-kI);
  WitnessResiduals res;
  make_witness(phi, RationalFunction(1.0), r(), theta, &res);
  EXPECT_LT(res.max(), 1e-10);
}

TEST(Kernel, LemmaLBiconditional) {
  InnerFunction theta(Domain::half_plane, {{kI, 2}, {kTwoI, 1}});
  RationalFunction g_plus = as_rational(r()) * RationalFunction::pole(cplx(0, -3));
  for (const RationalFunction& phi : {RationalFunction::pole(-kI), as_rational(r()) * RationalFunction::pole(-kTwoI),
                                      as_rational(theta) * RationalFunction::pole(cplx(1, -1))})
    EXPECT_TRUE(lemma_L_check(g_plus, theta, phi));
}

TEST(Lattice, InvariantSubspacesOfDistinctZeros) {
  InnerFunction theta(Domain::half_plane, {{kI, 1}, {kTwoI, 1}});
  CheckReport rep = invariant_lattice(theta);
  EXPECT_TRUE(rep.passed);
}

TEST(Lattice, CyclicityOfConfluentSpace) {
  CheckReport rep = cyclicity(InnerFunction(Domain::half_plane, {{kI, 3}, {cplx(1, 1), 1}}));
  EXPECT_TRUE(rep.passed);
}

TEST(Factorization, IdentitiesHold) {
  InnerFunction theta(Domain::half_plane, {{kI, 1}, {cplx(1, 2), 1}});
  InnerFunction alpha = InnerFunction::blaschke(cplx(1, 2));
  Symbol g(RationalFunction::from_roots(2.0, {cplx(0.5, 0.5)}, {cplx(0.3, -1), cplx(-0.4, 2)}));
  CheckReport rep = factor_operator_checks(g, alpha, theta);
  EXPECT_TRUE(rep.passed);
}
