// Randomized invariants over seeded cases.

#include <gtest/gtest.h>

#include "tto/errors.hpp"
#include "tto/linalg.hpp"
#include "tto/sampling.hpp"
#include "tto/spectral.hpp"
#include "tto/transfer.hpp"

using namespace tto;

namespace {

class Seeded : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  CaseGenerator gen{GetParam()};
  Tolerances tol;
};

double rel(const CMat& a, const CMat& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

}  // namespace

TEST_P(Seeded, ProjectionIsIdempotent) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(1, 5), true);
  auto space = make_space(theta, tol);
  RationalFunction f = gen.h_plus(3) + gen.h_minus(2);
  SpaceElement p = project_theta(space, f);
  SpaceElement pp = project_theta(space, p.rational);
  EXPECT_LT((p.coords - pp.coords).norm(), space->tol_proj() * std::max(1.0, p.coords.norm()));
}

TEST_P(Seeded, ProjectionResidualIsOrthogonal) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(1, 4), true);
  auto space = make_space(theta, tol);
  RationalFunction f = gen.h_plus(3);
  SpaceElement p = project_theta(space, f);
  RationalFunction rest = f - p.rational;
  for (const auto& e : space->basis())
    EXPECT_LT(std::abs(l2_inner(rest, e, tol)), 1e-8 * l2_norm(f) * l2_norm(e));
}

TEST_P(Seeded, ConjugationIsIsometricInvolution) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(1, 5), true);
  auto space = make_space(theta, tol);
  CMat c = conjugation_orthonormal(space);
  const auto n = space->dim();
  EXPECT_LT(rel(c * c.conjugate(), CMat::Identity(n, n)), 1e-8);
  EXPECT_LT(rel(c.adjoint() * c, CMat::Identity(n, n)), 1e-8);
}

TEST_P(Seeded, AdjointHasConjugateSymbol) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(1, 4), true);
  InnerFunction alpha = gen.inner(Domain::half_plane, gen.integer(1, 4), true);
  Symbol g(gen.bounded(1));
  AttoOperator a = build_A(g, alpha, theta, tol);
  AttoOperator b = build_A(g.conjugate(Domain::half_plane), theta, alpha, tol);
  EXPECT_LT(rel(a.orthonormal().adjoint(), b.orthonormal()), 1e-8);
}

TEST_P(Seeded, ConjugationSymmetry) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(1, 4), true);
  Symbol g(gen.bounded(1));
  AttoOperator a = build_A(g, theta, theta, tol);
  AttoOperator b = build_A(g.conjugate(Domain::half_plane), theta, theta, tol);
  CMat c = conjugation_orthonormal(a.domain);
  // C A C x = c conj(A c conj(x)) = c conj(A) conj(c) x
  EXPECT_LT(rel(c * a.orthonormal().conjugate() * c.conjugate(), b.orthonormal()), 1e-8);
}

TEST_P(Seeded, SplitSymbolIsZero) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(1, 4), true);
  InnerFunction alpha = gen.inner(Domain::half_plane, gen.integer(1, 4), true);
  ZeroSplit split{gen.h_minus(2), gen.h_plus(2)};
  Symbol g = symbol_from_split(split, alpha, theta);
  EXPECT_LT(build_A(g, alpha, theta, tol).frobenius(), tol.zero_op);
}

TEST_P(Seeded, AnalyticKernelDimension) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(1, 4), true);
  InnerFunction alpha = gen.divisor_of(theta);
  if (alpha.degree() == 0) alpha = theta;
  InnerFunction beta = gen.divisor_of(theta);
  RationalFunction g_plus = as_rational(beta) * gen.outer();
  KernelReport k = analytic_kernel(g_plus, alpha, theta, tol);
  ASSERT_TRUE(k.prediction_applied);
  InnerFunction gamma = divide_exact(alpha, gcd(alpha, beta, tol), tol);
  EXPECT_EQ(k.predicted_dimension, theta.degree() - gamma.degree());
  EXPECT_EQ(k.dimension, k.predicted_dimension);
  EXPECT_LE(k.principal_angle_residual, tol.ker);
}

TEST_P(Seeded, KernelWitnessesValidate) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(2, 4), true);
  InnerFunction alpha = gen.divisor_of(theta);
  if (alpha.degree() == 0) alpha = theta;
  Symbol g(gen.bounded(1));
  AttoOperator a = build_A(g, alpha, theta, tol);
  EXPECT_NO_THROW(kernel_correspondence(a, matrix_symbol(g, alpha, theta), tol));
}

TEST_P(Seeded, ShiftedSpaceProjection) {
  InnerFunction theta = gen.inner(Domain::half_plane, gen.integer(1, 5), true);
  InnerFunction alpha = gen.divisor_of(theta);
  ShiftedSpace s = shifted_space(alpha, theta, tol);
  const auto n = theta.degree();
  EXPECT_EQ(s.quotient->dim(), n - alpha.degree());
  EXPECT_LT(rel(s.projection * s.projection, s.projection), 1e-8);
}

TEST_P(Seeded, ResidueInnerMatchesQuadrature) {
  RationalFunction f = gen.h_plus(2) + gen.h_minus(1);
  RationalFunction g = gen.h_plus(1) + gen.h_minus(2);
  cplx residue = l2_inner(f, g, tol);
  cplx quad = quadrature_oracle(f, g, tol);
  EXPECT_LE(std::abs(residue - quad), tol.quad * std::max(std::abs(quad), l2_norm(f) * l2_norm(g) * 1e-3));
}

TEST_P(Seeded, TransferIsIsometric) {
  RationalFunction f = gen.disc_rational(2, 0);
  RationalFunction v = v_map(f, tol);
  EXPECT_NEAR(l2_norm(v, Domain::half_plane, tol), l2_norm(f, Domain::disc, tol), 1e-9 * l2_norm(f, Domain::disc, tol));
}

TEST_P(Seeded, TransferDiagram) {
  InnerFunction theta = gen.inner(Domain::disc, gen.integer(1, 3), true);
  InnerFunction alpha = gen.divisor_of(theta);
  if (alpha.degree() == 0) alpha = theta;
  Symbol g(gen.disc_rational(1, 1));
  EXPECT_TRUE(diagram_check(g, alpha, theta, tol).passed);
}

INSTANTIATE_TEST_SUITE_P(Properties, Seeded, ::testing::Range<std::uint64_t>(1, 13));
