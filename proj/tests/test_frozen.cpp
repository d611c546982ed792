// Closed-form values for small inner functions.

#include <gtest/gtest.h>

#include <functional>

#include "tto/atto.hpp"
#include "tto/linalg.hpp"
#include "tto/spectral.hpp"
#include "tto/transfer.hpp"

using namespace tto;

namespace {

const cplx kTwoI{0, 2};
const std::vector<cplx> kProbe = {cplx(0.3, 0.0), cplx(-1.7, 0.0), cplx(0.4, -0.6), cplx(2.0, 0.5)};

InnerFunction r() { return InnerFunction::blaschke(kI); }

void expect_same(const RationalFunction& f, const std::function<cplx(cplx)>& g, double tol) {
  for (cplx x : kProbe) EXPECT_LT(std::abs(f(x) - g(x)), tol) << "at " << x << ": " << f(x) << " vs " << g(x);
}

RationalFunction apply(const AttoOperator& a, const SpaceElement& e) { return a.codomain_element(a.matrix * e.coords); }

}  // namespace

TEST(Frozen, WeightedSplitOfReciprocal) {
  RationalFunction rinv = r().reciprocal();
  auto [plus, minus] = weighted_split(rinv, WeightVariant::x_minus_i);
  EXPECT_LT(plus.scale(), 1e-12);
  expect_same(minus, [&](cplx x) { return rinv(x); }, 1e-12);
}

TEST(Frozen, ProjectionOfCauchyKernelIsReproducingKernel) {
  InnerFunction theta(Domain::half_plane, {{kI, 1}, {kTwoI, 1}});
  SpaceElement p = project_theta(theta, RationalFunction::pole(-kTwoI));
  SpaceElement k = kernel_k(theta, kTwoI);
  expect_same(p.rational, [&](cplx x) { return k.rational(x); }, 1e-12);
}

TEST(Frozen, ConjugateKernelIsConjugationOfKernel) {
  InnerFunction theta(Domain::half_plane, {{kI, 2}, {cplx(1, 1), 1}});
  cplx w(0.5, 0.8);
  SpaceElement c = conjugation_C(theta, kernel_k(theta, w).rational);
  SpaceElement kt = kernel_ktilde(theta, w);
  expect_same(c.rational, [&](cplx x) { return kt.rational(x); }, 1e-10);
}

TEST(Frozen, ShiftedSpaceOfTwoZeros) {
  ShiftedSpace s = shifted_space(r(), InnerFunction(Domain::half_plane, {{kI, 1}, {kTwoI, 1}}));
  ASSERT_EQ(s.basis.size(), 1u);
  // b_i K_{b_2i} = span b_i/(x+2i)
  cplx ratio = s.basis[0](0.3) / (r()(0.3) / (0.3 + kTwoI));
  expect_same(s.basis[0], [&](cplx x) { return ratio * r()(x) / (x + kTwoI); }, 1e-12);
}

TEST(Frozen, CompressionSplitsIntoAAndB) {
  InnerFunction theta(Domain::half_plane, {{kI, 2}, {kTwoI, 1}});
  InnerFunction alpha = r();
  Symbol g(RationalFunction::from_roots(1.0, {cplx(0.5, 0.5)}, {cplx(0.3, -1), cplx(-0.4, 2)}));
  AttoOperator full = build_A(g, theta, theta);
  AttoOperator a = build_A(g, alpha, theta);
  AttoOperator b = build_B(g, alpha, theta);
  ShiftedSpace s = shifted_space(alpha, theta);
  CMat sum = embedding_matrix(*a.codomain, *full.codomain) * a.matrix + s.embedding * b.matrix;
  EXPECT_LT((sum - full.matrix).norm(), 1e-9 * full.matrix.norm());
}

TEST(Frozen, RankOneF2aActionOnKernel) {
  RankOneParams p{kTwoI, 0.0};
  AttoOperator a = build_A(rank_one_symbol(RankOneKind::F2a, p, r(), r()), r(), r());
  RationalFunction out = apply(a, kernel_k(r(), kI));
  expect_same(out, [&](cplx x) { return (1.0 / (3.0 * kI)) * (r()(x) - 1.0 / 3.0) / (x - kTwoI); }, 1e-12);
}

TEST(Frozen, RankOneF6ActionOnKernel) {
  // g = x (conj r - r) = 4i - 4i/(x^2+1) and P_r k_i/(x^2+1) = k_i/2, so A k_i = 2i k_i.
  AttoOperator a = build_A(rank_one_symbol(RankOneKind::F6, {}, r(), r()), r(), r());
  RationalFunction out = apply(a, kernel_k(r(), kI));
  RationalFunction k = kernel_k(r(), kI).rational;
  expect_same(out, [&](cplx x) { return 2.0 * kI * k(x); }, 1e-12);
}

TEST(Frozen, FiniteRankItemsHaveRankAtMostTwo) {
  InnerFunction theta = InnerFunction::blaschke(kI, 2);
  RankOneParams p{kTwoI, 0.0};
  for (auto kind : {FiniteRankKind::pole_theta, FiniteRankKind::boundary}) {
    AttoOperator a = build_A(finite_rank_symbol(kind, 2, p, theta, theta), theta, theta);
    EXPECT_LE(numerical_rank(a.orthonormal(), 1e-9), 2);
  }
}

TEST(Frozen, ShiftDefectIsKernelAtI) {
  // (I - A_r A_{conj r}) phi = 2i phi(i) k_i on K_theta
  InnerFunction theta(Domain::half_plane, {{kTwoI, 1}, {cplx(1, 1), 2}});
  AttoOperator s = build_A(Symbol::inner(r()), theta, theta);
  AttoOperator t = build_A(Symbol::inner(r(), true), theta, theta);
  CMat d = CMat::Identity(3, 3) - s.matrix * t.matrix;
  CVec k = kernel_k(theta, kI).coords;
  for (int j = 0; j < 3; ++j) {
    cplx value = s.domain->basis()[j](kI);
    EXPECT_LT((d.col(j) - 2.0 * kI * value * k).norm(), 1e-10 * (1 + k.norm()));
  }
}

TEST(Frozen, DefectWithThetaVanishingAtI) {
  InnerFunction theta(Domain::half_plane, {{kI, 1}, {kTwoI, 1}});
  DefectResult d = defect_operators(r(), theta);
  EXPECT_TRUE(d.report.passed);
}

TEST(Frozen, AnalyticSymbolsMultiply) {
  InnerFunction theta = InnerFunction::blaschke(kI, 3);
  AttoOperator a = build_A(Symbol::inner(r()), theta, theta);
  AttoOperator a2 = build_A(Symbol::inner(InnerFunction::blaschke(kI, 2)), theta, theta);
  EXPECT_LT((a.matrix * a.matrix - a2.matrix).norm(), 1e-10);
}

TEST(Frozen, ShiftKernelWhenThetaVanishesAtI) {
  InnerFunction theta(Domain::half_plane, {{kI, 1}, {kTwoI, 1}});
  AttoOperator a = build_A(Symbol::inner(r()), theta, theta);
  KernelReport k = numeric_kernel(a);
  ASSERT_EQ(k.dimension, 1);
  // span theta/(x - i)
  RationalFunction f = k.null_basis[0].rational;
  cplx ratio = f(0.3) / (theta(0.3) / (0.3 - kI));
  expect_same(f, [&](cplx x) { return ratio * theta(x) / (x - kI); }, 1e-10);
  InnerFunction other(Domain::half_plane, {{kTwoI, 1}, {cplx(1, 1), 1}});
  EXPECT_EQ(numeric_kernel(build_A(Symbol::inner(r()), other, other)).dimension, 0);
}

TEST(Frozen, OuterSymbolIsInjective) {
  InnerFunction theta(Domain::half_plane, {{kI, 2}, {kTwoI, 1}});
  RationalFunction outer = RationalFunction::from_roots(1.0, {cplx(0.5, -1)}, {cplx(-1, -2)});
  KernelReport k = analytic_kernel(outer, theta, theta);
  EXPECT_EQ(k.predicted_dimension, 0);
  EXPECT_EQ(k.dimension, 0);
}

TEST(Frozen, LatticeOfTwoZeros) {
  InnerFunction theta(Domain::half_plane, {{kI, 1}, {kTwoI, 1}});
  EXPECT_EQ(divisors(theta).size(), 4u);
  CheckReport rep = invariant_lattice(theta);
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(invariant_lattice(InnerFunction::blaschke(kI, 2)).passed);
}

TEST(Frozen, FactorIdentitiesForShift) {
  EXPECT_TRUE(factor_operator_checks(Symbol::inner(r()), r(), InnerFunction::blaschke(kI, 2)).passed);
}

TEST(Frozen, ImagesOfMonomials) {
  RationalFunction zn = 1.0;
  for (int n = 0; n <= 3; ++n) {
    RationalFunction v = v_map(zn);
    expect_same(v, [&](cplx x) { return std::pow(kI - x, n) / (std::sqrt(kPi) * std::pow(kI + x, n + 1)); }, 1e-12);
    zn *= RationalFunction::x();
  }
}

TEST(Frozen, DiagramForZeroAtOrigin) {
  InnerFunction theta = InnerFunction::blaschke(0.0, 1, Domain::disc);
  EXPECT_TRUE(diagram_check(Symbol(RationalFunction::x()), theta, theta).passed);
}
