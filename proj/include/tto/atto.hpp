#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tto/inner.hpp"
#include "tto/modelspace.hpp"
#include "tto/report.hpp"
#include "tto/symbol.hpp"
#include "tto/tolerances.hpp"

namespace tto {

enum class OperatorKind { A, B, defect, composite };

// Matrix of P_alpha g P_theta (or P_{alpha,theta} g P_theta) from K_theta coordinates to
// codomain coordinates. For B the codomain basis is shift * codomain->basis().
struct AttoOperator {
  CMat matrix;
  SpacePtr domain;
  SpacePtr codomain;
  std::optional<InnerFunction> codomain_shift;
  Symbol symbol;
  OperatorKind kind = OperatorKind::A;
  double consistency = 0;  // disagreement between independent constructions, when there are two
  // Orthonormal-basis matrix assembled from inner products <g e_j, f_i>; empty when not built.
  // It avoids the cancellation in partial-fraction coordinates of ill-conditioned bases.
  CMat gram_route;

  // The same operator between orthonormal bases.
  CMat orthonormal() const;
  // Coordinates of the Hilbert adjoint, codomain to domain.
  CMat adjoint_matrix() const;
  double frobenius() const { return orthonormal().norm(); }
  RationalFunction codomain_element(const CVec& coords) const;
};

enum class BuildMode { checked, fast };

AttoOperator build_A(const Symbol& g, const SpacePtr& codomain, const SpacePtr& domain,
                     BuildMode mode = BuildMode::checked);
AttoOperator build_A(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta,
                     const Tolerances& tol = {}, BuildMode mode = BuildMode::checked);
// Built as P_{alpha,theta} g P_theta and as alpha A^{theta/alpha, theta}_{conj(alpha) g}; throws
// FormulaMismatch when they disagree beyond tol.op.
AttoOperator build_B(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta,
                     const Tolerances& tol = {});

// L_c^{-1} S L_d^{-H} for S(i, j) = <T e_j, f_i>: the orthonormal-basis matrix of T.
CMat orthonormal_from_inner(const CMat& s, const ModelSpace& codomain, const ModelSpace& domain);
// Inclusion of from into to between orthonormal bases.
CMat embedding_orthonormal(const ModelSpace& from, const ModelSpace& to);
// C_theta on orthonormal coordinates: x maps to Co * conj(x).
CMat conjugation_orthonormal(const SpacePtr& space);

// Frobenius norm of a coordinate matrix measured between orthonormal bases.
double frobenius_between(const CMat& m, const ModelSpace& codomain, const ModelSpace& domain);
// Coordinates of from's basis inside to (requires from's theta to divide to's).
CMat embedding_matrix(const ModelSpace& from, const ModelSpace& to);
// Column j: coordinates of C_theta e_j; C acts on coordinates x as C * conj(x).
CMat conjugation_matrix(const SpacePtr& space);

// g = conj(theta) minus + alpha plus with minus/(x - i) in H-, plus/(x + i) in H+.
struct ZeroSplit {
  RationalFunction minus;
  RationalFunction plus;
};

struct ZeroSymbolResult {
  bool zero = false;
  double norm = 0;
  std::string certificate;  // split-verified, split-invalid, matrix-only, nonzero
};

Symbol symbol_from_split(const ZeroSplit& split, const InnerFunction& alpha, const InnerFunction& theta);
ZeroSymbolResult is_zero_symbol(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta,
                                const std::optional<ZeroSplit>& split = std::nullopt, const Tolerances& tol = {});
// Recovers a split of a half-plane rational symbol when one exists.
std::optional<ZeroSplit> extract_zero_split(const RationalFunction& g, const InnerFunction& alpha,
                                            const InnerFunction& theta, const Tolerances& tol = {});

enum class RankOneKind { F2a, F2b, F4, F6 };
struct RankOneParams {
  cplx z_plus = kI;  // pole parameter in the upper half-plane
  double xi0 = 0.0;  // real point
};

const char* to_string(RankOneKind k);
Symbol rank_one_symbol(RankOneKind kind, const RankOneParams& p, const InnerFunction& alpha,
                       const InnerFunction& theta);
// Rank test plus the closed-form action on k_w for each test point w.
CheckReport verify_rank_one_action(RankOneKind kind, const RankOneParams& p, const InnerFunction& alpha,
                                   const InnerFunction& theta, const std::vector<cplx>& test_points,
                                   const Tolerances& tol = {});

enum class FiniteRankKind { pole_alpha, pole_theta, boundary, infinity };
Symbol finite_rank_symbol(FiniteRankKind kind, int n, const RankOneParams& p, const InnerFunction& alpha,
                          const InnerFunction& theta);

struct DefectResult {
  CMat right;  // on K_alpha coordinates
  CMat left;   // on K_theta coordinates
  CheckReport report;
};
DefectResult defect_operators(const InnerFunction& alpha, const InnerFunction& theta, const Tolerances& tol = {});

CheckReport analytic_identities_check(const RationalFunction& g_plus, const RationalFunction& f_plus,
                                      const InnerFunction& alpha, const InnerFunction& beta,
                                      const InnerFunction& theta, const Tolerances& tol = {});

// Drops the pole at x0 of f, which the caller knows to be removable.
RationalFunction drop_pole(const RationalFunction& f, cplx x0);

}  // namespace tto
