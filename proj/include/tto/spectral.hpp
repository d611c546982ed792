#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tto/atto.hpp"
#include "tto/report.hpp"

namespace tto {

// G = [[conj(theta), 0], [g, alpha]].
struct MatrixSymbol {
  std::array<std::array<Symbol, 2>, 2> entries;
  std::string structure_tag = "lower_triangular";
};

MatrixSymbol matrix_symbol(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta);

struct KernelReport {
  std::vector<SpaceElement> null_basis;  // in the domain space
  int dimension = 0;
  std::optional<InnerFunction> predicted_gamma;
  int predicted_dimension = -1;
  double principal_angle_residual = 0;
  bool prediction_applied = false;
};

// SVD null space with threshold tol.rank * sigma_1 on orthonormal coordinates; the whole space
// when the Frobenius norm is below tol.zero_op.
KernelReport numeric_kernel(const AttoOperator& a);
// Orthonormal-coordinate basis of the numeric null space.
CMat numeric_null_space(const AttoOperator& a);

// Evaluates both sides of: g_plus phi_plus in theta H+  <=>  phi_plus in theta conj(beta) H+,
// beta = gcd(inner part of g_plus, theta). Returns whether the biconditional holds.
bool lemma_L_check(const RationalFunction& g_plus, const InnerFunction& theta, const RationalFunction& phi_plus,
                   const Tolerances& tol = {});
// Inner factor of an analytic rational function, with the zeros of the listed inner functions as hints.
InnerFunction inner_part(const RationalFunction& f, const std::vector<const InnerFunction*>& hints,
                         const Tolerances& tol = {});

// Predicted kernel K_{gamma,theta}, gamma = alpha / gcd(alpha, inner part of g_plus), cross-checked
// against the numeric kernel.
KernelReport analytic_kernel(const RationalFunction& g_plus, const InnerFunction& alpha, const InnerFunction& theta,
                             const Tolerances& tol = {});

// theta-bar phi1_plus = phi1_minus and g phi1_plus + alpha phi2_plus = phi2_minus, with the
// minus parts in H- and the plus parts in H+.
struct EquivalenceWitness {
  RationalFunction phi1_plus;
  RationalFunction phi2_plus;
  RationalFunction phi1_minus;
  RationalFunction phi2_minus;
};

struct WitnessResiduals {
  double phi1_plus = 0;   // content of phi1_plus outside H+
  double phi1_minus = 0;  // content of theta-bar phi1_plus outside H-
  double phi2_plus = 0;   // content of -alpha-bar P+(g phi1_plus) outside H+
  double phi2_minus = 0;  // content of P-(g phi1_plus) outside H-
  double equation = 0;    // g phi1_plus + alpha phi2_plus - phi2_minus on the line
  // Rounding level of the partial-fraction products above, on the same relative scale. Badly
  // scaled inputs cannot be checked below it.
  double rounding = 0;
  double max() const;
};

// Builds the witness for phi1_plus and measures each membership, relative to ||phi1_plus||.
EquivalenceWitness make_witness(const RationalFunction& phi1_plus, const RationalFunction& g,
                                const InnerFunction& alpha, const InnerFunction& theta, WitnessResiduals* res,
                                const Tolerances& tol = {});
// One witness per null-basis vector; throws WitnessInvalid naming the failing membership, and
// checks each first component against the numeric kernel.
std::vector<EquivalenceWitness> kernel_correspondence(const AttoOperator& a, const MatrixSymbol& g,
                                                      const Tolerances& tol = {});

// The factorization identities on rational test vectors; throw_on_failure raises IdentityFailure.
CheckReport factor_operator_checks(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta,
                                   const Tolerances& tol = {}, bool throw_on_failure = false);

// Invariance of every K_{alpha,theta} under the truncated shift, and for distinct zeros the match
// between eigenvector-subset spans and the divisors.
CheckReport invariant_lattice(const InnerFunction& theta, const Tolerances& tol = {});

// Krylov rank of k_i under A_r and of ktilde_i under A_{conj r}.
CheckReport cyclicity(const InnerFunction& theta, const Tolerances& tol = {});

}  // namespace tto
