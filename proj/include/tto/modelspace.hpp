#pragma once

#include <memory>
#include <vector>

#include "tto/inner.hpp"
#include "tto/rational.hpp"
#include "tto/tolerances.hpp"
#include "tto/types.hpp"

namespace tto {

// (x - pole)^{-order}, or z^{order-1} for the disc zero at the origin.
struct BasisEntry {
  cplx pole;
  int order = 1;
  bool monomial = false;
};

// K_theta with the partial-fraction basis over the conjugated zeros (half-plane) or the
// reflected zeros 1/conj(a) (disc), and the Gram matrix G(i,j) = <e_j, e_i>.
class ModelSpace {
 public:
  // Degree 0 gives the zero space when allow_trivial is set, DegenerateSpace otherwise.
  ModelSpace(InnerFunction theta, const Tolerances& tol, bool allow_trivial);

  const InnerFunction& theta() const { return theta_; }
  Domain domain() const { return theta_.domain(); }
  int dim() const { return static_cast<int>(entries_.size()); }
  const std::vector<BasisEntry>& entries() const { return entries_; }
  const std::vector<RationalFunction>& basis() const { return basis_; }
  const CMat& gram() const { return gram_; }
  const CMat& chol_lower() const { return chol_; }
  double condition() const { return cond_; }
  const Tolerances& tolerances() const { return tol_; }
  double tol_proj() const { return tol_.proj_for(cond_); }

  RationalFunction combine(const CVec& coords) const;
  // Reads coordinates from the partial fractions of f. off_basis receives the size of the
  // content outside the span, relative to f's largest coefficient.
  CVec coordinates(const RationalFunction& f, double* off_basis = nullptr) const;
  bool contains(const RationalFunction& f, double rel) const;
  // Solves G c = rhs.
  CVec gram_solve(const CVec& rhs) const;
  double norm(const CVec& coords) const;
  // Orthonormal coordinates of the projection of f, from the inner products <f, e_i>. Avoids
  // partial-fraction coordinates, which lose accuracy when the basis is ill-conditioned.
  CVec orthonormal_of(const RationalFunction& f) const;
  // L^H M: coordinates of a coordinate block in an orthonormal basis of the space.
  CMat to_orthonormal(const CMat& coords) const;
  CMat from_orthonormal(const CMat& coords) const;

 private:
  InnerFunction theta_;
  Tolerances tol_;
  std::vector<BasisEntry> entries_;
  std::vector<RationalFunction> basis_;
  CMat gram_;
  CMat chol_;
  double cond_ = 1.0;
};

using SpacePtr = std::shared_ptr<const ModelSpace>;

SpacePtr make_space(const InnerFunction& theta, const Tolerances& tol = {});
// Same, but degree 0 yields the zero space.
SpacePtr make_space_or_zero(const InnerFunction& theta, const Tolerances& tol = {});

struct SpaceElement {
  SpacePtr space;
  CVec coords;
  RationalFunction rational;
};

SpaceElement make_element(const SpacePtr& space, const CVec& coords);
// Coordinates of f in the space; throws FormulaMismatch if f is not in it within rel.
SpaceElement element_of(const SpacePtr& space, const RationalFunction& f, double rel);

// P+ theta P- conj(theta) f and theta P- conj(theta) P+ f. f must be square integrable.
RationalFunction apply_projection(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol = {});
RationalFunction apply_projection_alt(const InnerFunction& theta, const RationalFunction& f,
                                      const Tolerances& tol = {});

struct ProjectionDiagnostics {
  double formula_residual = 0;  // between the two projection formulas, relative to ||f||
  double gram_residual = 0;     // partial-fraction coordinates vs the Gram solve, relative
  double off_basis = 0;
};

// P_theta f with both formulas and a Gram cross-check; throws FormulaMismatch beyond tol_proj.
SpaceElement project_theta(const SpacePtr& space, const RationalFunction& f, ProjectionDiagnostics* diag = nullptr);
SpaceElement project_theta(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol = {});
// Fast path: the first formula only.
SpaceElement project_fast(const SpacePtr& space, const RationalFunction& f);

// Q_theta f = P+ f - P_theta f.
RationalFunction q_theta(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol = {});

// (1 - conj(theta(w)) theta) / (x - conj w); on the disc (1 - conj(theta(w)) theta) / (1 - conj(w) z).
// With <f, g> = integral f conj(g), <f, k_w> = 2 pi i f(w) on the half-plane and f(w) on the disc.
SpaceElement kernel_k(const InnerFunction& theta, cplx w, const Tolerances& tol = {});
// (theta - theta(w)) / (x - w).
SpaceElement kernel_ktilde(const InnerFunction& theta, cplx w, const Tolerances& tol = {});
// theta * conj(P_theta f).
SpaceElement conjugation_C(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol = {});
SpaceElement conjugation_C(const SpacePtr& space, const RationalFunction& f);

// K_{alpha,theta} = alpha K_{theta/alpha} inside K_theta.
struct ShiftedSpace {
  SpacePtr ambient;   // K_theta
  InnerFunction shift;  // alpha
  SpacePtr quotient;  // K_{theta/alpha}, possibly zero-dimensional
  std::vector<RationalFunction> basis;  // alpha times the quotient basis
  CMat embedding;     // K_theta coordinates of the basis, dim(theta) x dim(quotient)
  CMat projection;    // P_theta - P_alpha on K_theta coordinates
  double formula_residual = 0;  // the two projection formulas, Frobenius, relative
};

ShiftedSpace shifted_space(const InnerFunction& alpha, const InnerFunction& theta, const Tolerances& tol = {});

}  // namespace tto
