#pragma once

#include <vector>

#include "tto/rational.hpp"
#include "tto/tolerances.hpp"
#include "tto/types.hpp"

namespace tto {

struct BlaschkeZero {
  cplx location;
  int multiplicity = 1;
};

// Finite Blaschke product. Half-plane factor (x - w)/(x - conj w); disc factor
// (|w|/w)(w - z)/(1 - conj(w) z), or z when w = 0. Zeros are kept merged and sorted.
class InnerFunction {
 public:
  InnerFunction() : InnerFunction(Domain::half_plane, {}) {}
  InnerFunction(Domain d, std::vector<BlaschkeZero> zeros, cplx phase = 1.0, const Tolerances& tol = {});

  static InnerFunction identity(Domain d = Domain::half_plane) { return InnerFunction(d, {}); }
  static InnerFunction blaschke(cplx zero, int multiplicity = 1, Domain d = Domain::half_plane) {
    return InnerFunction(d, {{zero, multiplicity}});
  }

  Domain domain() const { return domain_; }
  const std::vector<BlaschkeZero>& zeros() const { return zeros_; }
  cplx phase() const { return phase_; }
  int degree() const;
  bool is_identity() const { return zeros_.empty() && phase_ == cplx(1.0); }
  // Zeros expanded by multiplicity.
  std::vector<cplx> zero_list() const;

  cplx operator()(cplx z) const;
  // Multiplicity of z among the zeros (0 if absent), matching at tol.
  int multiplicity_of(cplx z, double tol = 1e-8) const;

  const RationalFunction& rational() const { return rational_; }
  // 1/f, which equals the boundary conjugate on the boundary.
  const RationalFunction& reciprocal() const { return reciprocal_; }
  // One rational per zero (repeated by multiplicity) and a trailing constant for the phase; their
  // product is rational(), or reciprocal() when reciprocal is set.
  std::vector<RationalFunction> factors(bool reciprocal = false) const;
  // Half-plane limit at infinity.
  cplx value_at_infinity() const;

  InnerFunction with_phase(cplx phase) const { return InnerFunction(domain_, zeros_, phase); }

 private:
  Domain domain_;
  std::vector<BlaschkeZero> zeros_;
  cplx phase_;
  RationalFunction rational_;
  RationalFunction reciprocal_;
};

cplx evaluate(const InnerFunction& f, cplx z);
InnerFunction multiply(const InnerFunction& f, const InnerFunction& g);
InnerFunction divide_exact(const InnerFunction& theta, const InnerFunction& alpha, const Tolerances& tol = {});
InnerFunction gcd(const InnerFunction& f, const InnerFunction& g, const Tolerances& tol = {});
bool divides(const InnerFunction& alpha, const InnerFunction& theta, const Tolerances& tol = {});
RationalFunction as_rational(const InnerFunction& f);
bool same_zeros(const InnerFunction& f, const InnerFunction& g, const Tolerances& tol = {});

// All divisors with phase 1, one per zero sub-multiset, in a fixed order.
std::vector<InnerFunction> divisors(const InnerFunction& theta);

// Blaschke product over the zeros of an analytic rational function in the open domain
// (upper half-plane or disc), i.e. its inner factor. Throws NotAnalytic if f has poles there.
InnerFunction inner_factor(const RationalFunction& f, Domain d = Domain::half_plane, const Tolerances& tol = {},
                           const std::vector<cplx>& hints = {});

}  // namespace tto
