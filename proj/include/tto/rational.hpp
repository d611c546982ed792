#pragma once

#include <functional>
#include <vector>

#include "tto/polynomial.hpp"
#include "tto/tolerances.hpp"
#include "tto/types.hpp"

namespace tto {

// coeffs[k-1] multiplies (x - pole)^{-k}.
struct PoleTerm {
  cplx pole;
  std::vector<cplx> coeffs;
  int order() const { return static_cast<int>(coeffs.size()); }
};

// Complex rational function held in partial-fraction form: a polynomial part plus principal
// parts at finitely many poles. Poles closer than pole_merge_tol (relative) are identified.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(cplx constant);  // NOLINT(google-explicit-constructor)
  RationalFunction(double constant) : RationalFunction(cplx(constant)) {}  // NOLINT(google-explicit-constructor)
  explicit RationalFunction(Polynomial p);
  RationalFunction(Polynomial p, std::vector<PoleTerm> terms);

  // coeff * (x - p)^{-order}
  static RationalFunction pole(cplx p, int order = 1, cplx coeff = 1.0);
  static RationalFunction x();
  // lead * prod (x - zeros) / prod (x - poles), cancelling coincident zero/pole pairs.
  static RationalFunction from_roots(cplx lead, std::vector<cplx> zeros, std::vector<cplx> poles);
  // num / den with den roots clustered at tol.
  static RationalFunction from_coefficients(const Polynomial& num, const Polynomial& den, double tol = 1e-8);

  static constexpr double pole_merge_tol = 1e-8;

  const Polynomial& poly_part() const { return poly_; }
  const std::vector<PoleTerm>& terms() const { return terms_; }
  bool is_zero() const { return poly_.is_zero() && terms_.empty(); }
  // Degree of the polynomial part, -1 when the function decays at infinity.
  int poly_degree() const { return poly_.degree(); }
  bool decays() const { return poly_.is_zero(); }
  double scale() const;

  cplx operator()(cplx z) const;
  // Limit at infinity; throws NotBounded if the polynomial part is non-constant.
  cplx value_at_infinity() const;

  const PoleTerm* find_pole(cplx p) const;
  int pole_order(cplx p) const;
  cplx pole_coeff(cplx p, int k) const;

  // Coefficients of (z-z0)^n for n = lo..hi. z0 may be a pole.
  std::vector<cplx> laurent(cplx z0, int lo, int hi) const;
  std::vector<cplx> taylor(cplx z0, int n) const { return laurent(z0, 0, n - 1); }
  // Coefficients of x^j for j = top, top-1, ..., bottom.
  std::vector<cplx> at_infinity(int top, int bottom) const;

  // Drops coefficients below rel * scale() and empty pole terms.
  RationalFunction reduced(double rel) const;
  RationalFunction filtered(const std::function<bool(cplx)>& keep_pole, bool keep_poly) const;

  Polynomial numerator() const;    // relative to the monic denominator
  Polynomial denominator() const;  // monic, product over poles
  std::vector<Root> zeros(double tol = 1e-8) const;

  // f*(z) = conj(f(conj z)); on the real line this is the pointwise conjugate.
  RationalFunction conj_reflect() const;
  // f((a x + b) / (c x + d)), ad - bc != 0.
  RationalFunction compose_mobius(cplx a, cplx b, cplx c, cplx d) const;
  RationalFunction reciprocal(double tol = 1e-8) const;
  RationalFunction derivative() const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(cplx s);
  RationalFunction& operator*=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(RationalFunction a, cplx s) { return a *= s; }
  friend RationalFunction operator*(cplx s, RationalFunction a) { return a *= s; }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.reciprocal();
  }
  RationalFunction operator-() const { return *this * cplx(-1.0); }

 private:
  void normalize();
  Polynomial poly_;
  std::vector<PoleTerm> terms_;
};

// Pole-location split: plus has poles off the closed domain's interior side (analytic inside),
// minus has poles inside, constant is the value at infinity (half-plane only; the disc keeps
// the whole polynomial part in plus).
struct RieszSplit {
  RationalFunction plus;
  RationalFunction minus;
  cplx constant{};
};

RieszSplit riesz_split(const RationalFunction& f, Domain d = Domain::half_plane, const Tolerances& tol = {});
// P+ and P- of an L2 function (no constant term on the half-plane).
RationalFunction riesz_plus(const RationalFunction& f, Domain d = Domain::half_plane, const Tolerances& tol = {});
RationalFunction riesz_minus(const RationalFunction& f, Domain d = Domain::half_plane, const Tolerances& tol = {});

enum class WeightVariant { x_plus_i, x_minus_i };
// x_plus_i: G± = (x+i) P±[g/(x+i)]; x_minus_i: g± = (x-i) P±[g/(x-i)]. Returns {plus, minus}.
std::pair<RationalFunction, RationalFunction> weighted_split(const RationalFunction& g, WeightVariant v,
                                                             const Tolerances& tol = {});

enum class HardySign { plus, minus };
// f / (x ± i) decays and has poles only in the opposite half-plane.
bool in_weighted_hardy(const RationalFunction& f, HardySign sign, const Tolerances& tol = {});

// Boundary conjugate extended rationally: conj_reflect on the line, conj(f(1/conj z)) on the circle.
RationalFunction boundary_conj(const RationalFunction& f, Domain d);

// Throws RealPole / PoleOnBoundary if a pole lies within tol.real of the boundary.
void check_boundary_poles(const RationalFunction& f, Domain d, const Tolerances& tol = {});
bool is_boundary_bounded(const RationalFunction& f, Domain d, const Tolerances& tol = {});

// Integral of the product over the line (half-plane) or (1/2pi) times the integral over the circle,
// by residues taken factor by factor. The half-plane integrand must decay like x^-2.
cplx boundary_integral(std::vector<RationalFunction> factors, Domain d, const Tolerances& tol = {});
// Integral of f conj(g) over the line, by residues in the upper half-plane.
cplx l2_inner(const RationalFunction& f, const RationalFunction& g, const Tolerances& tol = {});
// (1/2pi) integral of f conj(g) over the circle, by residues inside the disc.
cplx disc_inner(const RationalFunction& f, const RationalFunction& g, const Tolerances& tol = {});
cplx inner_product(const RationalFunction& f, const RationalFunction& g, Domain d, const Tolerances& tol = {});
double l2_norm(const RationalFunction& f, Domain d = Domain::half_plane, const Tolerances& tol = {});

// Adaptive Gauss-Kronrod over the whole line, independent of the residue code.
cplx quadrature_oracle(const RationalFunction& f, const RationalFunction& g, const Tolerances& tol = {});

// Multiplicity of z as a zero of f, judged on Taylor coefficients relative to their size.
int zero_order(const RationalFunction& f, cplx z, double rel = 1e-9);

// Size of f on the boundary: L2 norm when integrable, otherwise the max over a fixed sample grid.
double boundary_size(const RationalFunction& f, Domain d, const Tolerances& tol = {});

}  // namespace tto
