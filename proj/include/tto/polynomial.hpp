#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "tto/types.hpp"

namespace tto {

// Dense complex polynomial, coefficients in ascending degree. Trailing zeros are trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<cplx> coeffs) : Polynomial(std::vector<cplx>(coeffs)) {}
  Polynomial(cplx constant);  // NOLINT(google-explicit-constructor)
  Polynomial(double constant) : Polynomial(cplx(constant)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial monomial(int degree, cplx c = 1.0);
  static Polynomial from_roots(cplx lead, const std::vector<cplx>& roots);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx operator[](int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx{}; }
  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }
  double max_abs() const;

  cplx operator()(cplx z) const;
  Polynomial derivative() const;
  // Coefficients of p(z + u) in powers of u, first n of them.
  std::vector<cplx> shifted(cplx z, int n) const;
  // Drops coefficients below rel * max_abs().
  Polynomial trimmed(double rel) const;

  // Quotient and remainder; throws on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return *this * cplx(-1.0); }

 private:
  void trim();
  std::vector<cplx> c_;
};

struct Root {
  cplx value;
  int multiplicity = 1;
};

// Eigenvalues of the companion matrix.
std::vector<cplx> roots(const Polynomial& p);
// Roots grouped into clusters of diameter about tol; each cluster is reported by its centroid.
std::vector<Root> clustered_roots(const Polynomial& p, double tol);

}  // namespace tto
