#include "tto/symbol.hpp"

#include <cmath>

#include "tto/errors.hpp"

namespace tto {

Symbol::Symbol(RationalFunction g) {
  if (!g.is_zero()) terms_.push_back({1.0, {}, std::move(g)});
}

Symbol Symbol::inner(const InnerFunction& f, bool conjugated, std::string ref) {
  return Symbol(std::vector<SymbolTerm>{{1.0, {{f, conjugated, std::move(ref)}}, RationalFunction(1.0)}});
}

RationalFunction Symbol::flatten() const {
  RationalFunction out;
  for (const auto& t : terms_) {
    RationalFunction piece = t.rational * t.coeff;
    for (const auto& f : t.inner) piece = piece * (f.conjugated ? f.inner.reciprocal() : f.inner.rational());
    out += piece;
  }
  return out;
}

std::vector<std::vector<RationalFunction>> Symbol::factor_terms(Domain d, const Tolerances& tol) const {
  RationalFunction flat = flatten_bounded(d, tol);
  std::vector<std::vector<RationalFunction>> out;
  for (const auto& t : terms_) {
    if (t.coeff == cplx{} || t.rational.is_zero()) continue;
    for (const auto& p : t.rational.terms()) {
      double dist = d == Domain::half_plane ? std::abs(p.pole.imag()) : std::abs(std::abs(p.pole) - 1.0);
      if (dist <= tol.real) return {{flat}};
    }
    if (d == Domain::half_plane && t.rational.poly_degree() >= 1) return {{flat}};
    std::vector<RationalFunction> fs{t.rational * t.coeff};
    for (const auto& f : t.inner) {
      auto e = f.inner.factors(f.conjugated);
      fs.insert(fs.end(), e.begin(), e.end());
    }
    out.push_back(std::move(fs));
  }
  return out;
}

RationalFunction Symbol::flatten_bounded(Domain d, const Tolerances& tol) const {
  RationalFunction g = flatten();
  const double s = g.scale();
  // Terms such as (alpha(x0) conj(theta) - conj(theta(x0)) alpha)/(x - x0) cancel at x0 only up to rounding.
  g = g.filtered(
      [&](cplx p) {
        double dist = d == Domain::half_plane ? std::abs(p.imag()) : std::abs(std::abs(p) - 1.0);
        if (dist > tol.real) return true;
        const PoleTerm* t = g.find_pole(p);
        for (auto c : t->coeffs)
          if (std::abs(c) > 1e-10 * s) return true;
        return false;
      },
      true);
  check_boundary_poles(g, d, tol);
  if (d == Domain::half_plane) {
    g = g.reduced(1e-14);
    if (g.poly_degree() >= 1) {
      // Cancelled growth at infinity leaves rounding-level coefficients.
      std::vector<cplx> pc = g.poly_part().coeffs();
      for (size_t k = 1; k < pc.size(); ++k) {
        if (std::abs(pc[k]) > 1e-10 * std::max(1.0, s))
          throw MathError(ErrorKind::NotBounded, "symbol is unbounded at infinity");
        pc[k] = 0;
      }
      g = RationalFunction(Polynomial(pc), g.terms());
    }
  }
  return g;
}

Symbol Symbol::conjugate(Domain d) const {
  std::vector<SymbolTerm> ts;
  for (const auto& t : terms_) {
    SymbolTerm c{std::conj(t.coeff), t.inner, boundary_conj(t.rational, d)};
    for (auto& f : c.inner) f.conjugated = !f.conjugated;
    ts.push_back(std::move(c));
  }
  return Symbol(std::move(ts));
}

Symbol& Symbol::operator+=(const Symbol& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  std::vector<SymbolTerm> ts;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      SymbolTerm t{x.coeff * y.coeff, x.inner, x.rational * y.rational};
      t.inner.insert(t.inner.end(), y.inner.begin(), y.inner.end());
      ts.push_back(std::move(t));
    }
  return Symbol(std::move(ts));
}

Symbol operator*(Symbol a, cplx s) {
  for (auto& t : a.terms_) t.coeff *= s;
  return a;
}

}  // namespace tto
