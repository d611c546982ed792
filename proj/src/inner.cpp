#include "tto/inner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tto/errors.hpp"

namespace tto {

namespace {

bool inside(Domain d, cplx z) { return d == Domain::half_plane ? z.imag() > 0 : std::abs(z) < 1.0; }

std::string describe(cplx z) {
  std::ostringstream os;
  os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  return os.str();
}

void require_same_domain(const InnerFunction& f, const InnerFunction& g) {
  if (f.domain() != g.domain()) throw MathError(ErrorKind::DomainMismatch, "inner functions on different domains");
}

}  // namespace

InnerFunction::InnerFunction(Domain d, std::vector<BlaschkeZero> zeros, cplx phase, const Tolerances& tol)
    : domain_(d), phase_(phase) {
  if (std::abs(std::abs(phase) - 1.0) > tol.unimod)
    throw MathError(ErrorKind::InvalidInner, "phase is not unimodular");
  for (const auto& z : zeros) {
    if (z.multiplicity < 1) throw MathError(ErrorKind::InvalidInner, "zero multiplicity must be positive");
    if (!inside(d, z.location))
      throw MathError(ErrorKind::InvalidInner, "zero " + describe(z.location) + " is not inside the domain");
    auto it = std::find_if(zeros_.begin(), zeros_.end(),
                           [&](const BlaschkeZero& m) { return std::abs(m.location - z.location) <= tol.zero; });
    if (it == zeros_.end())
      zeros_.push_back(z);
    else
      it->multiplicity += z.multiplicity;
  }
  std::sort(zeros_.begin(), zeros_.end(), [](const BlaschkeZero& a, const BlaschkeZero& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });

  cplx lead = phase_;
  std::vector<cplx> zs, ps;
  for (const auto& z : zeros_) {
    for (int k = 0; k < z.multiplicity; ++k) {
      zs.push_back(z.location);
      if (d == Domain::half_plane) {
        ps.push_back(std::conj(z.location));
      } else if (z.location != cplx{}) {
        lead /= std::abs(z.location);
        ps.push_back(1.0 / std::conj(z.location));
      }
    }
  }
  rational_ = RationalFunction::from_roots(lead, zs, ps);
  reciprocal_ = RationalFunction::from_roots(1.0 / lead, ps, zs);
}

std::vector<RationalFunction> InnerFunction::factors(bool reciprocal) const {
  std::vector<RationalFunction> out;
  cplx lead = phase_;
  for (const auto& z : zeros_) {
    cplx w = z.location;
    cplx p = domain_ == Domain::half_plane ? std::conj(w) : (w == cplx{} ? cplx{} : 1.0 / std::conj(w));
    double c = domain_ == Domain::disc && w != cplx{} ? 1.0 / std::abs(w) : 1.0;
    std::vector<cplx> top{w}, bottom;
    if (domain_ == Domain::half_plane || w != cplx{}) bottom.push_back(p);
    for (int k = 0; k < z.multiplicity; ++k)
      out.push_back(reciprocal ? RationalFunction::from_roots(1.0 / c, bottom, top)
                               : RationalFunction::from_roots(c, top, bottom));
  }
  out.emplace_back(reciprocal ? 1.0 / lead : lead);
  return out;
}

int InnerFunction::degree() const {
  int n = 0;
  for (const auto& z : zeros_) n += z.multiplicity;
  return n;
}

std::vector<cplx> InnerFunction::zero_list() const {
  std::vector<cplx> out;
  for (const auto& z : zeros_)
    for (int k = 0; k < z.multiplicity; ++k) out.push_back(z.location);
  return out;
}

cplx InnerFunction::operator()(cplx z) const {
  cplx acc = phase_;
  for (const auto& zero : zeros_) {
    const cplx w = zero.location;
    cplx factor;
    if (domain_ == Domain::half_plane) {
      cplx den = z - std::conj(w);
      if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(w)))
        throw MathError(ErrorKind::PoleAtPoint, "evaluation at the pole " + describe(std::conj(w)));
      factor = (z - w) / den;
    } else if (w == cplx{}) {
      factor = z;
    } else {
      cplx den = 1.0 - std::conj(w) * z;
      if (std::abs(den) <= 1e-14) throw MathError(ErrorKind::PoleAtPoint, "evaluation at a pole");
      factor = (std::abs(w) / w) * (w - z) / den;
    }
    for (int k = 0; k < zero.multiplicity; ++k) acc *= factor;
  }
  return acc;
}

int InnerFunction::multiplicity_of(cplx z, double tol) const {
  for (const auto& zero : zeros_)
    if (std::abs(zero.location - z) <= tol) return zero.multiplicity;
  return 0;
}

cplx InnerFunction::value_at_infinity() const {
  if (domain_ == Domain::half_plane) return phase_;
  return rational_.value_at_infinity();
}

cplx evaluate(const InnerFunction& f, cplx z) { return f(z); }

InnerFunction multiply(const InnerFunction& f, const InnerFunction& g) {
  require_same_domain(f, g);
  std::vector<BlaschkeZero> zs = f.zeros();
  zs.insert(zs.end(), g.zeros().begin(), g.zeros().end());
  cplx ph = f.phase() * g.phase();
  return InnerFunction(f.domain(), zs, ph / std::abs(ph));
}

InnerFunction divide_exact(const InnerFunction& theta, const InnerFunction& alpha, const Tolerances& tol) {
  require_same_domain(theta, alpha);
  std::vector<BlaschkeZero> rest = theta.zeros();
  for (const auto& z : alpha.zeros()) {
    auto it = std::find_if(rest.begin(), rest.end(),
                           [&](const BlaschkeZero& m) { return std::abs(m.location - z.location) <= tol.zero; });
    if (it == rest.end() || it->multiplicity < z.multiplicity)
      throw MathError(ErrorKind::NotADivisor, "zero " + describe(z.location) + " exceeds the dividend's multiplicity");
    it->multiplicity -= z.multiplicity;
  }
  rest.erase(std::remove_if(rest.begin(), rest.end(), [](const BlaschkeZero& z) { return z.multiplicity == 0; }),
             rest.end());
  cplx ph = theta.phase() / alpha.phase();
  return InnerFunction(theta.domain(), rest, ph / std::abs(ph));
}

InnerFunction gcd(const InnerFunction& f, const InnerFunction& g, const Tolerances& tol) {
  require_same_domain(f, g);
  std::vector<BlaschkeZero> common;
  for (const auto& z : f.zeros()) {
    int m = std::min(z.multiplicity, g.multiplicity_of(z.location, tol.zero));
    if (m > 0) common.push_back({z.location, m});
  }
  return InnerFunction(f.domain(), common);
}

bool divides(const InnerFunction& alpha, const InnerFunction& theta, const Tolerances& tol) {
  if (alpha.domain() != theta.domain()) return false;
  for (const auto& z : alpha.zeros())
    if (theta.multiplicity_of(z.location, tol.zero) < z.multiplicity) return false;
  return true;
}

bool same_zeros(const InnerFunction& f, const InnerFunction& g, const Tolerances& tol) {
  return divides(f, g, tol) && divides(g, f, tol);
}

RationalFunction as_rational(const InnerFunction& f) { return f.rational(); }

std::vector<InnerFunction> divisors(const InnerFunction& theta) {
  const auto& zs = theta.zeros();
  std::vector<InnerFunction> out;
  std::vector<int> m(zs.size(), 0);
  while (true) {
    std::vector<BlaschkeZero> pick;
    for (size_t j = 0; j < zs.size(); ++j)
      if (m[j] > 0) pick.push_back({zs[j].location, m[j]});
    out.emplace_back(theta.domain(), pick);
    size_t j = 0;
    while (j < zs.size() && m[j] == zs[j].multiplicity) m[j++] = 0;
    if (j == zs.size()) break;
    ++m[j];
  }
  return out;
}

InnerFunction inner_factor(const RationalFunction& f, Domain d, const Tolerances& tol, const std::vector<cplx>& hints) {
  if (f.is_zero()) throw MathError(ErrorKind::ZeroSymbol, "inner factor of the zero function");
  for (const auto& t : f.terms())
    if (inside(d, t.pole)) throw MathError(ErrorKind::NotAnalytic, "function has a pole inside the domain");
  std::vector<cplx> roots;
  for (const auto& r : f.zeros(1e-5))
    if (inside(d, r.value)) roots.insert(roots.end(), r.multiplicity, r.value);
  std::vector<BlaschkeZero> zs;
  for (cplx h : hints) {
    if (!inside(d, h)) continue;
    bool dup = std::any_of(zs.begin(), zs.end(), [&](const BlaschkeZero& z) { return std::abs(z.location - h) <= tol.zero; });
    if (dup) continue;
    int m = zero_order(f, h);
    if (m <= 0) continue;
    zs.push_back({h, m});
    // A root of order m comes back from the root finder as a cluster of m nearby roots; drop the m
    // nearest.
    std::sort(roots.begin(), roots.end(), [&](cplx a, cplx b) { return std::abs(a - h) < std::abs(b - h); });
    roots.erase(roots.begin(), roots.begin() + std::min<std::ptrdiff_t>(m, static_cast<std::ptrdiff_t>(roots.size())));
  }
  for (cplx r : roots) zs.push_back({r, 1});
  return InnerFunction(d, zs);
}

}  // namespace tto
