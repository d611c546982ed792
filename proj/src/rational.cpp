#include "tto/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tto/errors.hpp"

namespace tto {

namespace {

constexpr double kPruneRel = 1e-14;

bool same_point(cplx a, cplx b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// First n coefficients of (c + u)^e in powers of u.
std::vector<cplx> binomial_series(cplx c, int e, int n) {
  std::vector<cplx> s(std::max(n, 0), cplx{});
  if (n <= 0) return s;
  if (c == cplx{}) {
    if (e < 0) throw MathError(ErrorKind::PoleAtPoint, "expansion about a pole");
    if (e < n) s[e] = 1.0;
    return s;
  }
  s[0] = std::pow(c, e);
  for (int j = 0; j + 1 < n; ++j) s[j + 1] = s[j] * (static_cast<double>(e - j) / (j + 1)) / c;
  return s;
}

std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, int n) {
  std::vector<cplx> out(n, cplx{});
  for (int i = 0; i < n && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j < n && j < static_cast<int>(b.size()); ++j) out[i + j] += a[i] * b[j];
  return out;
}

struct Multi {
  cplx point;
  int mult;
};

std::vector<Multi> group_points(const std::vector<cplx>& pts, double tol) {
  std::vector<Multi> out;
  std::vector<int> count;
  std::vector<cplx> sum;
  for (cplx p : pts) {
    bool placed = false;
    for (size_t k = 0; k < out.size(); ++k) {
      if (same_point(out[k].point, p, tol)) {
        sum[k] += p;
        ++count[k];
        out[k].point = sum[k] / static_cast<double>(count[k]);
        ++out[k].mult;
        placed = true;
        break;
      }
    }
    if (!placed) {
      out.push_back({p, 1});
      count.push_back(1);
      sum.push_back(p);
    }
  }
  return out;
}

}  // namespace

RationalFunction::RationalFunction(cplx constant) : poly_(constant) {}

RationalFunction::RationalFunction(Polynomial p) : poly_(std::move(p)) {}

RationalFunction::RationalFunction(Polynomial p, std::vector<PoleTerm> terms)
    : poly_(std::move(p)), terms_(std::move(terms)) {
  normalize();
}

RationalFunction RationalFunction::pole(cplx p, int order, cplx coeff) {
  PoleTerm t{p, std::vector<cplx>(order, cplx{})};
  t.coeffs[order - 1] = coeff;
  return RationalFunction(Polynomial{}, {t});
}

RationalFunction RationalFunction::x() { return RationalFunction(Polynomial::monomial(1)); }

void RationalFunction::normalize() {
  // Merge coincident poles.
  std::vector<PoleTerm> merged;
  for (auto& t : terms_) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const PoleTerm& m) { return same_point(m.pole, t.pole, pole_merge_tol); });
    if (it == merged.end()) {
      merged.push_back(std::move(t));
    } else {
      if (t.coeffs.size() > it->coeffs.size()) it->coeffs.resize(t.coeffs.size(), cplx{});
      for (size_t k = 0; k < t.coeffs.size(); ++k) it->coeffs[k] += t.coeffs[k];
    }
  }
  terms_ = std::move(merged);
  double s = scale();
  double cut = kPruneRel * s;
  std::vector<cplx> pc = poly_.coeffs();
  for (auto& z : pc)
    if (std::abs(z) <= cut) z = cplx{};
  poly_ = Polynomial(std::move(pc));
  for (auto& t : terms_) {
    while (!t.coeffs.empty() && std::abs(t.coeffs.back()) <= cut) t.coeffs.pop_back();
    for (auto& z : t.coeffs)
      if (std::abs(z) <= cut) z = cplx{};
  }
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const PoleTerm& t) { return t.coeffs.empty(); }),
               terms_.end());
}

double RationalFunction::scale() const {
  double s = poly_.max_abs();
  for (const auto& t : terms_)
    for (auto z : t.coeffs) s = std::max(s, std::abs(z));
  return s;
}

cplx RationalFunction::operator()(cplx z) const {
  cplx acc = poly_(z);
  for (const auto& t : terms_) {
    cplx d = z - t.pole;
    if (d == cplx{}) throw MathError(ErrorKind::PoleAtPoint, "evaluation at a pole");
    cplx inv = 1.0 / d, pw = inv;
    for (auto c : t.coeffs) {
      acc += c * pw;
      pw *= inv;
    }
  }
  return acc;
}

cplx RationalFunction::value_at_infinity() const {
  if (poly_.degree() >= 1) throw MathError(ErrorKind::NotBounded, "function grows at infinity");
  return poly_[0];
}

const PoleTerm* RationalFunction::find_pole(cplx p) const {
  for (const auto& t : terms_)
    if (same_point(t.pole, p, pole_merge_tol)) return &t;
  return nullptr;
}

int RationalFunction::pole_order(cplx p) const {
  const PoleTerm* t = find_pole(p);
  return t ? t->order() : 0;
}

cplx RationalFunction::pole_coeff(cplx p, int k) const {
  const PoleTerm* t = find_pole(p);
  if (!t || k < 1 || k > t->order()) return {};
  return t->coeffs[k - 1];
}

std::vector<cplx> RationalFunction::laurent(cplx z0, int lo, int hi) const {
  std::vector<cplx> out(std::max(hi - lo + 1, 0), cplx{});
  if (hi < lo) return out;
  const PoleTerm* own = find_pole(z0);
  const int nreg = hi + 1;
  if (nreg > 0) {
    auto s = poly_.shifted(z0, nreg);
    for (int n = std::max(lo, 0); n <= hi; ++n) out[n - lo] += s[n];
    for (const auto& t : terms_) {
      if (&t == own) continue;
      cplx d = z0 - t.pole;
      for (int k = 1; k <= t.order(); ++k) {
        if (t.coeffs[k - 1] == cplx{}) continue;
        auto b = binomial_series(d, -k, nreg);
        for (int n = std::max(lo, 0); n <= hi; ++n) out[n - lo] += t.coeffs[k - 1] * b[n];
      }
    }
  }
  if (own) {
    for (int k = 1; k <= own->order(); ++k) {
      int n = -k;
      if (n >= lo && n <= hi) out[n - lo] += own->coeffs[k - 1];
    }
  }
  return out;
}

std::vector<cplx> RationalFunction::at_infinity(int top, int bottom) const {
  std::vector<cplx> out(std::max(top - bottom + 1, 0), cplx{});
  for (int j = std::max(bottom, 0); j <= top; ++j) out[top - j] += poly_[j];
  for (const auto& t : terms_) {
    for (int k = 1; k <= t.order(); ++k) {
      cplx a = t.coeffs[k - 1];
      if (a == cplx{}) continue;
      // a (x-p)^{-k} = a sum_n C(k+n-1, n) p^n x^{-k-n}
      cplx c = a;
      for (int n = 0;; ++n) {
        int j = -k - n;
        if (j < bottom) break;
        if (j <= top) out[top - j] += c;
        c *= t.pole * (static_cast<double>(k + n) / (n + 1));
      }
    }
  }
  return out;
}

RationalFunction RationalFunction::reduced(double rel) const {
  double cut = rel * scale();
  std::vector<cplx> pc = poly_.coeffs();
  for (auto& z : pc)
    if (std::abs(z) <= cut) z = cplx{};
  std::vector<PoleTerm> ts = terms_;
  for (auto& t : ts) {
    for (auto& z : t.coeffs)
      if (std::abs(z) <= cut) z = cplx{};
    while (!t.coeffs.empty() && t.coeffs.back() == cplx{}) t.coeffs.pop_back();
  }
  return RationalFunction(Polynomial(std::move(pc)), std::move(ts));
}

RationalFunction RationalFunction::filtered(const std::function<bool(cplx)>& keep_pole, bool keep_poly) const {
  std::vector<PoleTerm> ts;
  for (const auto& t : terms_)
    if (keep_pole(t.pole)) ts.push_back(t);
  return RationalFunction(keep_poly ? poly_ : Polynomial{}, std::move(ts));
}

Polynomial RationalFunction::denominator() const {
  std::vector<cplx> rts;
  for (const auto& t : terms_)
    for (int k = 0; k < t.order(); ++k) rts.push_back(t.pole);
  return Polynomial::from_roots(1.0, rts);
}

Polynomial RationalFunction::numerator() const {
  Polynomial num = poly_ * denominator();
  for (size_t i = 0; i < terms_.size(); ++i) {
    Polynomial others(1.0);
    for (size_t j = 0; j < terms_.size(); ++j) {
      if (j == i) continue;
      others = others * Polynomial::from_roots(1.0, std::vector<cplx>(terms_[j].order(), terms_[j].pole));
    }
    const auto& t = terms_[i];
    for (int k = 1; k <= t.order(); ++k) {
      Polynomial piece = Polynomial::from_roots(t.coeffs[k - 1], std::vector<cplx>(t.order() - k, t.pole));
      num += piece * others;
    }
  }
  return num;
}

std::vector<Root> RationalFunction::zeros(double tol) const {
  return clustered_roots(numerator().trimmed(1e-14), tol);
}

RationalFunction RationalFunction::from_roots(cplx lead, std::vector<cplx> zeros, std::vector<cplx> poles) {
  if (lead == cplx{}) return {};
  // Cancel coincident zero/pole pairs.
  for (auto pit = poles.begin(); pit != poles.end();) {
    auto zit = std::find_if(zeros.begin(), zeros.end(), [&](cplx z) { return same_point(z, *pit, pole_merge_tol); });
    if (zit != zeros.end()) {
      zeros.erase(zit);
      pit = poles.erase(pit);
    } else {
      ++pit;
    }
  }
  auto zg = group_points(zeros, pole_merge_tol);
  auto pg = group_points(poles, pole_merge_tol);
  const int nz = static_cast<int>(zeros.size()), np = static_cast<int>(poles.size());

  std::vector<PoleTerm> terms;
  for (size_t q = 0; q < pg.size(); ++q) {
    const int m = pg[q].mult;
    const cplx at = pg[q].point;
    std::vector<cplx> s(m, cplx{});
    s[0] = lead;
    for (const auto& z : zg) s = series_mul(s, binomial_series(at - z.point, z.mult, m), m);
    for (size_t o = 0; o < pg.size(); ++o)
      if (o != q) s = series_mul(s, binomial_series(at - pg[o].point, -pg[o].mult, m), m);
    PoleTerm t{at, std::vector<cplx>(m)};
    for (int k = 1; k <= m; ++k) t.coeffs[k - 1] = s[m - k];
    terms.push_back(std::move(t));
  }
  Polynomial poly;
  if (nz >= np) {
    // lead x^{nz-np} prod (1 - z t)^{mz} prod (1 - p t)^{-mp}, t = 1/x
    const int n = nz - np + 1;
    std::vector<cplx> s(n, cplx{});
    s[0] = lead;
    for (const auto& z : zg) {
      auto b = binomial_series(1.0, z.mult, n);
      cplx f = 1.0;
      for (int j = 0; j < n; ++j, f *= -z.point) b[j] *= f;
      s = series_mul(s, b, n);
    }
    for (const auto& p : pg) {
      auto b = binomial_series(1.0, -p.mult, n);
      cplx f = 1.0;
      for (int j = 0; j < n; ++j, f *= -p.point) b[j] *= f;
      s = series_mul(s, b, n);
    }
    std::vector<cplx> pc(n, cplx{});
    for (int j = 0; j < n; ++j) pc[nz - np - j] = s[j];
    poly = Polynomial(std::move(pc));
  }
  return RationalFunction(std::move(poly), std::move(terms));
}

RationalFunction RationalFunction::from_coefficients(const Polynomial& num, const Polynomial& den, double tol) {
  if (den.is_zero()) throw MathError(ErrorKind::DivisionByZeroFunction, "zero denominator");
  if (num.is_zero()) return {};
  if (den.degree() == 0) return RationalFunction(num * (1.0 / den.leading()));
  auto rts = clustered_roots(den, tol);
  std::vector<cplx> expanded;
  for (const auto& r : rts)
    for (int k = 0; k < r.multiplicity; ++k) expanded.push_back(r.value);
  Polynomial monic_den = Polynomial::from_roots(1.0, expanded);
  const cplx lead = den.leading();
  auto [q, rem] = num.divmod(monic_den);
  (void)rem;
  std::vector<PoleTerm> terms;
  for (size_t i = 0; i < rts.size(); ++i) {
    const int m = rts[i].multiplicity;
    const cplx at = rts[i].value;
    std::vector<cplx> s = num.shifted(at, m);
    for (size_t j = 0; j < rts.size(); ++j)
      if (j != i) s = series_mul(s, binomial_series(at - rts[j].value, -rts[j].multiplicity, m), m);
    PoleTerm t{at, std::vector<cplx>(m)};
    for (int k = 1; k <= m; ++k) t.coeffs[k - 1] = s[m - k] / lead;
    terms.push_back(std::move(t));
  }
  return RationalFunction(q * (1.0 / lead), std::move(terms)).reduced(1e-12);
}

RationalFunction RationalFunction::conj_reflect() const {
  std::vector<cplx> pc = poly_.coeffs();
  for (auto& z : pc) z = std::conj(z);
  std::vector<PoleTerm> ts = terms_;
  for (auto& t : ts) {
    t.pole = std::conj(t.pole);
    for (auto& z : t.coeffs) z = std::conj(z);
  }
  return RationalFunction(Polynomial(std::move(pc)), std::move(ts));
}

RationalFunction RationalFunction::compose_mobius(cplx a, cplx b, cplx c, cplx d) const {
  if (a * d - b * c == cplx{}) throw MathError(ErrorKind::InvalidParams, "degenerate Moebius map");
  // w^n and (w - p)^{-k} for w = (a x + b)/(c x + d), each as a product of linear factors.
  auto linear = [](cplx s, cplx t, int n, cplx& lead, std::vector<cplx>& roots) {
    // (s x + t)^n
    if (s != cplx{}) {
      lead *= std::pow(s, n);
      for (int k = 0; k < n; ++k) roots.push_back(-t / s);
    } else {
      lead *= std::pow(t, n);
    }
  };
  RationalFunction out;
  for (int n = 0; n <= poly_.degree(); ++n) {
    if (poly_[n] == cplx{}) continue;
    cplx lead = poly_[n];
    std::vector<cplx> zs, ps;
    linear(a, b, n, lead, zs);
    cplx inv = 1.0;
    linear(c, d, n, inv, ps);
    out += from_roots(lead / inv, zs, ps);
  }
  for (const auto& t : terms_) {
    for (int k = 1; k <= t.order(); ++k) {
      if (t.coeffs[k - 1] == cplx{}) continue;
      cplx lead = t.coeffs[k - 1];
      std::vector<cplx> zs, ps;
      linear(c, d, k, lead, zs);
      cplx inv = 1.0;
      linear(a - t.pole * c, b - t.pole * d, k, inv, ps);
      out += from_roots(lead / inv, zs, ps);
    }
  }
  return out;
}

RationalFunction RationalFunction::reciprocal(double tol) const {
  if (is_zero()) throw MathError(ErrorKind::DivisionByZeroFunction, "reciprocal of the zero function");
  Polynomial num = numerator().trimmed(1e-14);
  std::vector<cplx> new_zeros;
  for (const auto& t : terms_)
    for (int k = 0; k < t.order(); ++k) new_zeros.push_back(t.pole);
  std::vector<cplx> new_poles;
  for (const auto& r : clustered_roots(num, tol))
    for (int k = 0; k < r.multiplicity; ++k) new_poles.push_back(r.value);
  return from_roots(1.0 / num.leading(), new_zeros, new_poles);
}

RationalFunction RationalFunction::derivative() const {
  std::vector<PoleTerm> ts;
  for (const auto& t : terms_) {
    PoleTerm d{t.pole, std::vector<cplx>(t.order() + 1, cplx{})};
    for (int k = 1; k <= t.order(); ++k) d.coeffs[k] = -static_cast<double>(k) * t.coeffs[k - 1];
    ts.push_back(std::move(d));
  }
  return RationalFunction(poly_.derivative(), std::move(ts));
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  poly_ += o.poly_;
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(cplx s) {
  poly_ *= s;
  for (auto& t : terms_)
    for (auto& z : t.coeffs) z *= s;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  *this = *this * o;
  return *this;
}

RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
  if (f.is_zero() || g.is_zero()) return {};
  if (f.terms_.empty() && g.terms_.empty()) return RationalFunction(f.poly_ * g.poly_);
  const int df = f.poly_.degree();  // -1 when decaying
  const int dg = g.poly_.degree();
  Polynomial poly;
  if (df + dg >= 0) {
    auto ef = f.at_infinity(df, -dg);
    auto eg = g.at_infinity(dg, -df);
    std::vector<cplx> pc(df + dg + 1, cplx{});
    for (int a = -dg; a <= df; ++a) {
      for (int b = -df; b <= dg; ++b) {
        int j = a + b;
        if (j < 0) continue;
        pc[j] += ef[df - a] * eg[dg - b];
      }
    }
    poly = Polynomial(std::move(pc));
  }
  std::vector<cplx> all;
  for (const auto& t : f.terms_) all.push_back(t.pole);
  for (const auto& t : g.terms_) all.push_back(t.pole);
  auto grouped = group_points(all, RationalFunction::pole_merge_tol);
  std::vector<PoleTerm> terms;
  for (const auto& gp : grouped) {
    const PoleTerm* tf = f.find_pole(gp.point);
    const PoleTerm* tg = g.find_pole(gp.point);
    const int mf = tf ? tf->order() : 0;
    const int mg = tg ? tg->order() : 0;
    const cplx at = tf ? tf->pole : tg->pole;
    auto lf = f.laurent(at, -mf, mg - 1);  // index n + mf
    auto lg = g.laurent(at, -mg, mf - 1);  // index n + mg
    PoleTerm t{at, std::vector<cplx>(mf + mg, cplx{})};
    for (int k = 1; k <= mf + mg; ++k) {
      cplx acc{};
      for (int i = -mf; i <= mg - 1; ++i) {
        int j = -k - i;
        if (j < -mg || j > mf - 1) continue;
        acc += lf[i + mf] * lg[j + mg];
      }
      t.coeffs[k - 1] = acc;
    }
    terms.push_back(std::move(t));
  }
  return RationalFunction(std::move(poly), std::move(terms));
}

// ---------------------------------------------------------------------------------------------

void check_boundary_poles(const RationalFunction& f, Domain d, const Tolerances& tol) {
  for (const auto& t : f.terms()) {
    if (d == Domain::half_plane && std::abs(t.pole.imag()) <= tol.real)
      throw MathError(ErrorKind::RealPole, "pole within tolerance of the real line");
    if (d == Domain::disc && std::abs(std::abs(t.pole) - 1.0) <= tol.real)
      throw MathError(ErrorKind::PoleOnBoundary, "pole within tolerance of the unit circle");
  }
}

bool is_boundary_bounded(const RationalFunction& f, Domain d, const Tolerances& tol) {
  try {
    check_boundary_poles(f, d, tol);
  } catch (const MathError&) {
    return false;
  }
  return d == Domain::disc || f.reduced(1e-12).poly_degree() <= 0;
}

RieszSplit riesz_split(const RationalFunction& f, Domain d, const Tolerances& tol) {
  check_boundary_poles(f, d, tol);
  RieszSplit s;
  if (d == Domain::half_plane) {
    if (f.reduced(1e-12).poly_degree() >= 1)
      throw MathError(ErrorKind::NotBounded, "riesz_split needs a function bounded at infinity");
    s.plus = f.filtered([](cplx p) { return p.imag() < 0; }, false);
    s.minus = f.filtered([](cplx p) { return p.imag() > 0; }, false);
    s.constant = f.poly_part()[0];
  } else {
    s.plus = f.filtered([](cplx p) { return std::abs(p) > 1.0; }, true);
    s.minus = f.filtered([](cplx p) { return std::abs(p) < 1.0; }, false);
  }
  return s;
}

namespace {
void require_l2(const RationalFunction& f, const RieszSplit& s, Domain d) {
  if (d == Domain::half_plane && std::abs(s.constant) > 1e-12 * std::max(1.0, f.scale()))
    throw MathError(ErrorKind::NotIntegrable, "Riesz projection of a function with a nonzero limit at infinity");
}
}  // namespace

RationalFunction riesz_plus(const RationalFunction& f, Domain d, const Tolerances& tol) {
  auto s = riesz_split(f, d, tol);
  require_l2(f, s, d);
  return s.plus;
}

RationalFunction riesz_minus(const RationalFunction& f, Domain d, const Tolerances& tol) {
  auto s = riesz_split(f, d, tol);
  require_l2(f, s, d);
  return s.minus;
}

std::pair<RationalFunction, RationalFunction> weighted_split(const RationalFunction& g, WeightVariant v,
                                                             const Tolerances& tol) {
  const cplx shift = v == WeightVariant::x_plus_i ? -kI : kI;  // weight x + i or x - i
  auto s = riesz_split(g * RationalFunction::pole(shift), Domain::half_plane, tol);
  RationalFunction weight(Polynomial({-shift, 1.0}));
  return {weight * s.plus, weight * s.minus};
}

bool in_weighted_hardy(const RationalFunction& f, HardySign sign, const Tolerances& tol) {
  const cplx lam_root = sign == HardySign::plus ? -kI : kI;
  RationalFunction h = (f * RationalFunction::pole(lam_root)).reduced(1e-12);
  if (!h.decays()) return false;
  for (const auto& t : h.terms()) {
    double im = t.pole.imag();
    if (sign == HardySign::plus ? im >= -tol.real : im <= tol.real) return false;
  }
  return true;
}

RationalFunction boundary_conj(const RationalFunction& f, Domain d) {
  if (d == Domain::half_plane) return f.conj_reflect();
  return f.conj_reflect().compose_mobius(0.0, 1.0, 1.0, 0.0);
}

namespace {

// Number of powers of 1/x the function is known to decay by (0 or 1); junk polynomial parts are
// stripped in place.
int decay_order(RationalFunction& f) {
  RationalFunction r = f.reduced(1e-12);
  if (r.poly_degree() >= 1) throw MathError(ErrorKind::NotIntegrable, "function grows at infinity");
  if (r.poly_degree() == 0) return 0;
  f = f.filtered([](cplx) { return true; }, false);
  // The x^-1 coefficient is the sum of the simple-pole residues.
  cplx first{};
  double mass = 0;
  for (const auto& t : f.terms()) {
    first += t.coeffs[0];
    mass += std::abs(t.coeffs[0]);
  }
  return std::abs(first) <= 1e-10 * mass ? 2 : 1;
}

// Sum of the residues of the product at the selected poles, from the Laurent series of each factor
// separately. Expanding the product into partial fractions first loses accuracy when poles of
// different factors are close.
// Sum of residues of the product at the selected poles, with the same sum taken in absolute
// values as a rounding scale.
struct ResidueSum {
  cplx value;
  double mass = 0;
};

ResidueSum product_residues(const std::vector<RationalFunction>& factors, const std::function<bool(cplx)>& keep) {
  std::vector<cplx> poles;
  for (const auto& f : factors)
    for (const auto& t : f.terms()) {
      if (!keep(t.pole)) continue;
      bool seen = std::any_of(poles.begin(), poles.end(), [&](cplx p) {
        return std::abs(p - t.pole) <= RationalFunction::pole_merge_tol * std::max(1.0, std::abs(p));
      });
      if (!seen) poles.push_back(t.pole);
    }
  ResidueSum total;
  for (cplx p : poles) {
    std::vector<int> orders;
    int sum = 0;
    for (const auto& f : factors) {
      orders.push_back(f.pole_order(p));
      sum += orders.back();
    }
    if (sum == 0) continue;
    // Running product; acc[i] multiplies (x - p)^(lo + i). Factor k is needed up to the power
    // -1 + (sum - orders[k]).
    int lo = 0;
    std::vector<cplx> acc{1.0};
    std::vector<double> mag{1.0};
    for (size_t k = 0; k < factors.size(); ++k) {
      auto series = factors[k].laurent(p, -orders[k], sum - orders[k] - 1);
      std::vector<cplx> next(acc.size() + series.size() - 1, cplx{});
      std::vector<double> next_mag(next.size(), 0.0);
      for (size_t i = 0; i < acc.size(); ++i)
        for (size_t j = 0; j < series.size(); ++j) {
          next[i + j] += acc[i] * series[j];
          next_mag[i + j] += mag[i] * std::abs(series[j]);
        }
      acc = std::move(next);
      mag = std::move(next_mag);
      lo -= orders[k];
    }
    total.value += acc[-1 - lo];
    total.mass += mag[-1 - lo];
  }
  return total;
}

}  // namespace

cplx boundary_integral(std::vector<RationalFunction> factors, Domain d, const Tolerances& tol) {
  for (const auto& f : factors)
    if (f.is_zero()) return {};
  for (const auto& f : factors) check_boundary_poles(f, d, tol);
  if (d == Domain::disc) {
    // (1/2pi) integral over the circle = sum of residues of prod / z inside the disc.
    factors.push_back(RationalFunction::pole(0.0));
    return product_residues(factors, [](cplx p) { return std::abs(p) < 1.0; }).value;
  }
  int decay = 0;
  for (auto& f : factors) decay += decay_order(f);
  if (decay < 2) throw MathError(ErrorKind::NotIntegrable, "integrand does not decay like x^-2");
  // Either half-plane gives the integral; take the side whose residues cancel less.
  ResidueSum upper = product_residues(factors, [](cplx p) { return p.imag() > 0; });
  ResidueSum lower = product_residues(factors, [](cplx p) { return p.imag() < 0; });
  return 2.0 * kPi * kI * (upper.mass <= lower.mass ? upper.value : -lower.value);
}

cplx l2_inner(const RationalFunction& f, const RationalFunction& g, const Tolerances& tol) {
  RationalFunction ff = f, gg = g;
  if (f.is_zero() || g.is_zero()) return {};
  if (decay_order(ff) == 0 || decay_order(gg) == 0)
    throw MathError(ErrorKind::NotIntegrable, "function does not decay at infinity");
  return boundary_integral({ff, gg.conj_reflect()}, Domain::half_plane, tol);
}

cplx disc_inner(const RationalFunction& f, const RationalFunction& g, const Tolerances& tol) {
  return boundary_integral({f, boundary_conj(g, Domain::disc)}, Domain::disc, tol);
}

cplx inner_product(const RationalFunction& f, const RationalFunction& g, Domain d, const Tolerances& tol) {
  return d == Domain::disc ? disc_inner(f, g, tol) : l2_inner(f, g, tol);
}

double l2_norm(const RationalFunction& f, Domain d, const Tolerances& tol) {
  return std::sqrt(std::max(0.0, inner_product(f, f, d, tol).real()));
}

cplx quadrature_oracle(const RationalFunction& f, const RationalFunction& g, const Tolerances& tol) {
  check_boundary_poles(f, Domain::half_plane, tol);
  check_boundary_poles(g, Domain::half_plane, tol);
  if (!f.reduced(1e-12).decays() || !g.reduced(1e-12).decays())
    throw MathError(ErrorKind::NotIntegrable, "integrand does not decay");
  using boost::math::quadrature::gauss_kronrod;
  const double inf = std::numeric_limits<double>::infinity();
  auto re = [&](double x) { return (f(x) * std::conj(g(x))).real(); };
  auto im = [&](double x) { return (f(x) * std::conj(g(x))).imag(); };
  double err = 0;
  double a = gauss_kronrod<double, 61>::integrate(re, -inf, inf, 20, 1e-12, &err);
  double b = gauss_kronrod<double, 61>::integrate(im, -inf, inf, 20, 1e-12, &err);
  return {a, b};
}

int zero_order(const RationalFunction& f, cplx z, double rel) {
  constexpr int kTerms = kMaxDegree + 3;
  if (f.is_zero()) return kTerms;
  double radius = 1.0;
  for (const auto& t : f.terms()) radius = std::min(radius, 0.5 * std::abs(t.pole - z));
  auto c = f.taylor(z, kTerms);
  // Rounding floor of each Taylor coefficient: the same sums taken in absolute value. Nearby poles
  // give large partial-fraction coefficients whose cancellation leaves noise far above eps * |c_k|.
  std::vector<double> noise(kTerms, 0.0);
  for (const auto& t : f.terms()) {
    const double dist = std::abs(z - t.pole);
    for (int j = 1; j <= t.order(); ++j) {
      double term = std::abs(t.coeffs[j - 1]) / std::pow(dist, j), binom = 1;  // binom(j + k - 1, k)
      for (int k = 0; k < kTerms; ++k) {
        noise[k] += binom * term;
        term /= dist;
        binom = binom * (j + k) / (k + 1);
      }
    }
  }
  const auto& pc = f.poly_part().coeffs();
  for (int m = 0; m < static_cast<int>(pc.size()); ++m) {
    double binom = 1;  // binom(m, k)
    for (int k = 0; k <= m && k < kTerms; ++k) {
      noise[k] += binom * std::abs(pc[m]) * std::pow(std::abs(z), m - k);
      binom = binom * (m - k) / (k + 1);
    }
  }
  constexpr double kRounding = 64 * 2.220446049250313e-16;
  double total = 0, pw = 1;
  std::vector<double> scaled(kTerms), floor(kTerms);
  for (int k = 0; k < kTerms; ++k, pw *= radius) {
    scaled[k] = std::abs(c[k]) * pw;
    floor[k] = kRounding * noise[k] * pw;
    total += scaled[k];
  }
  int order = 0;
  while (order < kTerms && scaled[order] <= std::max(rel * total, floor[order])) ++order;
  return order;
}

double boundary_size(const RationalFunction& f, Domain d, const Tolerances& tol) {
  if (f.is_zero()) return 0.0;
  try {
    return l2_norm(f, d, tol);
  } catch (const MathError& e) {
    if (e.kind() != ErrorKind::NotIntegrable) throw;
  }
  double m = 0;
  constexpr int kSamples = 97;
  for (int k = 1; k < kSamples; ++k) {
    double t = -0.5 * kPi + kPi * k / kSamples;
    m = std::max(m, std::abs(f(std::tan(t))));
  }
  if (f.poly_degree() <= 0) m = std::max(m, std::abs(f.poly_part()[0]));
  return m;
}

}  // namespace tto
