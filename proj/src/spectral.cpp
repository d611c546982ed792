#include "tto/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "tto/errors.hpp"
#include "tto/linalg.hpp"

namespace tto {

namespace {

// Distinguished interior point and the shift symbol: i and b_i on the half-plane, 0 and z on the disc.
cplx base_point(Domain d) { return d == Domain::half_plane ? kI : cplx{}; }
InnerFunction shift_inner(Domain d) { return InnerFunction::blaschke(base_point(d), 1, d); }

double sup_on_boundary(const RationalFunction& f, Domain d) {
  double m = 0;
  constexpr int kSamples = 199;
  for (int k = 1; k < kSamples; ++k) {
    double t = -0.5 * kPi + kPi * k / kSamples;
    cplx z = d == Domain::half_plane ? cplx(std::tan(t)) : std::polar(1.0, 2.0 * t);
    m = std::max(m, std::abs(f(z)));
  }
  return m;
}

// Parts of f on each side: size of the part with poles inside the domain (not H+) and of the rest.
struct Sides {
  double outside_hplus = 0;
  double outside_hminus = 0;
};

Sides sides(const RationalFunction& f, Domain d, const Tolerances& tol) {
  RieszSplit s = riesz_split(f, d, tol);
  Sides out;
  out.outside_hplus = l2_norm(s.minus, d, tol);
  out.outside_hminus = l2_norm(s.plus, d, tol) + std::abs(s.constant);
  return out;
}

void require_analytic(const RationalFunction& f, Domain d, const char* name) {
  for (const auto& t : f.terms())
    if (d == Domain::half_plane ? t.pole.imag() >= 0 : std::abs(t.pole) <= 1.0)
      throw MathError(ErrorKind::NotAnalytic, std::string(name) + " has a pole in the closed domain");
  if (d == Domain::half_plane && f.poly_degree() >= 1)
    throw MathError(ErrorKind::NotBounded, std::string(name) + " is unbounded");
}

CMat orthonormal_span(const ModelSpace& space, const CMat& coords, double rel) {
  return range_basis(space.to_orthonormal(coords), rel);
}

}  // namespace

MatrixSymbol matrix_symbol(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta) {
  MatrixSymbol m;
  m.entries[0][0] = Symbol::inner(theta, true, "theta");
  m.entries[0][1] = Symbol();
  m.entries[1][0] = g;
  m.entries[1][1] = Symbol::inner(alpha, false, "alpha");
  return m;
}

CMat numeric_null_space(const AttoOperator& a) {
  const Tolerances& tol = a.domain->tolerances();
  CMat m = a.orthonormal();
  // A relative threshold cannot see a zero operator made of rounding noise.
  if (m.norm() <= tol.zero_op) return CMat::Identity(m.cols(), m.cols());
  return null_space(m, tol.rank);
}

KernelReport numeric_kernel(const AttoOperator& a) {
  KernelReport rep;
  CMat q = numeric_null_space(a);
  CMat coords = a.domain->from_orthonormal(q);
  for (int j = 0; j < coords.cols(); ++j) rep.null_basis.push_back(make_element(a.domain, coords.col(j)));
  rep.dimension = static_cast<int>(coords.cols());
  return rep;
}

InnerFunction inner_part(const RationalFunction& f, const std::vector<const InnerFunction*>& hints,
                         const Tolerances& tol) {
  std::vector<cplx> pts;
  Domain d = Domain::half_plane;
  for (const auto* h : hints) {
    d = h->domain();
    for (const auto& z : h->zeros()) pts.push_back(z.location);
  }
  return inner_factor(f, d, tol, pts);
}

bool lemma_L_check(const RationalFunction& g_plus, const InnerFunction& theta, const RationalFunction& phi_plus,
                   const Tolerances& tol) {
  const Domain d = theta.domain();
  require_analytic(g_plus, d, "g_plus");
  require_analytic(phi_plus, d, "phi_plus");
  if (g_plus.is_zero() || phi_plus.is_zero()) return true;  // both sides hold trivially
  InnerFunction gi = inner_part(g_plus, {&theta}, tol);
  InnerFunction beta = gcd(gi, theta, tol);
  InnerFunction prod_inner = inner_part(g_plus * phi_plus, {&theta, &gi}, tol);
  InnerFunction phi_inner = inner_part(phi_plus, {&theta, &gi}, tol);
  const bool lhs = divides(theta, prod_inner, tol);
  const bool rhs = divides(divide_exact(theta, beta, tol), phi_inner, tol);
  return lhs == rhs;
}

KernelReport analytic_kernel(const RationalFunction& g_plus, const InnerFunction& alpha, const InnerFunction& theta,
                             const Tolerances& tol) {
  if (g_plus.is_zero()) throw MathError(ErrorKind::ZeroSymbol, "analytic kernel of the zero symbol");
  if (!divides(alpha, theta, tol)) throw MathError(ErrorKind::NotADivisor, "alpha does not divide theta");
  require_analytic(g_plus, theta.domain(), "g_plus");
  AttoOperator a = build_A(g_plus, alpha, theta, tol);
  KernelReport rep = numeric_kernel(a);

  InnerFunction gi = inner_part(g_plus, {&alpha, &theta}, tol);
  InnerFunction beta = gcd(alpha, gi, tol);
  InnerFunction gamma = divide_exact(alpha, beta, tol);
  rep.predicted_gamma = gamma;
  rep.predicted_dimension = theta.degree() - alpha.degree() + beta.degree();
  rep.prediction_applied = true;
  ShiftedSpace pred = shifted_space(gamma, theta, tol);
  CMat predicted = orthonormal_span(*a.domain, pred.embedding, tol.rank);
  rep.principal_angle_residual = subspace_distance(numeric_null_space(a), predicted);
  return rep;
}

double WitnessResiduals::max() const {
  return std::max({phi1_plus, phi1_minus, phi2_plus, phi2_minus, equation});
}

EquivalenceWitness make_witness(const RationalFunction& phi1_plus, const RationalFunction& g,
                                const InnerFunction& alpha, const InnerFunction& theta, WitnessResiduals* res,
                                const Tolerances& tol) {
  const Domain d = theta.domain();
  const double n1 = std::max(l2_norm(phi1_plus, d, tol), 1e-300);
  WitnessResiduals r;
  EquivalenceWitness w;
  w.phi1_plus = phi1_plus;
  r.phi1_plus = sides(phi1_plus, d, tol).outside_hplus / n1;
  w.phi1_minus = theta.reciprocal() * phi1_plus;
  r.phi1_minus = sides(w.phi1_minus, d, tol).outside_hminus / n1;
  RationalFunction gp = g * phi1_plus;
  RieszSplit s = riesz_split(gp, d, tol);
  RationalFunction analytic = s.plus + RationalFunction(s.constant);
  w.phi2_minus = s.minus;
  RationalFunction raw = -(alpha.reciprocal() * analytic);
  Sides s2 = sides(raw, d, tol);
  const double scale = n1 * std::max(1.0, sup_on_boundary(g, d));
  r.phi2_plus = s2.outside_hplus / scale;
  w.phi2_plus = riesz_plus(raw, d, tol);
  RationalFunction eq = gp + alpha.rational() * w.phi2_plus - w.phi2_minus;
  r.equation = boundary_size(eq, d, tol) / scale;
  // P-(g phi) has its poles inside the lower region by construction; record its membership anyway.
  r.phi2_minus = sides(w.phi2_minus, d, tol).outside_hminus / scale;
  constexpr double kFloor = 1024 * std::numeric_limits<double>::epsilon();
  r.rounding = kFloor * std::max({w.phi1_minus.scale() / n1, gp.scale() / scale, raw.scale() / scale});
  if (res) *res = r;
  return w;
}

std::vector<EquivalenceWitness> kernel_correspondence(const AttoOperator& a, const MatrixSymbol& g,
                                                      const Tolerances& tol) {
  const InnerFunction& theta = a.domain->theta();
  const InnerFunction& alpha = a.codomain->theta();
  const Domain d = theta.domain();
  RationalFunction sym = g.entries[1][0].flatten_bounded(d, tol);
  double mismatch = boundary_size(sym - a.symbol.flatten_bounded(d, tol), d, tol);
  if (mismatch > tol.eval * std::max(1.0, boundary_size(sym, d, tol)))
    throw MathError(ErrorKind::InvalidParams, "matrix symbol was not assembled from the operator's symbol");
  CMat q = numeric_null_space(a);
  std::vector<EquivalenceWitness> out;
  CMat firsts(a.domain->dim(), 0);
  for (int j = 0; j < q.cols(); ++j) {
    SpaceElement e = make_element(a.domain, a.domain->from_orthonormal(q.col(j)));
    WitnessResiduals r;
    out.push_back(make_witness(e.rational, sym, alpha, theta, &r, tol));
    const std::pair<const char*, double> named[] = {{"phi1_plus in H+", r.phi1_plus},
                                                   {"conj(theta) phi1_plus in H-", r.phi1_minus},
                                                   {"phi2_plus in H+", r.phi2_plus},
                                                   {"phi2_minus in H-", r.phi2_minus},
                                                   {"g phi1_plus + alpha phi2_plus = phi2_minus", r.equation}};
    for (const auto& [name, v] : named)
      if (!(v <= std::max(tol.ker, r.rounding))) throw MathError(ErrorKind::WitnessInvalid, std::string("membership failed: ") + name);
    // Converse: the first component of a valid witness lies in the numeric kernel.
    double off = 0;
    CVec c = a.domain->coordinates(out.back().phi1_plus, &off);
    CMat cn = a.domain->to_orthonormal(c);
    double res = subspace_residual(q, cn / std::max(cn.norm(), 1e-300));
    if (off > a.domain->tol_proj() || res > tol.ker)
      throw MathError(ErrorKind::WitnessInvalid, "witness first component is not in the numeric kernel");
    firsts.conservativeResize(Eigen::NoChange, firsts.cols() + 1);
    firsts.col(firsts.cols() - 1) = cn;
  }
  if (numerical_rank(firsts, tol.rank) != q.cols())
    throw MathError(ErrorKind::WitnessInvalid, "witness first components are dependent");
  return out;
}

// ------------------------------------------------------------------------------------------
// Factor operators acting on rational H+ representatives

namespace {

using Pair = std::pair<RationalFunction, RationalFunction>;

struct HardyOps {
  Domain d;
  InnerFunction alpha;
  InnerFunction theta;
  RationalFunction g;
  Tolerances tol;

  RationalFunction pp(const RationalFunction& f) const { return riesz_plus(f, d, tol); }
  RationalFunction t(const RationalFunction& s, const RationalFunction& f) const { return pp(s * f); }
  RationalFunction pa(const RationalFunction& f) const { return apply_projection(alpha, f, tol); }
  RationalFunction pt(const RationalFunction& f) const { return apply_projection(theta, f, tol); }
  RationalFunction qt(const RationalFunction& f) const { return pp(f) - pt(f); }
  // P_alpha T_g Q_theta
  RationalFunction x(const RationalFunction& f) const { return pa(t(g, qt(f))); }
  RationalFunction conj_t() const { return theta.reciprocal(); }
  RationalFunction conj_a() const { return alpha.reciprocal(); }
  // T_conj(alpha) (T_g - T_{alpha conj(theta)})
  RationalFunction coupling(const RationalFunction& f) const {
    return t(conj_a(), t(g, f) - t(alpha.rational() * conj_t(), f));
  }

  Pair t1(const Pair& v) const {
    return {t(theta.rational(), v.first) + pa(v.second), -pp(v.first) + t(conj_a(), v.second)};
  }
  Pair t1_inv(const Pair& v) const {
    return {t(conj_t(), v.first),
            pa(v.first) + alpha.rational() * conj_t() * qt(v.first) + t(alpha.rational(), v.second)};
  }
  Pair t2(const Pair& v) const { return {pp(v.first), pp(v.second) - coupling(v.first)}; }
  Pair t2_inv(const Pair& v) const { return {pp(v.first), pp(v.second) + coupling(v.first)}; }
  Pair middle(const Pair& v) const {
    return {t(conj_t(), v.first), t(g, v.first) + t(alpha.rational(), v.second)};
  }
  Pair outer(const Pair& v) const { return {pp(v.first) - x(v.first), pp(v.second)}; }

  double size(const RationalFunction& f) const { return l2_norm(f, d, tol); }
  double size(const Pair& v) const { return std::hypot(size(v.first), size(v.second)); }
  Pair diff(const Pair& a, const Pair& b) const { return {a.first - b.first, a.second - b.second}; }
};

}  // namespace

CheckReport factor_operator_checks(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta,
                                   const Tolerances& tol, bool throw_on_failure) {
  if (theta.domain() != Domain::half_plane || alpha.domain() != Domain::half_plane)
    throw MathError(ErrorKind::DomainMismatch, "factor operators are implemented on the half-plane");
  if (!divides(alpha, theta, tol)) throw MathError(ErrorKind::NotADivisor, "alpha does not divide theta");
  const Domain d = Domain::half_plane;
  HardyOps ops{d, alpha, theta, g.flatten_bounded(d, tol), tol};
  const double gs = std::max(1.0, sup_on_boundary(ops.g, d));

  std::vector<RationalFunction> hplus = {RationalFunction::pole(-kI), RationalFunction::pole(-kI, 2),
                                         RationalFunction::pole(cplx(1.0, -2.0)),
                                         RationalFunction::pole(cplx(-1.5, -0.5), 1, cplx(0.3, 0.8))};
  auto kt = make_space_or_zero(theta, tol);
  for (const auto& e : kt->basis()) hplus.push_back(e);
  // Representatives of K_alpha (+) theta H+.
  std::vector<RationalFunction> split;
  auto ka = make_space_or_zero(alpha, tol);
  for (const auto& e : ka->basis()) split.push_back(e);
  for (int k = 0; k < 3; ++k) split.push_back(theta.rational() * hplus[k]);
  split.push_back(theta.rational() * hplus[3] + (ka->dim() ? ka->basis()[0] : RationalFunction()));

  std::vector<Pair> hplus_pairs, split_pairs;
  for (const auto& h : hplus) {
    hplus_pairs.push_back({h, RationalFunction()});
    hplus_pairs.push_back({RationalFunction(), h});
  }
  for (const auto& s : split) split_pairs.push_back({s, RationalFunction()});
  for (const auto& h : hplus) split_pairs.push_back({RationalFunction(), h});

  CheckReport rep;
  rep.id = "factorization";
  const double lim = tol.op;
  auto rel = [&](double num, double den) { return num / std::max(den, 1e-300); };

  // (P+ + X)(P+ - X) = P+ on K_alpha (+) theta H+, and P+ - X keeps that space.
  for (const auto& v : split) {
    RationalFunction w = ops.pp(v) - ops.x(v);
    RationalFunction back = ops.pp(w) + ops.x(w);
    const double den = ops.size(v) * gs * gs;
    rep.check("invertible_factor_product", rel(ops.size(back - v), den), lim);
    rep.check("invertible_factor_range", rel(ops.size(ops.pt(w) - ops.pa(w)), den), lim);
  }
  // T1^{-1} T1 on (H+)^2 and T1 T1^{-1} on (K_alpha (+) theta H+) x H+.
  for (const auto& v : hplus_pairs)
    rep.check("t1_left_inverse", rel(ops.size(ops.diff(ops.t1_inv(ops.t1(v)), v)), ops.size(v)), lim);
  for (const auto& v : split_pairs)
    rep.check("t1_right_inverse", rel(ops.size(ops.diff(ops.t1(ops.t1_inv(v)), v)), ops.size(v)), lim);
  // T2^{-1} T2 and T2 T2^{-1} on (H+)^2.
  for (const auto& v : hplus_pairs) {
    const double den = ops.size(v) * gs;
    rep.check("t2_left_inverse", rel(ops.size(ops.diff(ops.t2_inv(ops.t2(v)), v)), den), lim);
    rep.check("t2_right_inverse", rel(ops.size(ops.diff(ops.t2(ops.t2_inv(v)), v)), den), lim);
  }
  // P_alpha g P_theta + Q_theta = (P+ - X)(P_alpha T_g + Q_theta) on H+.
  for (const auto& h : hplus) {
    RationalFunction lhs = ops.pa(ops.g * ops.pt(h)) + ops.qt(h);
    RationalFunction inner = ops.pa(ops.t(ops.g, h)) + ops.qt(h);
    RationalFunction rhs = ops.pp(inner) - ops.x(inner);
    rep.check("product_factorization", rel(ops.size(lhs - rhs), ops.size(h) * gs * gs), lim);
  }
  // diag(P_alpha g P_theta + Q_theta, P+) = T T1 [[T_conj(theta), 0], [T_g, T_alpha]] T2 on (H+)^2.
  for (const auto& v : hplus_pairs) {
    Pair lhs{ops.pa(ops.g * ops.pt(v.first)) + ops.qt(v.first), ops.pp(v.second)};
    Pair rhs = ops.outer(ops.t1(ops.middle(ops.t2(v))));
    rep.check("full_factorization", rel(ops.size(ops.diff(lhs, rhs)), ops.size(v) * gs * gs * gs), lim);
  }
  if (throw_on_failure && !rep.passed) {
    std::string which;
    for (const auto& [name, v] : rep.residuals)
      if (!(v <= lim)) which += (which.empty() ? "" : ", ") + name;
    throw MathError(ErrorKind::IdentityFailure, "factorization identity failed: " + which);
  }
  return rep;
}

// ------------------------------------------------------------------------------------------

CheckReport invariant_lattice(const InnerFunction& theta, const Tolerances& tol) {
  CheckReport rep;
  rep.id = "lattice";
  const Domain d = theta.domain();
  auto kt = make_space(theta, tol);
  const int n = kt->dim();
  AttoOperator shift = build_A(Symbol::inner(shift_inner(d)), kt, kt);
  const CMat m_on = shift.orthonormal();
  std::vector<InnerFunction> divs = divisors(theta);
  rep.dimension("divisors", static_cast<long long>(divs.size()));
  std::vector<CMat> spans;
  for (const auto& alpha : divs) {
    CMat q = orthonormal_span(*kt, shifted_space(alpha, theta, tol).embedding, tol.rank);
    spans.push_back(q);
    if (q.cols() == 0) continue;
    CMat image = m_on * q;
    double res = (image - q * (q.adjoint() * image)).norm() / std::max(1.0, m_on.norm());
    rep.check("invariance_residual", res, tol.ker);
  }

  bool distinct = true;
  for (const auto& z : theta.zeros()) distinct = distinct && z.multiplicity == 1;
  if (!distinct) {
    rep.note("repeated zeros: eigenvector matching skipped");
    return rep;
  }
  Eigen::ComplexEigenSolver<CMat> es(m_on);
  const auto& lam = es.eigenvalues();
  double gap = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gap = std::min(gap, std::abs(lam(i) - lam(j)));
  rep.check_above("min_eigenvalue_gap", n > 1 ? gap : 1.0, 1e-6);
  const CMat& vecs = es.eigenvectors();
  std::vector<int> used(divs.size(), 0);
  double worst = 0;
  long long matched = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    CMat sub(n, static_cast<int>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<int>(k)) = vecs.col(cols[k]);
    CMat q = range_basis(sub, tol.rank);
    double best = 1.0;
    int at = -1;
    for (size_t a = 0; a < spans.size(); ++a) {
      double dist = subspace_distance(q, spans[a]);
      if (dist < best) best = dist, at = static_cast<int>(a);
    }
    worst = std::max(worst, best);
    if (at >= 0 && best <= tol.ker && used[at]++ == 0) ++matched;
  }
  rep.check("eigenspace_match_residual", worst, tol.ker);
  rep.dimension("invariant_subspaces", 1LL << n);
  rep.dimension("matched_divisors", matched);
  rep.require("bijection", matched == static_cast<long long>(divs.size()) && (1LL << n) == matched);
  return rep;
}

CheckReport cyclicity(const InnerFunction& theta, const Tolerances& tol) {
  CheckReport rep;
  rep.id = "cyclicity";
  const Domain d = theta.domain();
  auto kt = make_space(theta, tol);
  const int n = kt->dim();
  const cplx w = base_point(d);
  const InnerFunction r = shift_inner(d);
  const CMat fwd = build_A(Symbol::inner(r), kt, kt).orthonormal();
  const CMat bwd = build_A(Symbol::inner(r, true), kt, kt).orthonormal();
  auto krylov_rank = [&](const CMat& m, const CVec& start) {
    CMat k(n, n);
    CVec v = start / start.norm();
    for (int j = 0; j < n; ++j) {
      k.col(j) = v;
      v = m * v;
      if (v.norm() > 0) v /= v.norm();
    }
    return numerical_rank(k, tol.rank);
  };
  CVec kw = kt->to_orthonormal(kernel_k(theta, w, tol).coords);
  CVec kwt = kt->to_orthonormal(kernel_ktilde(theta, w, tol).coords);
  rep.dimension("dim", n);
  rep.dimension("krylov_rank_k", krylov_rank(fwd, kw));
  rep.dimension("krylov_rank_ktilde", krylov_rank(bwd, kwt));
  rep.require("k_cyclic", rep.dimensions["krylov_rank_k"] == n);
  rep.require("ktilde_cyclic", rep.dimensions["krylov_rank_ktilde"] == n);
  return rep;
}

}  // namespace tto
