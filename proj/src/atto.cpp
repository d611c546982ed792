#include "tto/atto.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tto/errors.hpp"
#include "tto/report.hpp"
#include "tto/linalg.hpp"

namespace tto {

namespace {

double op_scale(std::initializer_list<double> norms) {
  double s = 1.0;
  for (double n : norms) s *= std::max(1.0, n);
  return s;
}

void require_analytic(const RationalFunction& f, const char* name) {
  for (const auto& t : f.terms())
    if (t.pole.imag() >= 0)
      throw MathError(ErrorKind::NotAnalytic, std::string(name) + " has a pole in the closed upper half-plane");
  if (f.poly_degree() >= 1) throw MathError(ErrorKind::NotBounded, std::string(name) + " is unbounded");
}

}  // namespace

RationalFunction drop_pole(const RationalFunction& f, cplx x0) {
  return f.filtered(
      [&](cplx p) { return std::abs(p - x0) > RationalFunction::pole_merge_tol * std::max(1.0, std::abs(x0)); }, true);
}

CMat AttoOperator::orthonormal() const {
  if (gram_route.rows() == codomain->dim() && gram_route.cols() == domain->dim() && gram_route.size() > 0)
    return gram_route;
  CMat x = codomain->to_orthonormal(matrix);
  if (domain->dim() == 0) return x;
  CMat y = domain->chol_lower().triangularView<Eigen::Lower>().solve(x.adjoint());
  return y.adjoint();
}

CMat AttoOperator::adjoint_matrix() const {
  if (domain->dim() == 0) return CMat::Zero(0, codomain->dim());
  CMat rhs = matrix.adjoint() * codomain->gram();
  CMat out(domain->dim(), codomain->dim());
  for (int j = 0; j < rhs.cols(); ++j) out.col(j) = domain->gram_solve(rhs.col(j));
  return out;
}

RationalFunction AttoOperator::codomain_element(const CVec& coords) const {
  RationalFunction f = codomain->combine(coords);
  return codomain_shift ? codomain_shift->rational() * f : f;
}

CMat orthonormal_from_inner(const CMat& s, const ModelSpace& codomain, const ModelSpace& domain) {
  if (s.size() == 0) return CMat::Zero(codomain.dim(), domain.dim());
  CMat x = codomain.chol_lower().triangularView<Eigen::Lower>().solve(s);
  CMat y = domain.chol_lower().triangularView<Eigen::Lower>().solve(x.adjoint());
  return y.adjoint();
}

namespace {

// S(i, j) = <m images[j], w targets[i]> with the multipliers kept as separate factors.
// S_ij = <m e_j, w f_i> with m = sum over terms of the product of the term's factors and w the
// product of w_factors.
CMat inner_matrix(const std::vector<RationalFunction>& images, const std::vector<RationalFunction>& targets,
                  Domain d, const Tolerances& tol,
                  const std::vector<std::vector<RationalFunction>>& terms = {{RationalFunction(1.0)}},
                  const std::vector<RationalFunction>& w_factors = {}) {
  CMat s = CMat::Zero(targets.size(), images.size());
  std::vector<RationalFunction> wc;
  for (const auto& w : w_factors) wc.push_back(boundary_conj(w, d));
  for (size_t j = 0; j < images.size(); ++j)
    for (size_t i = 0; i < targets.size(); ++i)
      for (const auto& term : terms) {
        std::vector<RationalFunction> fs = term;
        fs.push_back(images[j]);
        fs.insert(fs.end(), wc.begin(), wc.end());
        fs.push_back(boundary_conj(targets[i], d));
        s(i, j) += boundary_integral(std::move(fs), d, tol);
      }
  return s;
}

double relative_gap(const CMat& a, const CMat& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace

CMat embedding_orthonormal(const ModelSpace& from, const ModelSpace& to) {
  CMat s = inner_matrix(from.basis(), to.basis(), to.domain(), to.tolerances());
  return orthonormal_from_inner(s, to, from);
}

namespace {

// Taylor coefficients of a half-plane Blaschke product at w, from its factors.
std::vector<cplx> inner_taylor(const InnerFunction& theta, cplx w, int n) {
  std::vector<cplx> out(n, 0.0);
  out[0] = theta.phase();
  for (const auto& z : theta.zeros()) {
    // (x - a) / (x - conj a) = 1 - (a - conj a) / (x - conj a) around w.
    const cplx a = z.location, pole = std::conj(a);
    std::vector<cplx> factor(n);
    cplx pw = 1.0 / (w - pole);
    for (int k = 0; k < n; ++k, pw /= -(w - pole)) factor[k] = (k == 0 ? 1.0 : 0.0) - (a - pole) * pw;
    for (int rep = 0; rep < z.multiplicity; ++rep) {
      std::vector<cplx> next(n, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) next[i + j] += out[i] * factor[j];
      out = std::move(next);
    }
  }
  return out;
}

}  // namespace

CMat conjugation_orthonormal(const SpacePtr& space) {
  const int n = space->dim();
  if (n == 0) return CMat::Zero(0, 0);
  CMat s(n, n);
  if (space->domain() == Domain::half_plane) {
    // <C e_k, e_l> = integral of theta (x - w_k)^{-a} (x - w_l)^{-b}. The zeros of theta cancel
    // every pole unless w_k = w_l, where the residue is a Taylor coefficient of theta.
    const auto& entries = space->entries();
    int top = 0;
    for (const auto& e : entries) top = std::max(top, 2 * e.order);
    std::map<int, std::vector<cplx>> taylor;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        s(l, k) = 0.0;
        if (entries[k].pole != entries[l].pole) continue;
        const cplx w = std::conj(entries[k].pole);
        auto it = taylor.find(k);
        if (it == taylor.end()) it = taylor.emplace(k, inner_taylor(space->theta(), w, top)).first;
        s(l, k) = 2.0 * kPi * kI * it->second[entries[k].order + entries[l].order - 1];
      }
  } else {
    std::vector<RationalFunction> images;
    for (const auto& e : space->basis()) images.push_back(conjugation_C(space, e).rational);
    s = inner_matrix(images, space->basis(), space->domain(), space->tolerances());
  }
  // C u_j = sum_k conj(L^{-H}(k, j)) C e_k, so Co = L^{-1} S conj(L^{-H}).
  const auto lower = space->chol_lower().triangularView<Eigen::Lower>();
  CMat x = lower.solve(s);
  CMat linv_h = lower.solve(CMat::Identity(n, n)).adjoint();
  return x * linv_h.conjugate();
}

double frobenius_between(const CMat& m, const ModelSpace& codomain, const ModelSpace& domain) {
  CMat x = codomain.to_orthonormal(m);
  if (domain.dim() == 0 || x.size() == 0) return 0.0;
  return domain.chol_lower().triangularView<Eigen::Lower>().solve(x.adjoint()).norm();
}

CMat embedding_matrix(const ModelSpace& from, const ModelSpace& to) {
  CMat e(to.dim(), from.dim());
  for (int j = 0; j < from.dim(); ++j) {
    double off = 0;
    e.col(j) = to.coordinates(from.basis()[j], &off);
    if (off > to.tol_proj()) throw MathError(ErrorKind::NotADivisor, "space is not contained in the target");
  }
  return e;
}

CMat conjugation_matrix(const SpacePtr& space) {
  CMat c(space->dim(), space->dim());
  for (int j = 0; j < space->dim(); ++j) c.col(j) = conjugation_C(space, space->basis()[j]).coords;
  return c;
}

AttoOperator build_A(const Symbol& g, const SpacePtr& codomain, const SpacePtr& domain, BuildMode mode) {
  if (codomain->domain() != domain->domain()) throw MathError(ErrorKind::DomainMismatch, "spaces on different domains");
  AttoOperator op;
  op.domain = domain;
  op.codomain = codomain;
  op.symbol = g;
  op.kind = OperatorKind::A;
  RationalFunction flat = g.flatten_bounded(domain->domain(), domain->tolerances());
  op.matrix = CMat::Zero(codomain->dim(), domain->dim());
  for (int j = 0; j < domain->dim(); ++j) {
    RationalFunction f = flat * domain->basis()[j];
    op.matrix.col(j) = (mode == BuildMode::checked ? project_theta(codomain, f) : project_fast(codomain, f)).coords;
  }
  if (mode == BuildMode::checked && codomain->dim() > 0 && domain->dim() > 0) {
    // P_alpha is self-adjoint and fixes the codomain basis, so <P_alpha g e_j, f_i> = <g e_j, f_i>.
    CMat s = inner_matrix(domain->basis(), codomain->basis(), domain->domain(), domain->tolerances(),
                          g.factor_terms(domain->domain(), domain->tolerances()));
    CMat from_coords = op.orthonormal();
    op.gram_route = orthonormal_from_inner(s, *codomain, *domain);
    op.consistency = relative_gap(from_coords, op.gram_route);
  }
  return op;
}

AttoOperator build_A(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta, const Tolerances& tol,
                     BuildMode mode) {
  return build_A(g, make_space_or_zero(alpha, tol), make_space_or_zero(theta, tol), mode);
}

AttoOperator build_B(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta, const Tolerances& tol) {
  if (!divides(alpha, theta, tol)) throw MathError(ErrorKind::NotADivisor, "B requires alpha to divide theta");
  auto k_theta = make_space_or_zero(theta, tol);
  auto quotient = make_space_or_zero(divide_exact(theta, alpha, tol), tol);
  RationalFunction flat = g.flatten_bounded(theta.domain(), tol);
  const int n = k_theta->dim(), m = quotient->dim();
  AttoOperator op;
  op.matrix = CMat::Zero(m, n);
  for (int j = 0; j < n; ++j) {
    RationalFunction f = flat * k_theta->basis()[j];
    op.matrix.col(j) = project_theta(quotient, alpha.reciprocal() * f).coords;
  }
  op.domain = k_theta;
  op.codomain = quotient;
  op.codomain_shift = alpha;
  op.symbol = g;
  op.kind = OperatorKind::B;
  if (n > 0 && m > 0) {
    // Direct route: P_{alpha,theta} is self-adjoint and fixes the shifted basis alpha q_i, whose
    // Gram matrix is that of the q_i.
    CMat s = inner_matrix(k_theta->basis(), quotient->basis(), theta.domain(), tol, g.factor_terms(theta.domain(), tol),
                          alpha.factors());
    CMat direct = orthonormal_from_inner(s, *quotient, *k_theta);
    CMat shifted = op.orthonormal();
    op.consistency = relative_gap(shifted, direct);
    op.gram_route = direct;
  }
  if (op.consistency > tol.op) throw MathError(ErrorKind::FormulaMismatch, "the two constructions of B disagree: " + fmt(op.consistency));
  return op;
}

// ------------------------------------------------------------------------------------------
// Zero symbols

Symbol symbol_from_split(const ZeroSplit& split, const InnerFunction& alpha, const InnerFunction& theta) {
  return Symbol(std::vector<SymbolTerm>{{1.0, {{theta, true, "theta"}}, split.minus},
                                        {1.0, {{alpha, false, "alpha"}}, split.plus}});
}

ZeroSymbolResult is_zero_symbol(const Symbol& g, const InnerFunction& alpha, const InnerFunction& theta,
                                const std::optional<ZeroSplit>& split, const Tolerances& tol) {
  ZeroSymbolResult r;
  r.norm = build_A(g, alpha, theta, tol).frobenius();
  r.zero = r.norm <= tol.zero_op;
  if (split) {
    bool ok = in_weighted_hardy(split->minus, HardySign::minus, tol) && in_weighted_hardy(split->plus, HardySign::plus, tol);
    if (ok) {
      Domain d = theta.domain();
      RationalFunction flat = g.flatten_bounded(d, tol);
      RationalFunction rebuilt = symbol_from_split(*split, alpha, theta).flatten_bounded(d, tol);
      double gap = boundary_size(flat - rebuilt, d, tol);
      ok = gap <= tol.eval * std::max(1.0, boundary_size(flat, d, tol));
    }
    r.certificate = ok ? (r.zero ? "split-verified" : "split-nonzero") : "split-invalid";
  } else {
    r.certificate = r.zero ? "matrix-only" : "nonzero";
  }
  return r;
}

std::optional<ZeroSplit> extract_zero_split(const RationalFunction& g, const InnerFunction& alpha,
                                            const InnerFunction& theta, const Tolerances& tol) {
  if (alpha.domain() != Domain::half_plane || theta.domain() != Domain::half_plane)
    throw MathError(ErrorKind::DomainMismatch, "split extraction is implemented on the half-plane");
  RieszSplit s = riesz_split(g, Domain::half_plane, tol);
  // alpha * plus = lower + kappa must vanish at alpha's zeros; conj(theta) * minus = upper + c - kappa at
  // the conjugated zeros of theta.
  cplx kappa{};
  if (!alpha.zeros().empty())
    kappa = -s.plus(alpha.zeros().front().location);
  else if (!theta.zeros().empty())
    kappa = s.minus(std::conj(theta.zeros().front().location)) + s.constant;
  RationalFunction lower = s.plus + RationalFunction(kappa);
  RationalFunction upper = s.minus + RationalFunction(s.constant - kappa);
  constexpr double kVanish = 1e-9;
  for (const auto& z : alpha.zeros())
    if (zero_order(lower, z.location, kVanish) < z.multiplicity) return std::nullopt;
  for (const auto& z : theta.zeros())
    if (zero_order(upper, std::conj(z.location), kVanish) < z.multiplicity) return std::nullopt;
  ZeroSplit out;
  out.plus = (alpha.reciprocal() * lower).filtered([](cplx p) { return p.imag() < 0; }, true);
  out.minus = (theta.rational() * upper).filtered([](cplx p) { return p.imag() > 0; }, true);
  return out;
}

// ------------------------------------------------------------------------------------------
// Rank-one and finite-rank symbols

const char* to_string(RankOneKind k) {
  switch (k) {
    case RankOneKind::F2a: return "F2a";
    case RankOneKind::F2b: return "F2b";
    case RankOneKind::F4: return "F4";
    case RankOneKind::F6: return "F6";
  }
  return "?";
}

namespace {

void require_upper(cplx z) {
  if (!(z.imag() > 0)) throw MathError(ErrorKind::InvalidParams, "pole parameter must lie in the upper half-plane");
}

// f (x - x0)^{-n} with the pole at x0 dropped: the Taylor remainder of f of order n, divided by (x - x0)^n.
RationalFunction remainder_at(const RationalFunction& f, double x0, int n) {
  return drop_pole(f * RationalFunction::pole(x0, n), x0);
}

// x^n f with the polynomial part of degree >= 1 dropped: x^n times the remainder at infinity.
RationalFunction remainder_at_infinity(const RationalFunction& f, int n) {
  RationalFunction g = RationalFunction(Polynomial::monomial(n)) * f;
  return RationalFunction(Polynomial(g.poly_part()[0]), g.terms());
}

Symbol composite(const InnerFunction& alpha, const InnerFunction& theta, const RationalFunction& a_plus,
                 const RationalFunction& a_minus) {
  return Symbol(std::vector<SymbolTerm>{{1.0, {{theta, true, "theta"}}, a_plus}, {1.0, {{alpha, false, "alpha"}}, a_minus}});
}

}  // namespace

Symbol finite_rank_symbol(FiniteRankKind kind, int n, const RankOneParams& p, const InnerFunction& alpha,
                          const InnerFunction& theta) {
  if (n < 1) throw MathError(ErrorKind::InvalidParams, "order must be at least 1");
  if (alpha.domain() != Domain::half_plane || theta.domain() != Domain::half_plane)
    throw MathError(ErrorKind::DomainMismatch, "rank-one symbols are defined on the half-plane");
  switch (kind) {
    case FiniteRankKind::pole_alpha:
      require_upper(p.z_plus);
      return Symbol(std::vector<SymbolTerm>{{1.0, {{alpha, false, "alpha"}}, RationalFunction::pole(p.z_plus, n)}});
    case FiniteRankKind::pole_theta:
      require_upper(p.z_plus);
      return Symbol(
          std::vector<SymbolTerm>{{1.0, {{theta, true, "theta"}}, RationalFunction::pole(std::conj(p.z_plus), n)}});
    case FiniteRankKind::boundary:
      if (!std::isfinite(p.xi0)) throw MathError(ErrorKind::InvalidParams, "boundary point must be finite");
      return composite(alpha, theta, -remainder_at(alpha.rational(), p.xi0, n),
                       remainder_at(theta.reciprocal(), p.xi0, n));
    case FiniteRankKind::infinity:
      return composite(alpha, theta, -remainder_at_infinity(alpha.rational(), n),
                       remainder_at_infinity(theta.reciprocal(), n));
  }
  throw MathError(ErrorKind::InvalidParams, "unknown finite-rank kind");
}

Symbol rank_one_symbol(RankOneKind kind, const RankOneParams& p, const InnerFunction& alpha,
                       const InnerFunction& theta) {
  switch (kind) {
    case RankOneKind::F2a: return finite_rank_symbol(FiniteRankKind::pole_alpha, 1, p, alpha, theta);
    case RankOneKind::F2b: return finite_rank_symbol(FiniteRankKind::pole_theta, 1, p, alpha, theta);
    case RankOneKind::F4: return finite_rank_symbol(FiniteRankKind::boundary, 1, p, alpha, theta);
    case RankOneKind::F6: return finite_rank_symbol(FiniteRankKind::infinity, 1, p, alpha, theta);
  }
  throw MathError(ErrorKind::InvalidParams, "unknown rank-one kind");
}

CheckReport verify_rank_one_action(RankOneKind kind, const RankOneParams& p, const InnerFunction& alpha,
                                   const InnerFunction& theta, const std::vector<cplx>& test_points,
                                   const Tolerances& tol) {
  CheckReport rep;
  rep.id = std::string("rank_one.") + to_string(kind);
  Symbol g = rank_one_symbol(kind, p, alpha, theta);
  AttoOperator a = build_A(g, alpha, theta, tol);
  CMat on = a.orthonormal();
  rep.check("sigma2_over_sigma1", sigma_ratio(on), tol.rank);
  rep.dimension("rank", numerical_rank(on, tol.rank));
  const double anorm = on.norm();
  const cplx z = p.z_plus;
  const double x0 = p.xi0;
  for (cplx w : test_points) {
    SpaceElement k = kernel_k(theta, w, tol);
    RationalFunction out = a.codomain_element(a.matrix * k.coords);
    CVec out_on = on * a.domain->orthonormal_of(k.rational);
    RationalFunction expected;
    const double denom = std::max(anorm * l2_norm(k.rational), 1e-300);
    switch (kind) {
      case RankOneKind::F2a:
        expected = k.rational(z) * kernel_ktilde(alpha, z, tol).rational;
        break;
      case RankOneKind::F2b: {
        // Residue computation: +(conj(theta) k_w)(conj z) k^alpha_z.
        cplx coeff = theta.reciprocal()(std::conj(z)) * k.rational(std::conj(z));
        expected = coeff * kernel_k(alpha, z, tol).rational;
        if (theta.multiplicity_of(z) == 0) {
          // As printed: -(conj(theta) k_w)(z) k^theta_z, reported only.
          cplx printed = -theta.reciprocal()(z) * k.rational(z);
          RationalFunction lit = printed * kernel_k(theta, z, tol).rational;
          rep.record("printed_formula_residual", l2_norm(out - lit) / denom);
        }
        break;
      }
      case RankOneKind::F4: {
        cplx coeff = -std::conj(theta(x0)) * k.rational(x0);
        expected = coeff * drop_pole((alpha.rational() - RationalFunction(alpha(x0))) * RationalFunction::pole(x0), x0);
        break;
      }
      case RankOneKind::F6: {
        cplx coeff = std::conj(theta(w)) - std::conj(theta.value_at_infinity());
        expected = coeff * (alpha.rational() - RationalFunction(alpha.value_at_infinity()));
        // As printed the last factor reads k_w^alpha; reported only.
        RationalFunction lit = coeff * kernel_k(alpha, w, tol).rational;
        rep.record("printed_formula_residual", l2_norm(out - lit) / denom);
        break;
      }
    }
    rep.check("action_residual", (out_on - a.codomain->orthonormal_of(expected)).norm() / denom, tol.op);
  }
  return rep;
}

// ------------------------------------------------------------------------------------------
// Defect operators

DefectResult defect_operators(const InnerFunction& alpha, const InnerFunction& theta, const Tolerances& tol) {
  if (!divides(alpha, theta, tol)) throw MathError(ErrorKind::NotADivisor, "defect operators need alpha | theta");
  auto ka = make_space_or_zero(alpha, tol);
  auto kt = make_space_or_zero(theta, tol);
  const InnerFunction r = InnerFunction::blaschke(kI, 1, alpha.domain());
  AttoOperator shift = build_A(Symbol::inner(r), ka, kt);             // K_theta -> K_alpha
  AttoOperator back = build_A(Symbol::inner(r, true), kt, ka);        // K_alpha -> K_theta
  AttoOperator proj = build_A(Symbol(1.0), ka, kt);                   // P_alpha on K_theta
  CMat embed = embedding_matrix(*ka, *kt);
  const int na = ka->dim(), nt = kt->dim();

  DefectResult res;
  res.right = CMat::Identity(na, na) - shift.matrix * back.matrix;
  res.left = embed * proj.matrix - back.matrix * shift.matrix;
  CheckReport& rep = res.report;
  rep.id = "defect";
  const double scale = op_scale({shift.frobenius(), back.frobenius()});
  rep.dimension("dim_alpha", na);
  rep.dimension("dim_theta", nt);

  SpaceElement ki = kernel_k(alpha, kI, tol);
  SpaceElement kti = kernel_ktilde(alpha, kI, tol);
  // Right defect: phi -> 2i phi(i) k_i^alpha on K_alpha.
  CMat expected_right(na, na);
  for (int j = 0; j < na; ++j) expected_right.col(j) = 2.0 * kI * ka->basis()[j](kI) * ki.coords;
  rep.check("right_action_residual", frobenius_between(res.right - expected_right, *ka, *ka) / scale, tol.op);
  // Left defect: phi -> -2i phi_-(-i) ktilde_i^alpha, phi_- = conj(alpha) P_alpha phi.
  CMat expected_left(nt, nt);
  CVec kti_in_theta = embed * kti.coords;
  for (int j = 0; j < nt; ++j) {
    RationalFunction pa = ka->combine(proj.matrix.col(j));
    RationalFunction minus = riesz_minus(alpha.reciprocal() * pa, alpha.domain(), tol);
    expected_left.col(j) = -2.0 * kI * minus(-kI) * kti_in_theta;
  }
  rep.check("left_action_residual", frobenius_between(res.left - expected_left, *kt, *kt) / scale, tol.op);

  CMat right_on = ka->to_orthonormal(res.right);
  CMat left_on = kt->to_orthonormal(res.left);
  rep.check("right_sigma2_over_sigma1", sigma_ratio(right_on), tol.rank);
  rep.check("left_sigma2_over_sigma1", sigma_ratio(left_on), tol.rank);
  if (na > 0) {
    CMat kspan = range_basis(ka->to_orthonormal(ki.coords), tol.rank);
    CMat ktspan = range_basis(kt->to_orthonormal(kti_in_theta), tol.rank);
    rep.check("right_range_residual", subspace_residual(kspan, range_basis(right_on, tol.rank)), tol.ker);
    rep.check("left_range_residual", subspace_residual(ktspan, range_basis(left_on, tol.rank)), tol.ker);
  }
  return res;
}

// ------------------------------------------------------------------------------------------

CheckReport analytic_identities_check(const RationalFunction& g_plus, const RationalFunction& f_plus,
                                      const InnerFunction& alpha, const InnerFunction& beta,
                                      const InnerFunction& theta, const Tolerances& tol) {
  require_analytic(g_plus, "g_plus");
  require_analytic(f_plus, "f_plus");
  if (!divides(alpha, beta, tol) || !divides(beta, theta, tol))
    throw MathError(ErrorKind::NotADivisor, "identities need alpha | beta | theta");
  CheckReport rep;
  rep.id = "analytic_identities";
  auto ka = make_space_or_zero(alpha, tol);
  auto kb = make_space_or_zero(beta, tol);
  auto kt = make_space_or_zero(theta, tol);

  // All products are taken in orthonormal coordinates, where C acts as x -> Co conj(x).
  // A^{alpha,beta}_g A^{beta,theta}_f = A^{alpha,theta}_{gf}
  CMat gab = build_A(g_plus, ka, kb).orthonormal();
  CMat fbt = build_A(f_plus, kb, kt).orthonormal();
  CMat gft = build_A(g_plus * f_plus, ka, kt).orthonormal();
  double scale = op_scale({gab.norm(), fbt.norm()});
  rep.check("product_residual", (gab * fbt - gft).norm() / scale, tol.op);

  // (A^theta_g)^3 = A^theta_{g^3}
  CMat gt = build_A(g_plus, kt, kt).orthonormal();
  CMat g3 = build_A(g_plus * g_plus * g_plus, kt, kt).orthonormal();
  scale = op_scale({gt.norm(), gt.norm(), gt.norm()});
  rep.check("power_residual", (gt * gt * gt - g3).norm() / scale, tol.op);

  // A^{alpha,theta}_g P_theta phi = A^alpha_g P_alpha phi on K_theta
  CMat gat = build_A(g_plus, ka, kt).orthonormal();
  CMat ga = build_A(g_plus, ka, ka).orthonormal();
  CMat pa = build_A(Symbol(1.0), ka, kt).orthonormal();
  scale = op_scale({gat.norm()});
  rep.check("restriction_residual", (gat - ga * pa).norm() / scale, tol.op);

  if (ka->dim() > 0) {
    CMat ca = conjugation_orthonormal(ka);
    CMat embed = embedding_orthonormal(*ka, *kt);
    // C_alpha A^{alpha,theta}_g C_alpha = A^alpha_{conj g} on K_alpha, for a non-analytic g.
    RationalFunction g = g_plus + f_plus.conj_reflect();
    CMat gen = build_A(g, ka, kt).orthonormal();
    CMat genbar = build_A(g.conj_reflect(), ka, ka).orthonormal();
    CMat lhs = ca * (gen * embed * ca).conjugate();
    scale = op_scale({gen.norm()});
    rep.check("c_symmetry_residual", (lhs - genbar).norm() / scale, tol.op);

    // C_alpha A^{alpha,theta}_{g+} = A^alpha_{conj g+} C_alpha, both conjugate-linear on K_theta.
    CMat gbar = build_A(g_plus.conj_reflect(), ka, ka).orthonormal();
    CMat left = ca * gat.conjugate();
    CMat right = gbar * ca * pa.conjugate();
    rep.check("conjugate_intertwining_residual", (left - right).norm() / scale, tol.op);

    // C_alpha is an involution on K_alpha.
    rep.check("involution_residual", (ca * ca.conjugate() - CMat::Identity(ka->dim(), ka->dim())).norm(), tol.op);
  }
  return rep;
}

}  // namespace tto
