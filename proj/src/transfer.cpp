#include "tto/transfer.hpp"

#include <cmath>

#include "tto/errors.hpp"

namespace tto {

cplx cayley_m(cplx z) { return kI * (1.0 - z) / (1.0 + z); }
cplx cayley_inv(cplx x) { return (kI - x) / (kI + x); }

namespace {

RationalFunction compose_inv(const RationalFunction& f) { return f.compose_mobius(-1.0, kI, 1.0, kI); }

void require_disc(const InnerFunction& f) {
  if (f.domain() != Domain::disc) throw MathError(ErrorKind::DomainMismatch, "expected a disc inner function");
}

}  // namespace

RationalFunction v_map(const RationalFunction& f_disc, const Tolerances& tol) {
  check_boundary_poles(f_disc, Domain::disc, tol);
  return compose_inv(f_disc) * RationalFunction::pole(-kI, 1, 1.0 / std::sqrt(kPi));
}

InnerFunction transfer_inner(const InnerFunction& theta_disc, const Tolerances& tol) {
  require_disc(theta_disc);
  std::vector<BlaschkeZero> zs;
  for (const auto& z : theta_disc.zeros()) zs.push_back({cayley_m(z.location), z.multiplicity});
  InnerFunction plain(Domain::half_plane, zs, 1.0, tol);
  constexpr double kFit = 0.37;
  cplx ph = theta_disc(cayley_inv(kFit)) / plain(kFit);
  return plain.with_phase(ph / std::abs(ph));
}

Symbol transfer_symbol(const Symbol& g_disc, const Tolerances& tol) {
  std::vector<SymbolTerm> terms;
  for (const auto& t : g_disc.terms()) {
    SymbolTerm out;
    out.coeff = t.coeff;
    out.rational = compose_inv(t.rational);
    for (const auto& f : t.inner) out.inner.push_back({transfer_inner(f.inner, tol), f.conjugated, f.ref});
    terms.push_back(std::move(out));
  }
  return Symbol(std::move(terms));
}

CMat v_matrix(const SpacePtr& disc, const SpacePtr& half) {
  CMat v(half->dim(), disc->dim());
  for (int j = 0; j < disc->dim(); ++j)
    v.col(j) = element_of(half, v_map(disc->basis()[j], disc->tolerances()), half->tol_proj()).coords;
  return v;
}

double isometry_residual(int n, const Tolerances& tol) {
  std::vector<RationalFunction> images;
  for (int k = 0; k <= n; ++k) images.push_back(v_map(RationalFunction(Polynomial::monomial(k)), tol));
  double worst = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      cplx expected = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(l2_inner(images[j], images[i], tol) - expected));
    }
  return worst;
}

CheckReport diagram_check(const Symbol& g_disc, const InnerFunction& alpha_disc, const InnerFunction& theta_disc,
                          const Tolerances& tol) {
  require_disc(alpha_disc);
  require_disc(theta_disc);
  CheckReport rep;
  rep.id = "transfer.diagram";
  auto kt_d = make_space_or_zero(theta_disc, tol);
  auto ka_d = make_space_or_zero(alpha_disc, tol);
  const InnerFunction theta_h = transfer_inner(theta_disc, tol);
  const InnerFunction alpha_h = transfer_inner(alpha_disc, tol);
  auto kt_h = make_space_or_zero(theta_h, tol);
  auto ka_h = make_space_or_zero(alpha_h, tol);

  // The transferred inner functions agree with theta o m^{-1} on the line.
  double pointwise = 0;
  for (int k = 0; k < 20; ++k) {
    double x = std::tan(kPi * (k + 0.5) / 20.0 - 0.5 * kPi);
    pointwise = std::max(pointwise, std::abs(theta_h(x) - theta_disc(cayley_inv(x))));
    pointwise = std::max(pointwise, std::abs(alpha_h(x) - alpha_disc(cayley_inv(x))));
  }
  rep.check("inner_pointwise_residual", pointwise, tol.eval);

  CMat vt = v_matrix(kt_d, kt_h);
  CMat va = v_matrix(ka_d, ka_h);
  // V is unitary between the model spaces: V^H G_half V = G_disc.
  if (kt_d->dim() > 0) {
    CMat gram_err = vt.adjoint() * kt_h->gram() * vt - kt_d->gram();
    rep.check("model_space_isometry_residual", gram_err.norm() / std::max(1.0, kt_d->gram().norm()), tol.eval);
  }

  AttoOperator a_d = build_A(g_disc, ka_d, kt_d);
  AttoOperator a_h = build_A(transfer_symbol(g_disc, tol), ka_h, kt_h);
  const double scale = std::max({1.0, a_d.frobenius(), a_h.frobenius()});
  rep.check("diagram_residual", frobenius_between(va * a_d.matrix - a_h.matrix * vt, *ka_h, *kt_d) / scale, tol.op);
  rep.record("operator_norm", a_d.frobenius());

  // P_alpha V f = V P_alpha f on disc test functions.
  std::vector<RationalFunction> tests;
  for (int k = 0; k < 4; ++k) tests.emplace_back(Polynomial::monomial(k));
  for (cplx a : {cplx(0.3, 0.4), cplx(-0.6, 0.1)})
    tests.push_back(RationalFunction::pole(1.0 / std::conj(a), 1, -1.0 / std::conj(a)));  // 1 / (1 - conj(a) z)
  for (const auto& e : kt_d->basis()) tests.push_back(e);
  for (const auto& f : tests) {
    RationalFunction lhs = project_theta(ka_h, v_map(f, tol)).rational;
    RationalFunction rhs = v_map(project_theta(ka_d, f).rational, tol);
    rep.check("projection_intertwining_residual", l2_norm(lhs - rhs, Domain::half_plane, tol) /
                                                      std::max(1.0, l2_norm(f, Domain::disc, tol)),
              tol.op);
  }
  return rep;
}

}  // namespace tto
