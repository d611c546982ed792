#include "tto/modelspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "tto/errors.hpp"
#include "tto/report.hpp"

namespace tto {

namespace {

bool inside(Domain d, cplx z) { return d == Domain::half_plane ? z.imag() > 0 : std::abs(z) < 1.0; }

void require_inside(Domain d, cplx w) {
  if (!inside(d, w))
    throw MathError(ErrorKind::NotInUpperHalfPlane,
                    d == Domain::half_plane ? "point is not in the upper half-plane" : "point is not in the disc");
}

double relative(double num, double den) { return den > 0 ? num / den : num; }

// Rounding allowance per unit of coefficient-to-norm ratio.
constexpr double kRepresentationFloor = 1024 * std::numeric_limits<double>::epsilon();

}  // namespace

ModelSpace::ModelSpace(InnerFunction theta, const Tolerances& tol, bool allow_trivial)
    : theta_(std::move(theta)), tol_(tol) {
  if (theta_.degree() == 0 && !allow_trivial)
    throw MathError(ErrorKind::DegenerateSpace, "model space of a constant inner function is {0}");
  const Domain d = theta_.domain();
  for (const auto& z : theta_.zeros()) {
    for (int k = 1; k <= z.multiplicity; ++k) {
      if (d == Domain::half_plane) {
        entries_.push_back({std::conj(z.location), k, false});
        basis_.push_back(RationalFunction::pole(std::conj(z.location), k));
      } else if (z.location == cplx{}) {
        entries_.push_back({cplx{}, k, true});
        basis_.emplace_back(Polynomial::monomial(k - 1));
      } else {
        cplx p = 1.0 / std::conj(z.location);
        entries_.push_back({p, k, false});
        basis_.push_back(RationalFunction::pole(p, k));
      }
    }
  }
  const int n = dim();
  gram_ = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cplx v = inner_product(basis_[j], basis_[i], d, tol_);
      gram_(i, j) = v;
      gram_(j, i) = std::conj(v);
    }
  for (int i = 0; i < n; ++i) gram_(i, i) = gram_(i, i).real();
  if (n > 0) {
    Eigen::LLT<CMat> llt(gram_);
    if (llt.info() != Eigen::Success) throw MathError(ErrorKind::DegenerateSpace, "Gram matrix is not positive definite");
    chol_ = llt.matrixL();
    Eigen::SelfAdjointEigenSolver<CMat> es(gram_, Eigen::EigenvaluesOnly);
    cond_ = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  } else {
    chol_ = CMat::Zero(0, 0);
  }
}

RationalFunction ModelSpace::combine(const CVec& coords) const {
  Polynomial poly;
  std::vector<PoleTerm> terms;
  for (int i = 0; i < dim(); ++i) {
    const auto& e = entries_[i];
    if (e.monomial) {
      poly += Polynomial::monomial(e.order - 1, coords(i));
      continue;
    }
    auto it = std::find_if(terms.begin(), terms.end(), [&](const PoleTerm& t) { return t.pole == e.pole; });
    if (it == terms.end()) {
      terms.push_back({e.pole, {}});
      it = terms.end() - 1;
    }
    if (static_cast<int>(it->coeffs.size()) < e.order) it->coeffs.resize(e.order, cplx{});
    it->coeffs[e.order - 1] += coords(i);
  }
  return RationalFunction(std::move(poly), std::move(terms));
}

CVec ModelSpace::coordinates(const RationalFunction& f, double* off_basis) const {
  CVec c(dim());
  for (int i = 0; i < dim(); ++i) {
    const auto& e = entries_[i];
    c(i) = e.monomial ? f.poly_part()[e.order - 1] : f.pole_coeff(e.pole, e.order);
  }
  if (off_basis) {
    double extra = 0;
    int mono = 0;
    for (const auto& e : entries_)
      if (e.monomial) mono = std::max(mono, e.order);
    const auto& pc = f.poly_part().coeffs();
    for (int k = mono; k < static_cast<int>(pc.size()); ++k) extra = std::max(extra, std::abs(pc[k]));
    for (const auto& t : f.terms()) {
      int keep = 0;
      for (const auto& e : entries_)
        if (!e.monomial && std::abs(e.pole - t.pole) <= RationalFunction::pole_merge_tol * std::max(1.0, std::abs(e.pole)))
          keep = std::max(keep, e.order);
      for (int k = keep; k < t.order(); ++k) extra = std::max(extra, std::abs(t.coeffs[k]));
    }
    *off_basis = relative(extra, f.scale());
  }
  return c;
}

bool ModelSpace::contains(const RationalFunction& f, double rel) const {
  double off = 0;
  coordinates(f, &off);
  return off <= rel;
}

CVec ModelSpace::gram_solve(const CVec& rhs) const {
  if (dim() == 0) return CVec(0);
  CVec y = chol_.triangularView<Eigen::Lower>().solve(rhs);
  return chol_.adjoint().triangularView<Eigen::Upper>().solve(y);
}

double ModelSpace::norm(const CVec& coords) const {
  if (dim() == 0) return 0.0;
  return (chol_.adjoint() * coords).norm();
}

CVec ModelSpace::orthonormal_of(const RationalFunction& f) const {
  CVec s(dim());
  for (int i = 0; i < dim(); ++i) s(i) = inner_product(f, basis_[i], theta_.domain(), tol_);
  return chol_.triangularView<Eigen::Lower>().solve(s);
}

CMat ModelSpace::to_orthonormal(const CMat& coords) const { return chol_.adjoint() * coords; }

CMat ModelSpace::from_orthonormal(const CMat& coords) const {
  if (dim() == 0) return CMat::Zero(0, coords.cols());
  return chol_.adjoint().triangularView<Eigen::Upper>().solve(coords);
}

SpacePtr make_space(const InnerFunction& theta, const Tolerances& tol) {
  return std::make_shared<const ModelSpace>(theta, tol, false);
}

SpacePtr make_space_or_zero(const InnerFunction& theta, const Tolerances& tol) {
  return std::make_shared<const ModelSpace>(theta, tol, true);
}

SpaceElement make_element(const SpacePtr& space, const CVec& coords) {
  return {space, coords, space->combine(coords)};
}

SpaceElement element_of(const SpacePtr& space, const RationalFunction& f, double rel) {
  double off = 0;
  CVec c = space->coordinates(f, &off);
  if (off > rel) throw MathError(ErrorKind::FormulaMismatch, "function is not in the model space");
  return make_element(space, c);
}

RationalFunction apply_projection(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol) {
  const Domain d = theta.domain();
  RationalFunction m = riesz_minus(theta.reciprocal() * f, d, tol);
  return riesz_plus(theta.rational() * m, d, tol);
}

RationalFunction apply_projection_alt(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol) {
  const Domain d = theta.domain();
  RationalFunction p = riesz_plus(f, d, tol);
  return theta.rational() * riesz_minus(theta.reciprocal() * p, d, tol);
}

SpaceElement project_theta(const SpacePtr& space, const RationalFunction& f, ProjectionDiagnostics* diag) {
  const auto& tol = space->tolerances();
  const Domain d = space->domain();
  const InnerFunction& theta = space->theta();
  RationalFunction p1 = apply_projection(theta, f, tol);
  RationalFunction p2 = apply_projection_alt(theta, f, tol);
  ProjectionDiagnostics dg;
  const double nf = l2_norm(f, d, tol);
  // boundary_size: the difference of two near-zero results can carry a non-decaying rounding tail.
  dg.formula_residual = relative(boundary_size(p1 - p2, d, tol), nf);
  CVec c = space->coordinates(p1, &dg.off_basis);
  if (space->dim() > 0) {
    CVec rhs(space->dim());
    for (int i = 0; i < space->dim(); ++i) rhs(i) = inner_product(f, space->basis()[i], d, tol);
    CVec cg = space->gram_solve(rhs);
    dg.gram_residual = relative(space->norm(c - cg), nf);
  }
  if (diag) *diag = dg;
  // A badly scaled input (coefficients far above its norm) is itself only known to eps * scale.
  const double limit = std::max(space->tol_proj(), kRepresentationFloor * f.scale() / std::max(nf, 1e-300));
  if (dg.formula_residual > limit)
    throw MathError(ErrorKind::FormulaMismatch, "the two projection formulas disagree: " + fmt(dg.formula_residual));
  if (dg.gram_residual > limit || dg.off_basis > limit)
    throw MathError(ErrorKind::FormulaMismatch, "projection coordinates disagree with the Gram solve: " +
                                                      fmt(std::max(dg.gram_residual, dg.off_basis)) + " > " + fmt(limit));
  return make_element(space, c);
}

SpaceElement project_theta(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol) {
  return project_theta(make_space_or_zero(theta, tol), f);
}

SpaceElement project_fast(const SpacePtr& space, const RationalFunction& f) {
  RationalFunction p = apply_projection(space->theta(), f, space->tolerances());
  return make_element(space, space->coordinates(p));
}

RationalFunction q_theta(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol) {
  return riesz_plus(f, theta.domain(), tol) - project_theta(theta, f, tol).rational;
}

SpaceElement kernel_k(const InnerFunction& theta, cplx w, const Tolerances& tol) {
  const Domain d = theta.domain();
  require_inside(d, w);
  RationalFunction num = RationalFunction(1.0) - std::conj(theta(w)) * theta.rational();
  RationalFunction den_inv;
  if (d == Domain::half_plane)
    den_inv = RationalFunction::pole(std::conj(w));
  else if (w == cplx{})
    den_inv = RationalFunction(1.0);
  else
    den_inv = RationalFunction::pole(1.0 / std::conj(w), 1, -1.0 / std::conj(w));
  auto space = make_space_or_zero(theta, tol);
  return element_of(space, num * den_inv, space->tol_proj());
}

SpaceElement kernel_ktilde(const InnerFunction& theta, cplx w, const Tolerances& tol) {
  require_inside(theta.domain(), w);
  RationalFunction q = (theta.rational() - RationalFunction(theta(w))) * RationalFunction::pole(w);
  // The pole at w is removable.
  q = q.filtered([&](cplx p) { return std::abs(p - w) > RationalFunction::pole_merge_tol * std::max(1.0, std::abs(w)); },
                 true);
  auto space = make_space_or_zero(theta, tol);
  return element_of(space, q, space->tol_proj());
}

SpaceElement conjugation_C(const SpacePtr& space, const RationalFunction& f) {
  SpaceElement p = project_theta(space, f);
  RationalFunction c = space->theta().rational() * boundary_conj(p.rational, space->domain());
  return element_of(space, c, space->tol_proj());
}

SpaceElement conjugation_C(const InnerFunction& theta, const RationalFunction& f, const Tolerances& tol) {
  return conjugation_C(make_space_or_zero(theta, tol), f);
}

ShiftedSpace shifted_space(const InnerFunction& alpha, const InnerFunction& theta, const Tolerances& tol) {
  if (!divides(alpha, theta, tol)) throw MathError(ErrorKind::NotADivisor, "alpha does not divide theta");
  ShiftedSpace s;
  s.ambient = make_space_or_zero(theta, tol);
  s.shift = alpha;
  s.quotient = make_space_or_zero(divide_exact(theta, alpha, tol), tol);
  const int n = s.ambient->dim(), m = s.quotient->dim();
  const double rel = s.ambient->tol_proj();
  s.embedding = CMat::Zero(n, m);
  for (int i = 0; i < m; ++i) {
    s.basis.push_back(alpha.rational() * s.quotient->basis()[i]);
    s.embedding.col(i) = element_of(s.ambient, s.basis.back(), rel).coords;
  }
  auto alpha_space = make_space_or_zero(alpha, tol);
  CMat by_difference = CMat::Identity(n, n);
  CMat by_shift = CMat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const RationalFunction& e = s.ambient->basis()[j];
    SpaceElement pa = project_theta(alpha_space, e);
    by_difference.col(j) -= element_of(s.ambient, pa.rational, rel).coords;
    SpaceElement pq = project_theta(s.quotient, alpha.reciprocal() * e);
    by_shift.col(j) = element_of(s.ambient, alpha.rational() * pq.rational, rel).coords;
  }
  s.projection = by_difference;
  s.formula_residual = (by_difference - by_shift).norm() / std::max(1.0, by_difference.norm());
  if (s.formula_residual > rel)
    throw MathError(ErrorKind::FormulaMismatch, "the two shifted-space projection formulas disagree");
  return s;
}

}  // namespace tto
