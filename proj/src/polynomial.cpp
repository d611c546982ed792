#include "tto/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "tto/errors.hpp"

namespace tto {

const char* to_string(Domain d) { return d == Domain::disc ? "disc" : "half_plane"; }

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(cplx constant) {
  if (constant != cplx{}) c_.push_back(constant);
}

Polynomial Polynomial::monomial(int degree, cplx c) {
  std::vector<cplx> v(degree + 1, cplx{});
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(cplx lead, const std::vector<cplx>& rts) {
  std::vector<cplx> v{lead};
  for (cplx r : rts) {
    std::vector<cplx> next(v.size() + 1, cplx{});
    for (size_t k = 0; k < v.size(); ++k) {
      next[k + 1] += v[k];
      next[k] -= r * v[k];
    }
    v = std::move(next);
  }
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

double Polynomial::max_abs() const {
  double m = 0;
  for (auto z : c_) m = std::max(m, std::abs(z));
  return m;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> v(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(v));
}

std::vector<cplx> Polynomial::shifted(cplx z, int n) const {
  // Repeated synthetic division by (x - z).
  std::vector<cplx> work = c_;
  std::vector<cplx> out(std::max(n, 0), cplx{});
  for (int k = 0; k < n && !work.empty(); ++k) {
    cplx acc{};
    std::vector<cplx> q(work.size() > 1 ? work.size() - 1 : 0);
    for (int j = static_cast<int>(work.size()) - 1; j >= 0; --j) {
      acc = acc * z + work[j];
      if (j > 0) q[j - 1] = acc;
    }
    out[k] = acc;
    work = std::move(q);
  }
  return out;
}

Polynomial Polynomial::trimmed(double rel) const {
  double cut = rel * max_abs();
  std::vector<cplx> v = c_;
  for (auto& z : v)
    if (std::abs(z) <= cut) z = cplx{};
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw MathError(ErrorKind::DivisionByZeroFunction, "polynomial division by zero");
  if (degree() < d.degree()) return {Polynomial{}, *this};
  std::vector<cplx> r = c_;
  std::vector<cplx> q(degree() - d.degree() + 1, cplx{});
  const cplx lead = d.leading();
  for (int k = degree() - d.degree(); k >= 0; --k) {
    cplx t = r[k + d.degree()] / lead;
    q[k] = t;
    for (int j = 0; j <= d.degree(); ++j) r[k + j] -= t * d.c_[j];
  }
  r.resize(d.degree());
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), cplx{});
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), cplx{});
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (auto& z : c_) z *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> v(a.c_.size() + b.c_.size() - 1, cplx{});
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(v));
}

std::vector<cplx> roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  CMat comp = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) comp(0, k) = -p[n - 1 - k] / p.leading();
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

std::vector<Root> clustered_roots(const Polynomial& p, double tol) {
  std::vector<cplx> r = roots(p);
  const int n = static_cast<int>(r.size());
  // A root of multiplicity m is perturbed by about eps^(1/m); widen the net accordingly.
  std::vector<int> label(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int j = 0; j < n; ++j) {
        if (label[j] >= 0) continue;
        for (int k = 0; k < n; ++k) {
          if (label[k] != next) continue;
          double scale = std::max(1.0, std::abs(r[k]));
          if (std::abs(r[j] - r[k]) <= tol * scale) {
            label[j] = next;
            grew = true;
            break;
          }
        }
      }
    }
    ++next;
  }
  std::vector<Root> out(next);
  std::vector<int> count(next, 0);
  for (int i = 0; i < n; ++i) {
    out[label[i]].value += r[i];
    ++count[label[i]];
  }
  for (int c = 0; c < next; ++c) {
    out[c].value /= static_cast<double>(count[c]);
    out[c].multiplicity = count[c];
  }
  return out;
}

}  // namespace tto
