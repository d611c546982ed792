#include "tto/linalg.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace tto {

Eigen::VectorXd singular_values(const CMat& m) {
  if (m.size() == 0) return Eigen::VectorXd(0);
  return Eigen::JacobiSVD<CMat>(m).singularValues();
}

int numerical_rank(const CMat& m, double rel) {
  auto s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  while (r < s.size() && s(r) > rel * s(0)) ++r;
  return r;
}

double sigma_ratio(const CMat& m) {
  auto s = singular_values(m);
  if (s.size() < 2 || s(0) == 0.0) return 0.0;
  return s(1) / s(0);
}

CMat null_space(const CMat& m, double rel) {
  const int n = static_cast<int>(m.cols());
  if (m.rows() == 0 || n == 0) return CMat::Identity(n, n);
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s(0) > 0)
    while (r < s.size() && s(r) > rel * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

CMat range_basis(const CMat& m, double rel) {
  if (m.cols() == 0 || m.rows() == 0) return CMat::Zero(m.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s(0) > 0)
    while (r < s.size() && s(r) > rel * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

double subspace_residual(const CMat& q1, const CMat& q2) {
  if (q2.cols() == 0) return 0.0;
  CMat res = q2 - q1 * (q1.adjoint() * q2);
  if (q1.cols() == 0) res = q2;
  auto s = singular_values(res);
  return s.size() ? s(0) : 0.0;
}

double subspace_distance(const CMat& q1, const CMat& q2) {
  if (q1.cols() != q2.cols()) return 1.0;
  return std::max(subspace_residual(q1, q2), subspace_residual(q2, q1));
}

}  // namespace tto
