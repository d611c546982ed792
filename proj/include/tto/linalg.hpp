#pragma once

#include "tto/types.hpp"

namespace tto {

Eigen::VectorXd singular_values(const CMat& m);
// Number of singular values above rel * sigma_1.
int numerical_rank(const CMat& m, double rel);
// sigma_2 / sigma_1, or 0 when there is no second singular value or m vanishes.
double sigma_ratio(const CMat& m);
// Orthonormal basis of the null space (threshold rel * sigma_1; a zero matrix has full null space).
CMat null_space(const CMat& m, double rel);
// Orthonormal basis of the column span.
CMat range_basis(const CMat& m, double rel);
// ||(I - Q1 Q1^H) Q2||_2 for orthonormal Q1, Q2: sine of the largest principal angle of span Q2 from span Q1.
double subspace_residual(const CMat& q1, const CMat& q2);
// Symmetric version; 1 when the dimensions differ.
double subspace_distance(const CMat& q1, const CMat& q2);

}  // namespace tto
