#pragma once

#include <vector>

#include "tto/atto.hpp"
#include "tto/report.hpp"

namespace tto {

// m(z) = i (1 - z) / (1 + z), disc to upper half-plane, and its inverse (i - x) / (i + x).
cplx cayley_m(cplx z);
cplx cayley_inv(cplx x);

// (V f)(x) = pi^{-1/2} (i + x)^{-1} f(m^{-1}(x)), an isometry from H2 of the disc (normalized
// arc length) onto H2 of the upper half-plane.
RationalFunction v_map(const RationalFunction& f_disc, const Tolerances& tol = {});

// theta o m^{-1} as a half-plane Blaschke product: zeros m(a_j), phase fitted on the line.
InnerFunction transfer_inner(const InnerFunction& theta_disc, const Tolerances& tol = {});
// g o m^{-1}, term by term.
Symbol transfer_symbol(const Symbol& g_disc, const Tolerances& tol = {});

// Matrix of V from the disc space to the half-plane space of the transferred inner function.
CMat v_matrix(const SpacePtr& disc, const SpacePtr& half);

// Gram matrix of V applied to 1, z, ..., z^n, against the identity.
double isometry_residual(int n, const Tolerances& tol = {});

// V A^{alpha,theta}_g = A^{transferred}_{transferred g} V on the disc model space, and the projection
// intertwining P_alpha V = V P_alpha on test functions.
CheckReport diagram_check(const Symbol& g_disc, const InnerFunction& alpha_disc, const InnerFunction& theta_disc,
                          const Tolerances& tol = {});

}  // namespace tto
