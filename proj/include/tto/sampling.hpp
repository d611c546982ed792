#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tto/inner.hpp"
#include "tto/rational.hpp"

namespace tto {

// Seeded generator of well-conditioned test data. Half-plane zeros have Im in [0.5, 3] and
// |Re| <= 3 with pairwise separation >= 0.3; disc zeros have |a| <= 0.8; coefficients lie in the
// unit disc.
class CaseGenerator {
 public:
  explicit CaseGenerator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive
  cplx unit_coeff();
  cplx upper_point();
  cplx lower_point() { return std::conj(upper_point()); }
  cplx disc_point(double radius = 0.8);
  // Disc zeros stay in the annulus 0.4 <= |z| <= 0.85. A zero near the origin puts its basis pole
  // 1/conj(z) far out, where the pole basis of a repeated zero is close to collinear.
  cplx disc_zero();

  // Degree exactly deg; repeated zeros allowed when confluent is set.
  InnerFunction inner(Domain d, int deg, bool confluent = false);
  // Random sub-multiset of theta's zeros.
  InnerFunction divisor_of(const InnerFunction& theta);

  // Decaying rational with poles in the lower (plus) or upper (minus) half-plane.
  RationalFunction h_plus(int poles);
  RationalFunction h_minus(int poles);
  // Bounded rational on the line with poles on both sides and a constant.
  RationalFunction bounded(int poles_each_side);
  // Outer bounded analytic function (x - q) / (x - p), q and p in the lower half-plane.
  RationalFunction outer();
  // Disc rational with poles at modulus >= 1.4 (analytic) and optionally <= 0.7.
  RationalFunction disc_rational(int outside, int inside);

 private:
  std::vector<cplx> separated(Domain d, int count);
  std::mt19937_64 rng_;
};

}  // namespace tto
