#include "tto/sampling.hpp"

#include <cmath>

namespace tto {

double CaseGenerator::uniform(double lo, double hi) {
  // 53 random bits; std::uniform_real_distribution is not reproducible across standard libraries.
  double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int CaseGenerator::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng_() % span);
}

cplx CaseGenerator::unit_coeff() {
  return std::polar(std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * kPi));
}

cplx CaseGenerator::upper_point() { return {uniform(-3.0, 3.0), uniform(0.5, 3.0)}; }

cplx CaseGenerator::disc_point(double radius) {
  return std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * kPi));
}

cplx CaseGenerator::disc_zero() {
  constexpr double lo = 0.4, hi = 0.85;
  return std::polar(std::sqrt(uniform(lo * lo, hi * hi)), uniform(0.0, 2.0 * kPi));
}

std::vector<cplx> CaseGenerator::separated(Domain d, int count) {
  // Pseudo-hyperbolic separation: conditioning of the pole basis depends on |z - w| / |z - conj w|
  // (or |z - w| / |1 - conj(w) z| on the disc), not on the Euclidean distance.
  constexpr double kSeparation = 0.3;
  auto rho = [d](cplx z, cplx w) {
    return std::abs(z - w) / std::abs(d == Domain::half_plane ? z - std::conj(w) : 1.0 - std::conj(w) * z);
  };
  std::vector<cplx> pts;
  while (static_cast<int>(pts.size()) < count) {
    cplx z = d == Domain::half_plane ? upper_point() : disc_zero();
    bool ok = true;
    for (cplx p : pts) ok = ok && rho(p, z) >= kSeparation;
    if (ok) pts.push_back(z);
  }
  return pts;
}

InnerFunction CaseGenerator::inner(Domain d, int deg, bool confluent) {
  std::vector<BlaschkeZero> zs;
  if (deg <= 0) return InnerFunction::identity(d);
  if (!confluent) {
    for (cplx z : separated(d, deg)) zs.push_back({z, 1});
  } else {
    int distinct = deg == 1 ? 1 : integer(1, deg - 1);
    auto pts = separated(d, distinct);
    std::vector<int> mult(distinct, 1);
    for (int k = distinct; k < deg; ++k) ++mult[integer(0, distinct - 1)];
    for (int j = 0; j < distinct; ++j) zs.push_back({pts[j], mult[j]});
  }
  return InnerFunction(d, zs);
}

InnerFunction CaseGenerator::divisor_of(const InnerFunction& theta) {
  std::vector<BlaschkeZero> pick;
  for (const auto& z : theta.zeros()) {
    int m = integer(0, z.multiplicity);
    if (m > 0) pick.push_back({z.location, m});
  }
  return InnerFunction(theta.domain(), pick);
}

RationalFunction CaseGenerator::h_plus(int poles) {
  RationalFunction f;
  for (int k = 0; k < poles; ++k) f += RationalFunction::pole(lower_point(), 1, unit_coeff());
  return f;
}

RationalFunction CaseGenerator::h_minus(int poles) {
  RationalFunction f;
  for (int k = 0; k < poles; ++k) f += RationalFunction::pole(upper_point(), 1, unit_coeff());
  return f;
}

RationalFunction CaseGenerator::bounded(int poles_each_side) {
  return RationalFunction(unit_coeff()) + h_plus(poles_each_side) + h_minus(poles_each_side);
}

RationalFunction CaseGenerator::outer() {
  cplx q = lower_point(), p = lower_point();
  return RationalFunction(1.0) + RationalFunction::pole(p, 1, p - q);
}

RationalFunction CaseGenerator::disc_rational(int outside, int inside) {
  RationalFunction f(unit_coeff());
  for (int k = 0; k < outside; ++k) {
    cplx p = std::polar(uniform(1.4, 3.0), uniform(0.0, 2.0 * kPi));
    f += RationalFunction::pole(p, 1, unit_coeff());
  }
  for (int k = 0; k < inside; ++k) {
    cplx p = std::polar(uniform(0.1, 0.7), uniform(0.0, 2.0 * kPi));
    f += RationalFunction::pole(p, 1, 0.3 * unit_coeff());
  }
  return f;
}

}  // namespace tto
