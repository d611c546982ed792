#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tto {

struct Tolerances {
  double zero = 1e-8;     // zero/pole matching distance
  double unimod = 1e-9;   // |phase| - 1
  double eval = 1e-9;     // pointwise reconstruction
  double real = 1e-8;     // pole distance to the boundary
  double proj = 1e-9;     // scaled by (1 + cond(Gram))
  double op = 1e-8;       // operator identities, scaled
  double zero_op = 1e-8;  // ||A||_F for zero symbols
  double rank = 1e-9;     // sigma_2 / sigma_1
  double ker = 1e-7;      // principal angles, subspace residuals
  double quad = 1e-6;     // quadrature agreement, relative

  double proj_for(double cond) const { return proj * (1.0 + cond); }

  // Returns false for an unknown name.
  bool set(const std::string& name, double value);
  std::vector<std::pair<std::string, double>> items() const;
};

inline constexpr int kMaxDegree = 12;

}  // namespace tto
