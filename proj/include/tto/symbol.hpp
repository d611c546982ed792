#pragma once

#include <string>
#include <vector>

#include "tto/inner.hpp"
#include "tto/rational.hpp"
#include "tto/tolerances.hpp"

namespace tto {

struct InnerFactor {
  InnerFunction inner;
  bool conjugated = false;
  std::string ref;  // name used in JSON ("theta", "alpha", ...), empty for inline data
};

struct SymbolTerm {
  cplx coeff = 1.0;
  std::vector<InnerFactor> inner;
  RationalFunction rational = RationalFunction(1.0);
};

// Sum of coeff * (inner factors, conjugated ones as 1/f) * rational.
class Symbol {
 public:
  Symbol() = default;
  Symbol(RationalFunction g);  // NOLINT(google-explicit-constructor)
  Symbol(cplx c) : Symbol(RationalFunction(c)) {}  // NOLINT(google-explicit-constructor)
  Symbol(double c) : Symbol(RationalFunction(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Symbol(std::vector<SymbolTerm> terms) : terms_(std::move(terms)) {}

  static Symbol inner(const InnerFunction& f, bool conjugated = false, std::string ref = {});

  const std::vector<SymbolTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  RationalFunction flatten() const;
  // Flattened, with removable boundary poles dropped; throws RealPole/PoleOnBoundary/NotBounded.
  RationalFunction flatten_bounded(Domain d, const Tolerances& tol = {}) const;
  // Per term, the factors whose product is that term: the scaled rational part followed by the
  // elementary factors of each inner function. Residues taken factor by factor avoid the
  // cancellation in a merged partial-fraction expansion. Falls back to the single flattened symbol
  // when a term on its own has boundary poles or grows at infinity.
  std::vector<std::vector<RationalFunction>> factor_terms(Domain d, const Tolerances& tol = {}) const;
  // Boundary conjugate.
  Symbol conjugate(Domain d) const;

  Symbol& operator+=(const Symbol& o);
  friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
  friend Symbol operator*(const Symbol& a, const Symbol& b);
  friend Symbol operator*(Symbol a, cplx s);

 private:
  std::vector<SymbolTerm> terms_;
};

}  // namespace tto
