#pragma once

#include <vector>

#include "nvol/rational.hpp"
#include "nvol/support.hpp"

namespace nvol {

// Dense univariate polynomial over Q, coefficients low to high degree.
// The zero polynomial has no coefficients; degree() is -1 for it.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coeff(int i) const;

  UPoly derivative() const;
  UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

  // Euclidean division over Q; divisor must be nonzero.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& quotient, UPoly& remainder);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly exact_quotient(const UPoly& a, const UPoly& b);

// Polynomial in (x, y), stored as a polynomial in y with coefficients in Q[x].
class BPoly {
 public:
  BPoly() = default;
  explicit BPoly(std::vector<UPoly> coeffs);
  // nvars must be 2; x = x1, y = x2.
  static BPoly from_support(const PolySupport& g);

  int degree_y() const { return static_cast<int>(coeffs_.size()) - 1; }
  int total_degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<UPoly>& coeffs() const { return coeffs_; }
  const UPoly& leading() const { return coeffs_.back(); }

  BPoly derivative_x() const;
  BPoly derivative_y() const;
  BPoly scaled(const UPoly& c) const;

  // gcd over Q[x] of the y-coefficients (monic).
  UPoly content() const;
  BPoly primitive_part() const;

  friend BPoly operator+(const BPoly& a, const BPoly& b);
  friend BPoly operator-(const BPoly& a, const BPoly& b);
  friend BPoly operator*(const BPoly& a, const BPoly& b);
  friend bool operator==(const BPoly&, const BPoly&) = default;

  // lc(b)^(deg a - deg b + 1) * a mod b, in the y variable.
  static BPoly pseudo_remainder(const BPoly& a, const BPoly& b);
  BPoly divided_by(const UPoly& c) const;

 private:
  void trim();
  std::vector<UPoly> coeffs_;
};

// gcd in Q[x, y], normalized up to a nonzero rational factor.
// The y-part is computed with the subresultant pseudo-remainder sequence.
BPoly gcd(const BPoly& a, const BPoly& b);

// True iff g has no repeated irreducible factor, i.e. gcd(g, dg/dx, dg/dy)
// is a constant.
bool is_reduced_bivariate(const PolySupport& g);

}  // namespace nvol
