#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nvol/rational.hpp"

namespace nvol {

// Exponents of one monomial x1^e1 * ... * xm^em.
class ExponentVector {
 public:
  explicit ExponentVector(std::vector<int> entries);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const int> entries() const { return entries_; }
  int degree() const;

  // Coordinatewise >= other (and not equal).
  bool dominates(const ExponentVector& other) const;

  std::string to_string() const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<int> entries_;
};

// Monomials of a polynomial germ vanishing at the origin. Terms are kept in
// lexicographic exponent order with nonzero coefficients.
class PolySupport {
 public:
  using TermMap = std::map<ExponentVector, Rational>;

  PolySupport(int nvars, TermMap terms);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::vector<ExponentVector> exponents() const;
  bool contains(const ExponentVector& e) const { return terms_.count(e) != 0; }

  std::string to_string() const;

  friend bool operator==(const PolySupport&, const PolySupport&) = default;

 private:
  int nvars_;
  TermMap terms_;
};

// Sums of signed terms in x1..x{nvars}; products, integer powers and
// parentheses are expanded. Coefficients are integers or p/q.
PolySupport parse_polynomial(std::string_view text, int nvars);

// Smallest total degree over the support.
int multiplicity(const PolySupport& f);

// Drops every monomial whose exponent dominates another one in the support.
// The minimum of w.a over the support is unchanged for every positive w.
PolySupport prune_support(const PolySupport& f);

// {"nvars": m, "terms": [{"exp": [...], "coef": "p/q"}, ...]}
nlohmann::json to_json(const PolySupport& f);
PolySupport support_from_json(const nlohmann::json& j);

}  // namespace nvol
