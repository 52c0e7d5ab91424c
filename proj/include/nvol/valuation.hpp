#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

#include "nvol/error.hpp"
#include "nvol/rational.hpp"
#include "nvol/support.hpp"

namespace nvol {

namespace detail {
inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline int sign_of(const Rational& x) { return x.sign(); }
inline int sign_of(const SurdValue& x) { return x.sign(); }
}  // namespace detail

// Strictly positive weight per ambient variable. Scalar is Rational (exact),
// SurdValue (exact, one quadratic field) or double (numeric).
template <typename Scalar>
class WeightVector {
 public:
  explicit WeightVector(std::vector<Scalar> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw Error(ErrorKind::kInvalidArgument, "empty weight vector");
    for (const auto& w : entries_) {
      if (detail::sign_of(w) <= 0) {
        throw Error(ErrorKind::kInvalidArgument, "weights must be strictly positive");
      }
      if constexpr (std::is_same_v<Scalar, double>) {
        if (!std::isfinite(w)) throw Error(ErrorKind::kInvalidArgument, "weights must be finite");
      }
    }
  }

  std::size_t size() const { return entries_.size(); }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  Scalar sum() const {
    Scalar s(0);
    for (const auto& w : entries_) s += w;
    return s;
  }

  Scalar product() const {
    Scalar p(1);
    for (const auto& w : entries_) p *= w;
    return p;
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Scalar> entries_;
};

using ExactWeight = WeightVector<Rational>;
using SurdWeight = WeightVector<SurdValue>;
using NumericWeight = WeightVector<double>;

template <typename Scalar>
struct Valuation {
  Scalar value;
  std::vector<ExponentVector> active;  // exponents attaining the minimum
};

template <typename Scalar>
struct BoundEvaluation {
  Scalar v;          // v_w(f)
  Scalar w_sum;
  Scalar w_prod;
  Scalar ld_factor;  // w_sum - v
  Scalar bound;      // ld_factor^n * v / w_prod
  int n;
  std::vector<ExponentVector> active;
};

template <typename Scalar>
Scalar dot(const WeightVector<Scalar>& w, const ExponentVector& a) {
  Scalar s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) s += w[i] * Scalar(a[i]);
  }
  return s;
}

// min over the support of w.a, with every attaining exponent. Exact flavors
// record exact ties; the numeric flavor records exact floating ties, so use
// active_set() with a tolerance when that matters.
template <typename Scalar>
Valuation<Scalar> monomial_valuation(const PolySupport& f, const WeightVector<Scalar>& w) {
  if (static_cast<int>(w.size()) != f.nvars()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "weight has " + std::to_string(w.size()) + " entries, support has " +
                    std::to_string(f.nvars()) + " variables");
  }
  std::optional<Scalar> best;
  std::vector<ExponentVector> active;
  for (const auto& [e, c] : f.terms()) {
    Scalar value = dot(w, e);
    if (!best || value < *best) {
      best = std::move(value);
      active.assign(1, e);
    } else if (value == *best) {
      active.push_back(e);
    }
  }
  return {std::move(*best), std::move(active)};
}

// Exponents whose w.a lies within rel_tol * v of the minimum.
std::vector<ExponentVector> active_set(const PolySupport& f, const NumericWeight& w, double rel_tol);

// Upper bound ((sum w) - v)^n * v / prod(w) on the local volume of the
// hypersurface germ f = 0 in (n+1)-space. The value depends only on the ray
// of w. Weights with sum w <= v certify nothing and are rejected.
template <typename Scalar>
BoundEvaluation<Scalar> nv_bound(const PolySupport& f, const WeightVector<Scalar>& w,
                                 std::optional<int> n = std::nullopt) {
  const int dim = n.value_or(f.nvars() - 1);
  if (dim < 2) throw Error(ErrorKind::kInvalidArgument, "dimension n must be at least 2");
  Valuation<Scalar> val = monomial_valuation(f, w);
  BoundEvaluation<Scalar> out{val.value, w.sum(), w.product(), Scalar(0), Scalar(0), dim,
                              std::move(val.active)};
  out.ld_factor = out.w_sum - out.v;
  if (detail::sign_of(out.ld_factor) <= 0) {
    throw Error(ErrorKind::kInvalidWeight, "weight sum does not exceed v_w(f); no volume bound");
  }
  Scalar power(1);
  for (int i = 0; i < dim; ++i) power *= out.ld_factor;
  out.bound = power * out.v / out.w_prod;
  return out;
}

// Numeric objective used by the optimizer: the bound, or +inf where the
// weight is invalid or the arithmetic is not finite.
double nv_bound_or_inf(const PolySupport& f, std::span<const double> w, int n);

}  // namespace nvol
