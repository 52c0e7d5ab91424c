#include "nvol/valuation.hpp"

#include <limits>

namespace nvol {

std::vector<ExponentVector> active_set(const PolySupport& f, const NumericWeight& w, double rel_tol) {
  const auto val = monomial_valuation(f, w);
  std::vector<ExponentVector> out;
  for (const auto& [e, c] : f.terms()) {
    if (dot(w, e) - val.value <= rel_tol * val.value) out.push_back(e);
  }
  return out;
}

double nv_bound_or_inf(const PolySupport& f, std::span<const double> w, int n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double prod = 1.0;
  for (double x : w) {
    if (!(x > 0.0)) return kInf;
    sum += x;
    prod *= x;
  }
  double v = kInf;
  for (const auto& [e, c] : f.terms()) {
    double s = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) s += w[i] * e[i];
    v = std::min(v, s);
  }
  const double ld = sum - v;
  if (!(ld > 0.0) || !(prod > 0.0)) return kInf;
  const double value = std::pow(ld, n) * v / prod;
  return std::isfinite(value) ? value : kInf;
}

}  // namespace nvol
