#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nvol/rational.hpp"
#include "nvol/support.hpp"
#include "nvol/valuation.hpp"

namespace nvol {

struct OptimizerOptions {
  int grid_denominator = 60;
  double tol = 1e-10;
  int max_iters = 5000;
  int restarts = 8;
  std::uint64_t seed = 0;

  // Throws kInvalidArgument when a field is out of range for nvars variables.
  void validate(int nvars) const;
};

enum class OptimizerStatus { kConverged, kBoundarySuspect, kMaxIters };

const char* to_string(OptimizerStatus status);

struct BoundResult {
  double value;
  NumericWeight witness;  // normalized, entries sum to 1
  std::vector<ExponentVector> active;
  OptimizerStatus status;
  std::optional<Rational> oracle_value;
  int iterations = 0;
};

struct GridResult {
  ExactWeight witness;  // (k_1/D, ..., k_m/D)
  Rational value;
  std::size_t points_evaluated = 0;
  std::size_t points_skipped = 0;
};

template <typename Scalar>
WeightVector<Scalar> normalize_weight(const WeightVector<Scalar>& w) {
  const Scalar total = w.sum();
  std::vector<Scalar> out;
  out.reserve(w.size());
  for (const auto& x : w.entries()) out.push_back(x / total);
  return WeightVector<Scalar>(std::move(out));
}

// Exact minimum of the bound over the interior grid {k/D : k_i >= 1, sum k = D},
// skipping invalid weights. Ties resolve to the lexicographically smallest k.
GridResult grid_search(const PolySupport& f, int denominator);

// Nelder-Mead descent over log-weights on the open simplex, starting at w0.
// An invalid w0 is first pushed into the valid region.
BoundResult local_refine(const PolySupport& f, const NumericWeight& w0, const OptimizerOptions& opts);

// grid_search, then local_refine from the grid witness and from opts.restarts
// seeded random interior starts; returns the best result. Deterministic for a
// fixed seed regardless of thread count.
BoundResult minimize_bound(const PolySupport& f, const OptimizerOptions& opts = {});

// Threads used by grid evaluation and restart batches: NVOL_THREADS when set,
// otherwise the hardware concurrency.
int worker_count();

}  // namespace nvol
