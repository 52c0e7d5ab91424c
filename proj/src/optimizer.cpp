#include "nvol/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "nvol/error.hpp"

namespace nvol {

const char* to_string(OptimizerStatus status) {
  switch (status) {
    case OptimizerStatus::kConverged: return "converged";
    case OptimizerStatus::kBoundarySuspect: return "boundary-suspect";
    case OptimizerStatus::kMaxIters: return "max-iters";
  }
  return "unknown";
}

void OptimizerOptions::validate(int nvars) const {
  if (grid_denominator < 4 || grid_denominator < nvars) {
    throw Error(ErrorKind::kInvalidArgument,
                "grid_denominator must be >= 4 and >= nvars (" + std::to_string(nvars) + ")");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "tol must be positive");
  if (max_iters < 1) throw Error(ErrorKind::kInvalidArgument, "max_iters must be positive");
  if (restarts < 0) throw Error(ErrorKind::kInvalidArgument, "restarts must be nonnegative");
}

int worker_count() {
  if (const char* env = std::getenv("NVOL_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs body(i) for i in [0, count). Each index owns its output slot, so the
// result does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(worker_count()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Grid

struct GridBest {
  bool found = false;
  mpz_class num;
  mpz_class den;
  std::vector<int> k;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

class GridScanner {
 public:
  GridScanner(const PolySupport& f, int denominator)
      : denominator_(denominator), nvars_(f.nvars()) {
    for (const auto& e : f.exponents()) {
      exps_.emplace_back(e.entries().begin(), e.entries().end());
    }
  }

  GridBest scan_first(int k1) const {
    GridBest best;
    std::vector<int> k(nvars_, 0);
    k[0] = k1;
    recurse(k, 1, denominator_ - k1, best);
    return best;
  }

 private:
  void recurse(std::vector<int>& k, int index, int remaining, GridBest& best) const {
    const int slots_after = nvars_ - index - 1;
    if (slots_after == 0) {
      k[index] = remaining;
      evaluate(k, best);
      return;
    }
    for (int value = 1; value <= remaining - slots_after; ++value) {
      k[index] = value;
      recurse(k, index + 1, remaining - value, best);
    }
  }

  void evaluate(const std::vector<int>& k, GridBest& best) const {
    long v = std::numeric_limits<long>::max();
    for (const auto& a : exps_) {
      long s = 0;
      for (int i = 0; i < nvars_; ++i) s += static_cast<long>(a[i]) * k[i];
      v = std::min(v, s);
    }
    const long ld = denominator_ - v;
    if (ld <= 0) {
      ++best.skipped;
      return;
    }
    ++best.evaluated;
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(ld), static_cast<unsigned long>(nvars_ - 1));
    num *= v;
    mpz_class den = 1;
    for (int x : k) den *= x;
    // Lexicographic enumeration: only a strictly smaller value replaces.
    if (!best.found || num * best.den < best.num * den) {
      best.found = true;
      best.num = std::move(num);
      best.den = std::move(den);
      best.k = k;
    }
  }

  int denominator_;
  int nvars_;
  std::vector<std::vector<int>> exps_;
};

// ---------------------------------------------------------------------------
// Nelder-Mead in log coordinates: y_i = log(w_i / w_m), i < m.

class LogSimplexObjective {
 public:
  LogSimplexObjective(const PolySupport& f) : f_(f), m_(f.nvars()) {}

  int dim() const { return m_ - 1; }

  std::vector<double> to_weight(const std::vector<double>& y) const {
    const double shift = std::max(0.0, *std::max_element(y.begin(), y.end()));
    std::vector<double> w(m_);
    double total = 0.0;
    for (int i = 0; i < m_ - 1; ++i) total += (w[i] = std::exp(y[i] - shift));
    total += (w[m_ - 1] = std::exp(-shift));
    for (auto& x : w) x /= total;
    return w;
  }

  std::vector<double> to_log(const std::vector<double>& w) const {
    std::vector<double> y(m_ - 1);
    for (int i = 0; i < m_ - 1; ++i) y[i] = std::log(w[i] / w[m_ - 1]);
    return y;
  }

  double operator()(const std::vector<double>& y) const {
    return nv_bound_or_inf(f_, to_weight(y), m_ - 1);
  }

 private:
  const PolySupport& f_;
  int m_;
};

struct SimplexRun {
  std::vector<double> best;
  double value;
  int iterations;
  bool converged;
};

SimplexRun nelder_mead(const LogSimplexObjective& objective, const std::vector<double>& start,
                       double step, double tol, int max_iters) {
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  const int dim = objective.dim();
  std::vector<std::vector<double>> pts(dim + 1, start);
  for (int j = 0; j < dim; ++j) pts[j + 1][j] += step;
  std::vector<double> vals(dim + 1);
  for (int j = 0; j <= dim; ++j) vals[j] = objective(pts[j]);

  std::vector<int> order(dim + 1);
  auto point_along = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = from[i] + t * (to[i] - from[i]);
    return out;
  };

  int iter = 0;
  bool converged = false;
  for (; iter < max_iters; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second_worst = order[dim - 1 < 0 ? 0 : dim - 1];

    double diameter = 0.0;
    for (int j = 0; j <= dim; ++j) {
      for (int i = 0; i < dim; ++i) diameter = std::max(diameter, std::abs(pts[j][i] - pts[best][i]));
    }
    if (diameter < tol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (int j = 0; j <= dim; ++j) {
      if (j == worst) continue;
      for (int i = 0; i < dim; ++i) centroid[i] += pts[j][i] / dim;
    }

    const auto reflected = point_along(centroid, pts[worst], -kReflect);
    const double f_reflected = objective(reflected);
    if (f_reflected < vals[best]) {
      const auto expanded = point_along(centroid, pts[worst], -kReflect * kExpand);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        pts[worst] = expanded;
        vals[worst] = f_expanded;
      } else {
        pts[worst] = reflected;
        vals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < vals[worst];
    const auto contracted = outside ? point_along(centroid, reflected, kContract)
                                    : point_along(centroid, pts[worst], kContract);
    const double f_contracted = objective(contracted);
    if (outside ? f_contracted <= f_reflected : f_contracted < vals[worst]) {
      pts[worst] = contracted;
      vals[worst] = f_contracted;
      continue;
    }
    for (int j = 0; j <= dim; ++j) {
      if (j == best) continue;
      pts[j] = point_along(pts[best], pts[j], kShrink);
      vals[j] = objective(pts[j]);
    }
  }
  const int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], iter, converged};
}

// Moves an invalid w0 toward a coordinate vertex e_i for which some monomial
// does not involve x_i; along that path v_w(f) drops below the weight sum.
std::vector<double> push_into_valid_region(const PolySupport& f, const std::vector<double>& w0) {
  const int m = f.nvars();
  for (int i = 0; i < m; ++i) {
    const bool usable = std::any_of(f.terms().begin(), f.terms().end(),
                                    [&](const auto& t) { return t.first[i] == 0; });
    if (!usable) continue;
    for (int k = 1; k <= 50; ++k) {
      const double t = 1.0 - std::ldexp(1.0, -k);
      std::vector<double> w(m);
      for (int j = 0; j < m; ++j) w[j] = (1.0 - t) * w0[j] + (j == i ? t : 0.0);
      if (std::isfinite(nv_bound_or_inf(f, w, m - 1))) return w;
    }
  }
  throw Error(ErrorKind::kNoValidWeight, "every monomial involves every variable; no weight is valid");
}

constexpr double kActiveRelTol = 1e-6;
constexpr int kSimplexRounds = 4;
constexpr double kInitialStep = 0.1;

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

GridResult grid_search(const PolySupport& f, int denominator) {
  const int m = f.nvars();
  if (denominator < m) {
    throw Error(ErrorKind::kInvalidArgument, "grid denominator must be at least nvars");
  }
  const GridScanner scanner(f, denominator);
  const int first_values = denominator - m + 1;
  std::vector<GridBest> partial(first_values);
  parallel_for(partial.size(), [&](std::size_t i) { partial[i] = scanner.scan_first(static_cast<int>(i) + 1); });

  GridBest best;
  for (auto& p : partial) {
    best.evaluated += p.evaluated;
    best.skipped += p.skipped;
    if (p.found && (!best.found || p.num * best.den < best.num * p.den)) {
      best.found = true;
      best.num = p.num;
      best.den = p.den;
      best.k = p.k;
    }
  }
  if (!best.found) {
    throw Error(ErrorKind::kNoValidWeight,
                "no grid weight with denominator " + std::to_string(denominator) + " is valid");
  }
  std::vector<Rational> w;
  w.reserve(m);
  for (int k : best.k) w.emplace_back(mpz_class(k), mpz_class(denominator));
  return {ExactWeight(std::move(w)), Rational(best.num, best.den), best.evaluated, best.skipped};
}

BoundResult local_refine(const PolySupport& f, const NumericWeight& w0, const OptimizerOptions& opts) {
  opts.validate(f.nvars());
  const int m = f.nvars();
  if (static_cast<int>(w0.size()) != m) {
    throw Error(ErrorKind::kDimensionMismatch, "start weight length does not match the support");
  }
  std::vector<double> start = normalize_weight(w0).entries();
  if (!std::isfinite(nv_bound_or_inf(f, start, m - 1))) start = push_into_valid_region(f, start);

  const LogSimplexObjective objective(f);
  std::vector<double> best_y = objective.to_log(start);
  double best_value = objective(best_y);
  int iterations = 0;
  bool converged = false;
  for (int round = 0; round < kSimplexRounds && iterations < opts.max_iters; ++round) {
    const SimplexRun run =
        nelder_mead(objective, best_y, kInitialStep, opts.tol, opts.max_iters - iterations);
    iterations += run.iterations;
    converged = run.converged;
    const bool improved = run.value < best_value;
    if (run.value <= best_value) {
      best_y = run.best;
      best_value = run.value;
    }
    // A fresh simplex around the converged point escapes premature collapse
    // on the kinks of v_w; stop once a restart no longer improves.
    if (round > 0 && !improved) break;
  }

  std::vector<double> w = objective.to_weight(best_y);
  NumericWeight witness(w);
  const double value = nv_bound_or_inf(f, w, m - 1);
  const double boundary_eps = std::sqrt(opts.tol);
  const double min_entry = *std::min_element(w.begin(), w.end());
  const double ld = 1.0 - monomial_valuation(f, witness).value;

  OptimizerStatus status = OptimizerStatus::kConverged;
  if (min_entry < boundary_eps || ld < boundary_eps) {
    status = OptimizerStatus::kBoundarySuspect;
  } else if (!converged) {
    status = OptimizerStatus::kMaxIters;
  }
  return {value, witness, active_set(f, witness, kActiveRelTol), status, std::nullopt, iterations};
}

BoundResult minimize_bound(const PolySupport& f, const OptimizerOptions& opts) {
  opts.validate(f.nvars());
  const PolySupport pruned = prune_support(f);
  const int m = pruned.nvars();
  const GridResult grid = grid_search(pruned, opts.grid_denominator);

  std::vector<std::vector<double>> starts;
  starts.reserve(opts.restarts + 1);
  {
    std::vector<double> w;
    for (const auto& x : grid.witness.entries()) w.push_back(x.to_double());
    starts.push_back(std::move(w));
  }
  std::mt19937_64 rng(opts.seed);
  for (int r = 0; r < opts.restarts; ++r) {
    // Uniform on the simplex via normalized exponentials; built from raw
    // 53-bit draws so the sequence is identical across standard libraries.
    std::vector<double> w(m);
    double total = 0.0;
    for (auto& x : w) {
      const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
      total += (x = -std::log(u));
    }
    for (auto& x : w) x /= total;
    starts.push_back(std::move(w));
  }

  std::vector<std::optional<BoundResult>> results(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    try {
      results[i] = local_refine(pruned, NumericWeight(starts[i]), opts);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNoValidWeight) throw;
    }
  });

  std::optional<BoundResult> best;
  for (auto& r : results) {
    if (!r) continue;
    if (!best || r->value < best->value ||
        (r->value == best->value && lex_less(r->witness.entries(), best->witness.entries()))) {
      best = std::move(r);
    }
  }
  // The grid start always yields a result: it is valid by construction.
  const double oracle = grid.value.to_double();
  if (best->value > oracle) {
    NumericWeight w(starts.front());
    best = BoundResult{nv_bound_or_inf(pruned, w.entries(), m - 1), w, active_set(pruned, w, kActiveRelTol),
                       OptimizerStatus::kConverged, std::nullopt, best->iterations};
  }
  best->value = std::min(best->value, oracle);
  best->oracle_value = grid.value;
  // Report the active set against the caller's support, not the pruned one.
  best->active = active_set(f, best->witness, kActiveRelTol);
  return *best;
}

}  // namespace nvol
