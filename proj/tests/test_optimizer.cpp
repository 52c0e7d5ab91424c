#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "nvol/catalog.hpp"
#include "nvol/error.hpp"
#include "nvol/optimizer.hpp"
#include "test_util.hpp"

using nvol::ExactWeight;
using nvol::NumericWeight;
using nvol::OptimizerOptions;
using nvol::OptimizerStatus;
using nvol::Rational;
using nvol::parse_polynomial;

namespace {

ExactWeight over(std::initializer_list<long> k, long d) {
  std::vector<Rational> w;
  for (long x : k) w.emplace_back(x, d);
  return ExactWeight(std::move(w));
}

// Brute-force grid minimum on integer compositions k of D, exploiting scale
// invariance so that no division happens before the final comparison.
struct BruteGrid {
  bool found = false;
  nvol::testing::IntBound best;
  std::vector<long> witness;
};

void enumerate(const nvol::PolySupport& f, int d, std::vector<long>& k, int left, BruteGrid& out) {
  const int m = f.nvars();
  if (static_cast<int>(k.size()) == m - 1) {
    if (left < 1) return;
    k.push_back(left);
    const auto b = nvol::testing::int_bound(f, k, m - 1);
    if (b.den != 0 && (!out.found || b.num * out.best.den < out.best.num * b.den)) {
      out.found = true;
      out.best = b;
      out.witness = k;
    }
    k.pop_back();
    return;
  }
  for (int x = 1; x <= left - (m - 1 - static_cast<int>(k.size())); ++x) {
    k.push_back(x);
    enumerate(f, d, k, left - x, out);
    k.pop_back();
  }
}

BruteGrid brute_grid(const nvol::PolySupport& f, int d) {
  BruteGrid out;
  std::vector<long> k;
  enumerate(f, d, k, d, out);
  return out;
}

}  // namespace

TEST(Normalize, Examples) {
  EXPECT_EQ(nvol::normalize_weight(over({3, 3, 2, 2}, 1)), over({3, 3, 2, 2}, 10));
  EXPECT_EQ(nvol::normalize_weight(over({1, 1, 1, 1}, 1)), over({1, 1, 1, 1}, 4));
  const auto w = over({3, 3, 2, 2}, 10);
  EXPECT_EQ(nvol::normalize_weight(w), w);
}

TEST(Options, Validation) {
  OptimizerOptions o;
  EXPECT_NO_THROW(o.validate(4));
  o.grid_denominator = 3;
  EXPECT_THROW(o.validate(4), nvol::Error);
  o = {};
  o.tol = 0;
  EXPECT_THROW(o.validate(4), nvol::Error);
  o = {};
  o.grid_denominator = 5;
  EXPECT_THROW(o.validate(6), nvol::Error);
}

TEST(Grid, A1) {
  const auto g = nvol::grid_search(parse_polynomial("x1*x2 + x3^2 + x4^2", 4), 16);
  EXPECT_EQ(g.value, Rational(16));
  EXPECT_EQ(g.witness, over({1, 1, 1, 1}, 4));
}

TEST(Grid, A3) {
  const auto g = nvol::grid_search(parse_polynomial("x1*x2 + x3^2 + x4^4", 4), 28);
  EXPECT_EQ(g.value, Rational(27, 2));
  EXPECT_EQ(g.witness, over({8, 8, 8, 4}, 28));
}

TEST(Grid, A2) {
  const auto g = nvol::grid_search(parse_polynomial("x1*x2 + x3^2 + x4^3", 4), 11);
  EXPECT_EQ(g.value, Rational(125, 9));
  EXPECT_EQ(g.witness, over({3, 3, 3, 2}, 11));
}

TEST(Grid, Errors) {
  EXPECT_THROW(nvol::grid_search(parse_polynomial("x1*x2", 4), 3), nvol::Error);
  try {
    // every monomial is divisible by x1 x2 x3, so v >= sum for all weights
    nvol::grid_search(parse_polynomial("x1*x2*x3 + x1^2*x2*x3^3", 3), 12);
    FAIL();
  } catch (const nvol::Error& e) {
    EXPECT_EQ(e.kind(), nvol::ErrorKind::kNoValidWeight);
  }
}

TEST(Grid, MatchesBruteForce) {
  auto rng = nvol::testing::rng_for(30);
  int compared = 0;
  for (int i = 0; i < 80; ++i) {
    const int m = nvol::testing::uniform_int(rng, 3, 4);
    const auto f = nvol::testing::random_support(rng, m, 5, 3);
    const int d = nvol::testing::uniform_int(rng, m, 14);
    const auto brute = brute_grid(f, d);
    if (!brute.found) {
      EXPECT_THROW(nvol::grid_search(f, d), nvol::Error);
      continue;
    }
    const auto g = nvol::grid_search(f, d);
    EXPECT_TRUE(nvol::testing::equals(g.value, brute.best));
    std::vector<Rational> w;
    for (long x : brute.witness) w.emplace_back(x, d);
    EXPECT_EQ(g.witness, ExactWeight(w)) << "lexicographic tie-break";
    ++compared;
  }
  EXPECT_GT(compared, 30);
}

TEST(Refine, FromGridWitness) {
  const auto f = parse_polynomial("x1*x2 + x3^2 + x4^2", 4);
  const auto r = nvol::local_refine(f, NumericWeight(std::vector<double>{0.25, 0.25, 0.25, 0.25}), {});
  EXPECT_NEAR(r.value, 16.0, 1e-9);
  EXPECT_EQ(r.status, OptimizerStatus::kConverged);
}

TEST(Refine, E7FromInterior) {
  const auto f = parse_polynomial("x1*x2 + x3^3 + x3*x4^3", 4);
  const auto r = nvol::local_refine(f, NumericWeight(std::vector<double>{0.4, 0.1, 0.3, 0.2}), {});
  EXPECT_NEAR(r.value, 250.0 / 27.0, 1e-6);
  const double target[] = {9.0 / 28, 9.0 / 28, 6.0 / 28, 4.0 / 28};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.witness[i], target[i], 1e-4);
}

TEST(Refine, InvalidStartMovesIntoValidRegion) {
  // v = 2 w1 and sum = w1 + w2 + w3 + w4: w1 = 0.7 is invalid
  const auto f = parse_polynomial("x1^2 + x2^3 + x3^3 + x4^3", 4);
  const auto r = nvol::local_refine(f, NumericWeight(std::vector<double>{0.7, 0.1, 0.1, 0.1}), {});
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_GT(r.value, 0.0);
  EXPECT_LE(r.value, 27.0 / 4 + 1e-9);
  EXPECT_NEAR(nvol::nv_bound(f, r.witness).bound, r.value, 1e-12 * r.value);
}

TEST(Refine, NearWallReportsBoundary) {
  // cone over a quartic surface, not klt: the bound tends to 0 toward the
  // validity wall at the unit weight
  const auto f = parse_polynomial("x1^4 + x2^4 + x3^4 + x4^4", 4);
  const auto r = nvol::minimize_bound(f, {});
  EXPECT_EQ(r.status, OptimizerStatus::kBoundarySuspect);
  EXPECT_LT(r.value, 1e-3);
}

TEST(Minimize, CubicFamily) {
  for (int k = 3; k <= 6; ++k) {
    const auto f = parse_polynomial("x1*x2 + x3^3 + x4^" + std::to_string(k), 4);
    const auto r = nvol::minimize_bound(f, {});
    EXPECT_NEAR(r.value, nvol::ade_family_volume(k).to_double(), 1e-6) << k;
    // witness proportional to (3/2, 3/2, 1, 3/k)
    const double s = 4.0 + 3.0 / k;
    EXPECT_NEAR(r.witness[0], 1.5 / s, 1e-4);
    EXPECT_NEAR(r.witness[2], 1.0 / s, 1e-4);
    EXPECT_NEAR(r.witness[3], 3.0 / k / s, 1e-4);
    ASSERT_TRUE(r.oracle_value.has_value());
    EXPECT_LE(r.value, r.oracle_value->to_double());
  }
}

TEST(Minimize, D5) {
  const auto r = nvol::minimize_bound(parse_polynomial("x1*x2 + x3^2*x4 + x4^4", 4), {});
  EXPECT_NEAR(r.value, 6 * std::sqrt(3.0), 1e-6);
  const double s = 5 - std::sqrt(3.0);
  EXPECT_NEAR(r.witness[2], (std::sqrt(3.0) - 1) / s, 1e-4);
  EXPECT_NEAR(r.witness[3], (4 - 2 * std::sqrt(3.0)) / s, 1e-4);
}

TEST(Minimize, SumOfSquares) {
  const auto r = nvol::minimize_bound(parse_polynomial("x1^2 + x2^2 + x3^2 + x4^2", 4), {});
  EXPECT_NEAR(r.value, 16.0, 1e-9);
  EXPECT_EQ(nvol::grid_search(parse_polynomial("x1^2 + x2^2 + x3^2 + x4^2", 4), 16).value, Rational(16));
}

TEST(Minimize, ResultInvariants) {
  auto rng = nvol::testing::rng_for(31);
  for (int i = 0; i < 20; ++i) {
    const auto f = nvol::testing::random_support(rng, 4, 5, 4);
    std::optional<nvol::BoundResult> result;
    try {
      result = nvol::minimize_bound(f, {});
    } catch (const nvol::Error& e) {
      EXPECT_EQ(e.kind(), nvol::ErrorKind::kNoValidWeight);
      continue;
    }
    const auto& r = *result;
    double sum = 0;
    for (double x : r.witness.entries()) {
      EXPECT_GT(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_FALSE(r.active.empty());
    const double direct = nvol::nv_bound_or_inf(f, r.witness.entries(), 3);
    EXPECT_LE(std::abs(direct - r.value), 1e-12 * std::max(1.0, r.value));
    ASSERT_TRUE(r.oracle_value);
    EXPECT_LE(r.value, r.oracle_value->to_double());
  }
}

// minimize_bound never exceeds the bound at a random valid weight.
TEST(OptimizerProperty, Soundness) {
  auto rng = nvol::testing::rng_for(32);
  const std::vector<std::string> polys{"x1*x2 + x3^2 + x4^3", "x1*x2 + x3^3 + x3*x4^3", "x1^2 + x2^3 + x3^3 + x4^4",
                                       "x1*x2 + x3^2*x4 + x4^6", "x1^2 + x2^2 + x3^3 + x3*x4^2"};
  for (const auto& p : polys) {
    const auto f = parse_polynomial(p, 4);
    const double best = nvol::minimize_bound(f, {}).value;
    for (int i = 0; i < 100; ++i) {
      std::vector<double> w(4);
      for (auto& x : w) x = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
      EXPECT_LE(best, nvol::nv_bound_or_inf(f, w, 3) + 1e-9) << p;
    }
  }
}

TEST(OptimizerProperty, GridMonotoneAlongDoubling) {
  auto rng = nvol::testing::rng_for(33);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const auto f = nvol::testing::random_support(rng, 3, 5, 3);
    const int d = nvol::testing::uniform_int(rng, 3, 8);
    try {
      const auto g1 = nvol::grid_search(f, d);
      const auto g2 = nvol::grid_search(f, 2 * d);
      const auto g4 = nvol::grid_search(f, 4 * d);
      EXPECT_LE(g2.value, g1.value);
      EXPECT_LE(g4.value, g2.value);
      ++checked;
    } catch (const nvol::Error& e) {
      EXPECT_EQ(e.kind(), nvol::ErrorKind::kNoValidWeight);
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(OptimizerProperty, OracleConsistency) {
  auto rng = nvol::testing::rng_for(34);
  for (int i = 0; i < 10; ++i) {
    const auto f = nvol::testing::random_support(rng, 4, 5, 3);
    for (int d : {12, 24}) {
      OptimizerOptions o;
      o.grid_denominator = d;
      try {
        const auto r = nvol::minimize_bound(f, o);
        EXPECT_LE(r.value, nvol::grid_search(f, d).value.to_double() + 1e-9);
      } catch (const nvol::Error& e) {
        EXPECT_EQ(e.kind(), nvol::ErrorKind::kNoValidWeight);
      }
    }
  }
}

TEST(OptimizerProperty, DeterministicAcrossThreadCounts) {
  const auto f = parse_polynomial("x1*x2 + x3^3 + x3*x4^3", 4);
  ::setenv("NVOL_THREADS", "1", 1);
  const auto a = nvol::minimize_bound(f, {});
  ::setenv("NVOL_THREADS", "4", 1);
  const auto b = nvol::minimize_bound(f, {});
  ::unsetenv("NVOL_THREADS");
  const auto c = nvol::minimize_bound(f, {});
  for (const auto* r : {&b, &c}) {
    EXPECT_EQ(a.value, r->value);
    EXPECT_EQ(a.witness, r->witness);
    EXPECT_EQ(a.status, r->status);
    EXPECT_EQ(a.oracle_value, r->oracle_value);
    EXPECT_EQ(a.iterations, r->iterations);
  }
  OptimizerOptions other;
  other.seed = 7;
  EXPECT_NEAR(nvol::minimize_bound(f, other).value, a.value, 1e-9);
}
