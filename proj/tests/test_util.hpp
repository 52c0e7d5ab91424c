#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "nvol/rational.hpp"
#include "nvol/support.hpp"
#include "nvol/valuation.hpp"

namespace nvol::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(0x5eed0000ULL + seed); }

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random support with coefficient 1 on every term, no constant term.
inline PolySupport random_support(std::mt19937_64& rng, int nvars, int max_terms, int max_exp) {
  PolySupport::TermMap terms;
  const int count = uniform_int(rng, 1, max_terms);
  while (static_cast<int>(terms.size()) < count) {
    std::vector<int> e(nvars);
    for (auto& x : e) x = uniform_int(rng, 0, max_exp);
    if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) continue;
    terms.emplace(ExponentVector(e), Rational(1));
  }
  return PolySupport(nvars, std::move(terms));
}

inline std::vector<long> random_int_weight(std::mt19937_64& rng, int nvars, int hi) {
  std::vector<long> w(nvars);
  for (auto& x : w) x = uniform_int(rng, 1, hi);
  return w;
}

inline ExactWeight as_exact(const std::vector<long>& w) {
  std::vector<Rational> out;
  for (long x : w) out.emplace_back(x);
  return ExactWeight(std::move(out));
}

inline ExactWeight random_rational_weight(std::mt19937_64& rng, int nvars) {
  std::vector<Rational> w;
  for (int i = 0; i < nvars; ++i) w.emplace_back(uniform_int(rng, 1, 40), uniform_int(rng, 1, 12));
  return ExactWeight(std::move(w));
}

// Plain-integer evaluation of the bound for integer weights; returns
// {numerator, denominator} of (S - v)^n v / P, or {0, 0} when S <= v.
struct IntBound {
  __int128 num = 0;
  __int128 den = 0;
  long v = 0;
};

inline IntBound int_bound(const PolySupport& f, const std::vector<long>& w, int n) {
  long v = -1;
  for (const auto& [e, c] : f.terms()) {
    long d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * e[i];
    if (v < 0 || d < v) v = d;
  }
  long s = 0;
  __int128 p = 1;
  for (long x : w) {
    s += x;
    p *= x;
  }
  IntBound out;
  out.v = v;
  if (s <= v) return out;
  __int128 num = v;
  for (int i = 0; i < n; ++i) num *= (s - v);
  out.num = num;
  out.den = p;
  return out;
}

inline bool equals(const Rational& q, const IntBound& b) {
  // q == num/den  <=>  q * den == num, checked through decimal strings of int128.
  auto to_rational = [](__int128 x) {
    std::string s;
    const bool neg = x < 0;
    if (neg) x = -x;
    do {
      s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
      x /= 10;
    } while (x != 0);
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return Rational::parse(s);
  };
  return q * to_rational(b.den) == to_rational(b.num);
}

}  // namespace nvol::testing
