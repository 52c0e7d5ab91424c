#include "nvol/bivariate.hpp"

#include <algorithm>

#include "nvol/error.hpp"

namespace nvol {

// ---------------------------------------------------------------------------
// UPoly

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational UPoly::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : Rational(0);
}

UPoly UPoly::derivative() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
  }
  return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> out = coeffs_;
  const Rational lead = leading();
  for (auto& c : out) c /= lead;
  return UPoly(std::move(out));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return UPoly(std::move(out));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
  return UPoly(std::move(out));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UPoly(std::move(out));
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& quotient, UPoly& remainder) {
  if (b.is_zero()) throw Error(ErrorKind::kInvalidArgument, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  const int db = b.degree();
  std::vector<Rational> quo(std::max(0, a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const Rational factor = rem[k] / b.leading();
    if (factor.is_zero()) continue;
    quo[k - db] = factor;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= factor * b.coeffs_[j];
  }
  quotient = UPoly(std::move(quo));
  remainder = UPoly(std::move(rem));
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly q;
    UPoly r;
    UPoly::divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  UPoly q;
  UPoly r;
  UPoly::divmod(a, b, q, r);
  if (!r.is_zero()) throw Error(ErrorKind::kInvalidArgument, "inexact polynomial division");
  return q;
}

// ---------------------------------------------------------------------------
// BPoly

BPoly::BPoly(std::vector<UPoly> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void BPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

BPoly BPoly::from_support(const PolySupport& g) {
  if (g.nvars() != 2) throw Error(ErrorKind::kDimensionMismatch, "bivariate polynomial needs nvars = 2");
  int max_x = 0;
  int max_y = 0;
  for (const auto& [e, c] : g.terms()) {
    max_x = std::max(max_x, e[0]);
    max_y = std::max(max_y, e[1]);
  }
  std::vector<std::vector<Rational>> dense(max_y + 1, std::vector<Rational>(max_x + 1));
  for (const auto& [e, c] : g.terms()) dense[e[1]][e[0]] = c;
  std::vector<UPoly> coeffs;
  coeffs.reserve(dense.size());
  for (auto& row : dense) coeffs.emplace_back(std::move(row));
  return BPoly(std::move(coeffs));
}

int BPoly::total_degree() const {
  int best = -1;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (!coeffs_[j].is_zero()) best = std::max(best, coeffs_[j].degree() + static_cast<int>(j));
  }
  return best;
}

BPoly BPoly::derivative_x() const {
  std::vector<UPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.derivative());
  return BPoly(std::move(out));
}

BPoly BPoly::derivative_y() const {
  std::vector<UPoly> out;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) {
    out.push_back(coeffs_[j] * UPoly::constant(Rational(static_cast<long>(j))));
  }
  return BPoly(std::move(out));
}

BPoly BPoly::scaled(const UPoly& c) const {
  std::vector<UPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& a : coeffs_) out.push_back(a * c);
  return BPoly(std::move(out));
}

UPoly BPoly::content() const {
  UPoly g;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

BPoly BPoly::primitive_part() const {
  if (is_zero()) return *this;
  return divided_by(content());
}

BPoly BPoly::divided_by(const UPoly& c) const {
  std::vector<UPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& a : coeffs_) out.push_back(exact_quotient(a, c));
  return BPoly(std::move(out));
}

BPoly operator+(const BPoly& a, const BPoly& b) {
  std::vector<UPoly> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs_.size()) out[i] = out[i] + a.coeffs_[i];
    if (i < b.coeffs_.size()) out[i] = out[i] + b.coeffs_[i];
  }
  return BPoly(std::move(out));
}

BPoly operator-(const BPoly& a, const BPoly& b) {
  std::vector<UPoly> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs_.size()) out[i] = out[i] + a.coeffs_[i];
    if (i < b.coeffs_.size()) out[i] = out[i] - b.coeffs_[i];
  }
  return BPoly(std::move(out));
}

BPoly operator*(const BPoly& a, const BPoly& b) {
  if (a.is_zero() || b.is_zero()) return BPoly();
  std::vector<UPoly> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return BPoly(std::move(out));
}

BPoly BPoly::pseudo_remainder(const BPoly& a, const BPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::kInvalidArgument, "pseudo-division by zero");
  const int db = b.degree_y();
  BPoly r = a;
  int steps = std::max(0, a.degree_y() - db + 1);
  const UPoly& lead = b.leading();
  while (!r.is_zero() && r.degree_y() >= db) {
    const int shift = r.degree_y() - db;
    std::vector<UPoly> mono(shift + 1);
    mono[shift] = r.leading();
    r = r.scaled(lead) - BPoly(std::move(mono)) * b;
    --steps;
  }
  // Complete the fixed power lc(b)^(deg a - deg b + 1).
  UPoly factor = UPoly::constant(Rational(1));
  for (int i = 0; i < steps; ++i) factor = factor * lead;
  return r.scaled(factor);
}

namespace {

UPoly upow(const UPoly& base, int exponent) {
  UPoly out = UPoly::constant(Rational(1));
  for (int i = 0; i < exponent; ++i) out = out * base;
  return out;
}

// gcd of two primitive polynomials of positive y-degree via the subresultant
// PRS; the last nonzero remainder is an associate of the gcd up to a factor
// in Q[x], removed by taking the primitive part.
BPoly subresultant_gcd(BPoly a, BPoly b) {
  if (a.degree_y() < b.degree_y()) std::swap(a, b);
  UPoly g = UPoly::constant(Rational(1));
  UPoly h = UPoly::constant(Rational(1));
  while (!b.is_zero() && b.degree_y() > 0) {
    const int delta = a.degree_y() - b.degree_y();
    BPoly r = BPoly::pseudo_remainder(a, b);
    if (r.is_zero()) return b.primitive_part();
    if (r.degree_y() == 0) return BPoly(std::vector<UPoly>{UPoly::constant(Rational(1))});
    const UPoly divisor = g * upow(h, delta);
    a = std::move(b);
    b = r.divided_by(divisor);
    g = a.leading();
    if (delta == 0) {
      // h unchanged: h = g^1 * h^0
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact_quotient(upow(g, delta), upow(h, delta - 1));
    }
  }
  if (b.is_zero()) return a.primitive_part();
  return BPoly(std::vector<UPoly>{UPoly::constant(Rational(1))});
}

}  // namespace

BPoly gcd(const BPoly& a, const BPoly& b) {
  if (a.is_zero()) return b.primitive_part().scaled(b.content());
  if (b.is_zero()) return a.primitive_part().scaled(a.content());
  const UPoly content_gcd = gcd(a.content(), b.content());
  const BPoly pa = a.primitive_part();
  const BPoly pb = b.primitive_part();
  BPoly g;
  if (pa.degree_y() == 0 || pb.degree_y() == 0) {
    g = BPoly(std::vector<UPoly>{UPoly::constant(Rational(1))});
  } else {
    g = subresultant_gcd(pa, pb);
  }
  return g.scaled(content_gcd);
}

bool is_reduced_bivariate(const PolySupport& g) {
  const BPoly p = BPoly::from_support(g);
  if (p.is_zero()) throw Error(ErrorKind::kInvalidArgument, "zero polynomial");
  const BPoly d = gcd(gcd(p, p.derivative_x()), p.derivative_y());
  return d.total_degree() <= 0;
}

}  // namespace nvol
