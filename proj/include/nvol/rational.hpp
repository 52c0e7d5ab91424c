#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace nvol {

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpz_class& value) : q_(value) {}
  explicit Rational(mpq_class value);

  // Accepts "p" or "p/q" with optional sign; no decimals.
  static Rational parse(std::string_view text);
  // Exact binary value of a finite double.
  static Rational from_double(double value);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }
  std::string to_string() const;

  Rational abs() const;
  Rational pow(unsigned exponent) const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

// True when d > 1 has no square factor.
bool is_square_free(std::int64_t d);

// a + b*sqrt(d) in the quadratic field Q(sqrt(d)). A value with b == 0 is
// rational and combines with any radicand.
class SurdValue {
 public:
  SurdValue() = default;
  SurdValue(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  SurdValue(int a) : a_(a) {}              // NOLINT(google-explicit-constructor)
  SurdValue(Rational a, Rational b, std::int64_t d);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  // 0 when the value is rational.
  std::int64_t radicand() const { return b_.is_zero() ? 0 : d_; }
  bool is_rational() const { return b_.is_zero(); }

  int sign() const;
  double to_double() const;
  std::string to_string() const;
  SurdValue conjugate() const;
  // a^2 - b^2 d, the field norm.
  Rational norm() const;

  SurdValue& operator+=(const SurdValue& rhs);
  SurdValue& operator-=(const SurdValue& rhs);
  SurdValue& operator*=(const SurdValue& rhs);
  SurdValue& operator/=(const SurdValue& rhs);

  friend SurdValue operator+(SurdValue lhs, const SurdValue& rhs) { return lhs += rhs; }
  friend SurdValue operator-(SurdValue lhs, const SurdValue& rhs) { return lhs -= rhs; }
  friend SurdValue operator*(SurdValue lhs, const SurdValue& rhs) { return lhs *= rhs; }
  friend SurdValue operator/(SurdValue lhs, const SurdValue& rhs) { return lhs /= rhs; }
  SurdValue operator-() const;

  friend bool operator==(const SurdValue& x, const SurdValue& y);
  friend std::strong_ordering operator<=>(const SurdValue& x, const SurdValue& y);

 private:
  std::int64_t merged_radicand(const SurdValue& rhs) const;

  Rational a_;
  Rational b_;
  std::int64_t d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const SurdValue& value);

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }
inline double to_double(const SurdValue& x) { return x.to_double(); }

}  // namespace nvol
