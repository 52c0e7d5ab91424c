#include "nvol/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "nvol/error.hpp"

namespace nvol {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax: return "syntax";
    case ErrorKind::kConstantTerm: return "constant-term";
    case ErrorKind::kUnknownVariable: return "unknown-variable";
    case ErrorKind::kEmptySupport: return "empty-support";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kInvalidWeight: return "invalid-weight";
    case ErrorKind::kNoValidWeight: return "no-valid-weight";
    case ErrorKind::kUnknownDescriptor: return "unknown-descriptor";
    case ErrorKind::kUnknownMld: return "unknown-mld";
    case ErrorKind::kUndecidable: return "undecidable";
    case ErrorKind::kOutOfRange: return "out-of-range";
  }
  return "unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax:
    case ErrorKind::kConstantTerm:
    case ErrorKind::kUnknownVariable:
    case ErrorKind::kEmptySupport:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kUnknownDescriptor:
    case ErrorKind::kOutOfRange:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw Error(ErrorKind::kInvalidArgument, "zero denominator");
  q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

namespace {

bool parse_integer(std::string_view text, mpz_class& out) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) return false;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
  }
  out = mpz_class(std::string(text.substr(i)), 10);
  if (negative) out = -out;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  mpz_class num;
  mpz_class den = 1;
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(text, num)
                      : parse_integer(trim(text.substr(0, slash)), num) &&
                            parse_integer(trim(text.substr(slash + 1)), den);
  if (!ok) throw Error(ErrorKind::kSyntax, "not a rational number: '" + std::string(text) + "'");
  if (den == 0) throw Error(ErrorKind::kInvalidArgument, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::kInvalidArgument, "non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::pow(unsigned exponent) const {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), exponent);
  return Rational(num, den);
}

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::kInvalidArgument, "division by zero");
  q_ /= rhs.q_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

// ---------------------------------------------------------------------------
// SurdValue

bool is_square_free(std::int64_t d) {
  if (d < 2) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

SurdValue::SurdValue(Rational a, Rational b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (!is_square_free(d)) {
    throw Error(ErrorKind::kInvalidArgument, "radicand must be a square-free integer > 1");
  }
}

std::int64_t SurdValue::merged_radicand(const SurdValue& rhs) const {
  const auto l = radicand();
  const auto r = rhs.radicand();
  if (l != 0 && r != 0 && l != r) {
    throw Error(ErrorKind::kInvalidArgument, "surd arithmetic across different radicands");
  }
  return l != 0 ? l : r;
}

int SurdValue::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(static_cast<long>(d_));
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

double SurdValue::to_double() const {
  if (is_rational()) return a_.to_double();
  const double root = std::sqrt(static_cast<double>(d_));
  const double a = a_.to_double();
  const double bs = b_.to_double() * root;
  if (a_.sign() * b_.sign() >= 0) return a + bs;
  // a + b sqrt(d) = (a^2 - b^2 d) / (a - b sqrt(d)); the denominator does not
  // cancel, so the quotient keeps full precision.
  return norm().to_double() / (a - bs);
}

std::string SurdValue::to_string() const {
  if (is_rational()) return a_.to_string();
  std::ostringstream os;
  const Rational mag = b_.abs();
  const std::string surd = (mag == Rational(1) ? std::string() : mag.to_string() + "*") +
                           "sqrt(" + std::to_string(d_) + ")";
  if (a_.is_zero()) {
    os << (b_.sign() < 0 ? "-" : "") << surd;
  } else {
    os << a_.to_string() << (b_.sign() < 0 ? " - " : " + ") << surd;
  }
  return os.str();
}

SurdValue SurdValue::conjugate() const {
  SurdValue out = *this;
  out.b_ = -b_;
  return out;
}

Rational SurdValue::norm() const {
  return a_ * a_ - b_ * b_ * Rational(static_cast<long>(d_));
}

SurdValue& SurdValue::operator+=(const SurdValue& rhs) {
  d_ = merged_radicand(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

SurdValue& SurdValue::operator-=(const SurdValue& rhs) {
  d_ = merged_radicand(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

SurdValue& SurdValue::operator*=(const SurdValue& rhs) {
  const auto d = merged_radicand(rhs);
  const Rational a = a_ * rhs.a_ + b_ * rhs.b_ * Rational(static_cast<long>(d));
  const Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  return *this;
}

SurdValue& SurdValue::operator/=(const SurdValue& rhs) {
  const auto d = merged_radicand(rhs);
  const Rational n = rhs.norm();
  if (n.is_zero()) throw Error(ErrorKind::kInvalidArgument, "division by zero surd");
  d_ = d;
  *this *= rhs.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

SurdValue SurdValue::operator-() const {
  SurdValue out = *this;
  out.a_ = -a_;
  out.b_ = -b_;
  return out;
}

bool operator==(const SurdValue& x, const SurdValue& y) {
  if (x.radicand() != 0 && y.radicand() != 0 && x.radicand() != y.radicand()) return false;
  return x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const SurdValue& x, const SurdValue& y) {
  const int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const SurdValue& value) { return os << value.to_string(); }

}  // namespace nvol
