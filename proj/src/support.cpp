#include "nvol/support.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nvol/error.hpp"

namespace nvol {

ExponentVector::ExponentVector(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "exponent vectors need at least two variables");
  }
  for (int e : entries_) {
    if (e < 0) throw Error(ErrorKind::kInvalidArgument, "negative exponent");
  }
}

int ExponentVector::degree() const {
  int total = 0;
  for (int e : entries_) total += e;
  return total;
}

bool ExponentVector::dominates(const ExponentVector& other) const {
  if (other.size() != size() || other == *this) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (entries_[i] < other.entries_[i]) return false;
  }
  return true;
}

std::string ExponentVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

PolySupport::PolySupport(int nvars, TermMap terms) : nvars_(nvars) {
  if (nvars < 2) throw Error(ErrorKind::kInvalidArgument, "nvars must be at least 2");
  for (auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != nvars) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "exponent " + e.to_string() + " does not have " + std::to_string(nvars) + " entries");
    }
    if (e.degree() == 0) throw Error(ErrorKind::kConstantTerm, "support contains a constant term");
    if (!c.is_zero()) terms_.emplace(e, c);
  }
  if (terms_.empty()) throw Error(ErrorKind::kEmptySupport, "polynomial support is empty");
}

std::vector<ExponentVector> PolySupport::exponents() const {
  std::vector<ExponentVector> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back(e);
  return out;
}

std::string PolySupport::to_string() const {
  std::ostringstream os;
  bool first = true;
  // Highest degree last reads more naturally, but lexicographic order is the
  // stable one; keep it.
  for (const auto& [e, c] : terms_) {
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = c.abs();
    bool wrote = false;
    if (mag != Rational(1)) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << (wrote ? "*" : "") << 'x' << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' integer]
//   atom   := integer ['/' integer] | 'x' integer | '(' expr ')'

namespace {

using Poly = std::map<std::vector<int>, Rational>;

void add_into(Poly& acc, const Poly& rhs, const Rational& scale) {
  for (const auto& [e, c] : rhs) {
    auto [it, inserted] = acc.emplace(e, Rational(0));
    it->second += c * scale;
    if (it->second.is_zero()) acc.erase(it);
  }
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = out.emplace(std::move(e), Rational(0));
      it->second += ca * cb;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

  std::size_t constant_position() const { return constant_pos_; }
  bool saw_constant() const { return saw_constant_; }

 private:
  [[noreturn]] void fail(const std::string& what, ErrorKind kind = ErrorKind::kSyntax) const {
    throw ParseError(kind, what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpz_class integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  int small_integer(const char* what) {
    const std::size_t start = pos_;
    mpz_class z = integer();
    if (!z.fits_sint_p() || z.get_si() > 100000) {
      pos_ = start;
      fail(std::string(what) + " is too large");
    }
    return static_cast<int>(z.get_si());
  }

  Poly constant(const Rational& c) {
    Poly p;
    if (!c.is_zero()) p.emplace(std::vector<int>(nvars_, 0), c);
    return p;
  }

  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      skip_ws();
      Rational sign(1);
      if (accept('-')) {
        sign = Rational(-1);
      } else if (!accept('+') && !first) {
        break;
      }
      first = false;
      add_into(acc, term(), sign);
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
    }
    return acc;
  }

  Poly term() {
    Poly p = factor();
    while (accept('*')) p = multiply(p, factor());
    return p;
  }

  Poly factor() {
    Poly base = atom();
    if (accept('^')) {
      const int power = small_integer("exponent");
      Poly result = constant(Rational(1));
      for (int i = 0; i < power; ++i) result = multiply(result, base);
      return result;
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x' || c == 'X') {
      const std::size_t start = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected a variable index after 'x'");
      }
      const int index = small_integer("variable index");
      if (index < 1 || index > nvars_) {
        pos_ = start;
        fail("unknown variable x" + std::to_string(index) + " (expected x1..x" +
                 std::to_string(nvars_) + ")",
             ErrorKind::kUnknownVariable);
      }
      std::vector<int> e(nvars_, 0);
      e[index - 1] = 1;
      return Poly{{std::move(e), Rational(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      mpz_class num = integer();
      mpz_class den = 1;
      if (accept('/')) den = integer();
      if (den == 0) {
        pos_ = start;
        fail("zero denominator");
      }
      if (!saw_constant_) constant_pos_ = start;
      saw_constant_ = true;
      return constant(Rational(num, den));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;
  std::size_t constant_pos_ = 0;
  bool saw_constant_ = false;
};

}  // namespace

PolySupport parse_polynomial(std::string_view text, int nvars) {
  if (nvars < 2) throw Error(ErrorKind::kInvalidArgument, "nvars must be at least 2");
  Parser parser(text, nvars);
  Poly p = parser.parse();
  const std::vector<int> origin(nvars, 0);
  if (p.count(origin) != 0) {
    throw ParseError(ErrorKind::kConstantTerm, "polynomial has a nonzero constant term",
                     parser.constant_position());
  }
  if (p.empty()) {
    throw Error(ErrorKind::kEmptySupport, "polynomial is zero after combining like terms");
  }
  PolySupport::TermMap terms;
  for (auto& [e, c] : p) terms.emplace(ExponentVector(e), c);
  return PolySupport(nvars, std::move(terms));
}

int multiplicity(const PolySupport& f) {
  int best = std::numeric_limits<int>::max();
  for (const auto& [e, c] : f.terms()) best = std::min(best, e.degree());
  return best;
}

PolySupport prune_support(const PolySupport& f) {
  PolySupport::TermMap kept;
  for (const auto& [e, c] : f.terms()) {
    const bool dominated = std::any_of(f.terms().begin(), f.terms().end(),
                                       [&](const auto& other) { return e.dominates(other.first); });
    if (!dominated) kept.emplace(e, c);
  }
  return PolySupport(f.nvars(), std::move(kept));
}

nlohmann::json to_json(const PolySupport& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) {
    terms.push_back({{"exp", std::vector<int>(e.entries().begin(), e.entries().end())},
                     {"coef", c.to_string()}});
  }
  return {{"nvars", f.nvars()}, {"terms", std::move(terms)}};
}

PolySupport support_from_json(const nlohmann::json& j) {
  try {
    const int nvars = j.at("nvars").get<int>();
    PolySupport::TermMap terms;
    for (const auto& t : j.at("terms")) {
      const auto& coef = t.at("coef");
      Rational c = coef.is_number_integer() ? Rational(coef.get<long>())
                                            : Rational::parse(coef.get<std::string>());
      ExponentVector e(t.at("exp").get<std::vector<int>>());
      auto [it, inserted] = terms.emplace(e, c);
      if (!inserted) it->second += c;
    }
    return PolySupport(nvars, std::move(terms));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kSyntax, std::string("malformed polynomial JSON: ") + ex.what());
  }
}

}  // namespace nvol
