#include "nvol/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nvol/error.hpp"

namespace nvol {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kInvalidArgument, what); }

int mod(int a, int r) { return ((a % r) + r) % r; }

std::array<int, 3> reduced_weights(const CyclicQuotient& q) {
  return {mod(q.weights[0], q.r), mod(q.weights[1], q.r), mod(q.weights[2], q.r)};
}

// Smallest sorted representative of the weights under unit scaling mod r.
std::array<int, 3> canonical_weights(const CyclicQuotient& q) {
  std::array<int, 3> best{q.r, q.r, q.r};
  for (int u = 1; u <= std::max(1, q.r - 1); ++u) {
    if (std::gcd(u, q.r) != 1) continue;
    std::array<int, 3> w{};
    for (int i = 0; i < 3; ++i) w[i] = mod(u * q.weights[i], q.r);
    std::sort(w.begin(), w.end());
    best = std::min(best, w);
  }
  return best;
}

bool is_scalar_type(const CyclicQuotient& q) {
  const auto w = reduced_weights(q);
  return w[0] == w[1] && w[1] == w[2] && std::gcd(w[0], q.r) == 1;
}

bool is_gorenstein(const CyclicQuotient& q) {
  const auto w = reduced_weights(q);
  return (w[0] + w[1] + w[2]) % q.r == 0;
}

const SurdValue& six_root_three() {
  static const SurdValue value(Rational(0), Rational(6), 3);
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors

void validate(const SingularityDescriptor& d) {
  std::visit(overloaded{
                 [](const CyclicQuotient& q) {
                   if (q.r < 1) bad("cyclic quotient order must be >= 1");
                 },
                 [](const QuotientOrder& q) {
                   if (q.n < 2) bad("quotient dimension must be >= 2");
                   if (q.order < 1) bad("group order must be >= 1");
                 },
                 [](const Ak& a) {
                   if (a.k && *a.k < 1) bad("A_k needs k >= 1");
                 },
                 [](const Dk& x) {
                   if (x.k && *x.k < 4) bad("D_k needs k >= 4");
                 },
                 [](const Ek& e) {
                   if (e.k < 6 || e.k > 8) bad("E_k needs k in {6, 7, 8}");
                 },
                 [](const TransversalADE& t) {
                   if (t.type == 'A' && t.k < 1) bad("transversal A_k needs k >= 1");
                   if (t.type == 'D' && t.k < 4) bad("transversal D_k needs k >= 4");
                   if (t.type == 'E' && (t.k < 6 || t.k > 8)) bad("transversal E_k needs k in {6, 7, 8}");
                   if (t.type != 'A' && t.type != 'D' && t.type != 'E') bad("transversal type must be A, D or E");
                 },
                 [](const CAClass& c) {
                   if (c.k < 0) bad("cA_k needs k >= 0");
                 },
                 [](const CubicFamily& c) {
                   if (c.k < 3 || c.k > 6) throw Error(ErrorKind::kOutOfRange, "cubic family needs 3 <= k <= 6");
                 },
                 [](const HypersurfaceSupport& h) {
                   if (h.f.nvars() != 4) bad("threefold hypersurface supports need nvars = 4");
                 },
                 [](const Smooth&) {},
             },
             d);
}

std::string to_string(const SingularityDescriptor& d) {
  auto k_or_inf = [](const std::optional<int>& k) { return k ? std::to_string(*k) : std::string("inf"); };
  return std::visit(
      overloaded{
          [](const CyclicQuotient& q) {
            return "1/" + std::to_string(q.r) + "(" + std::to_string(q.weights[0]) + "," +
                   std::to_string(q.weights[1]) + "," + std::to_string(q.weights[2]) + ")";
          },
          [](const QuotientOrder& q) {
            return "quotient(" + std::to_string(q.n) + "," + std::to_string(q.order) + ")";
          },
          [&](const Ak& a) { return "A" + k_or_inf(a.k); },
          [&](const Dk& x) { return "D" + k_or_inf(x.k); },
          [](const Ek& e) { return "E" + std::to_string(e.k); },
          [](const TransversalADE& t) { return std::string("t") + t.type + std::to_string(t.k); },
          [](const CAClass& c) { return "cA" + std::to_string(c.k); },
          [](const CubicFamily& c) { return "cubic" + std::to_string(c.k); },
          [](const HypersurfaceSupport& h) { return "hyp:" + h.f.to_string(); },
          [](const Smooth&) { return std::string("smooth"); },
      },
      d);
}

namespace {

std::optional<int> parse_int(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  int value = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

[[noreturn]] void unknown(std::string_view text) {
  throw Error(ErrorKind::kUnknownDescriptor, "unrecognized descriptor '" + std::string(text) + "'");
}

// Integer or "inf" after a one-letter family name.
std::optional<int> index_or_inf(std::string_view rest, std::string_view text) {
  if (rest == "inf") return std::nullopt;
  if (auto k = parse_int(rest)) return *k;
  unknown(text);
}

std::vector<int> parse_int_list(std::string_view inner, std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto comma = inner.find(',', start);
    if (comma == std::string_view::npos) comma = inner.size();
    std::string_view piece = inner.substr(start, comma - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    const auto v = parse_int(piece);
    if (!v) unknown(text);
    out.push_back(*v);
    start = comma + 1;
  }
  return out;
}

}  // namespace

SingularityDescriptor parse_descriptor(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  SingularityDescriptor d = Smooth{};
  if (text == "smooth") {
    d = Smooth{};
  } else if (starts_with(text, "hyp:")) {
    d = HypersurfaceSupport{parse_polynomial(text.substr(4), 4)};
  } else if (starts_with(text, "quotient(") && text.back() == ')') {
    const auto args = parse_int_list(text.substr(9, text.size() - 10), text);
    if (args.size() != 2) unknown(text);
    d = QuotientOrder{args[0], args[1]};
  } else if (starts_with(text, "1/")) {
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')') unknown(text);
    const auto r = parse_int(text.substr(2, open - 2));
    const auto w = parse_int_list(text.substr(open + 1, text.size() - open - 2), text);
    if (!r || w.size() != 3) unknown(text);
    d = CyclicQuotient{*r, {w[0], w[1], w[2]}};
  } else if (starts_with(text, "cubic")) {
    const auto k = parse_int(text.substr(5));
    if (!k) unknown(text);
    d = CubicFamily{*k};
  } else if (starts_with(text, "cA")) {
    const auto k = parse_int(text.substr(2));
    if (!k) unknown(text);
    d = CAClass{*k};
  } else if (text.size() >= 3 && text[0] == 't' && (text[1] == 'A' || text[1] == 'D' || text[1] == 'E')) {
    const auto k = parse_int(text.substr(2));
    if (!k) unknown(text);
    d = TransversalADE{text[1], *k};
  } else if (text.size() >= 2 && text[0] == 'A') {
    d = Ak{index_or_inf(text.substr(1), text)};
  } else if (text.size() >= 2 && text[0] == 'D') {
    d = Dk{index_or_inf(text.substr(1), text)};
  } else if (text.size() >= 2 && text[0] == 'E') {
    const auto k = parse_int(text.substr(1));
    if (!k) unknown(text);
    d = Ek{*k};
  } else {
    unknown(text);
  }
  validate(d);
  return d;
}

bool denotes_smooth_point(const SingularityDescriptor& d) {
  return std::visit(overloaded{
                        [](const Smooth&) { return true; },
                        [](const CAClass& c) { return c.k == 0; },
                        [](const CyclicQuotient& q) { return q.r == 1; },
                        [](const QuotientOrder& q) { return q.order == 1; },
                        [](const auto&) { return false; },
                    },
                    d);
}

std::optional<PolySupport> defining_support(const SingularityDescriptor& d) {
  auto poly = [](const std::string& text) { return std::optional<PolySupport>(parse_polynomial(text, 4)); };
  return std::visit(
      overloaded{
          [&](const Smooth&) { return poly("x1"); },
          [&](const Ak& a) {
            return a.k ? poly("x1*x2 + x3^2 + x4^" + std::to_string(*a.k + 1)) : poly("x1*x2 + x3^2");
          },
          [&](const Dk& x) {
            return x.k ? poly("x1*x2 + x3^2*x4 + x4^" + std::to_string(*x.k - 1)) : poly("x1*x2 + x3^2*x4");
          },
          [&](const Ek& e) {
            if (e.k == 7) return poly("x1*x2 + x3^3 + x3*x4^3");
            return poly("x1*x2 + x3^3 + x4^" + std::to_string(e.k == 6 ? 4 : 5));
          },
          [&](const CubicFamily& c) { return poly("x1*x2 + x3^3 + x4^" + std::to_string(c.k)); },
          [&](const TransversalADE& t) {
            return t.type == 'A' ? poly("x1*x2 + x3^" + std::to_string(t.k + 1)) : std::nullopt;
          },
          [](const HypersurfaceSupport& h) { return std::optional<PolySupport>(h.f); },
          [](const auto&) { return std::optional<PolySupport>(); },
      },
      d);
}

// ---------------------------------------------------------------------------
// Volumes

bool is_exact(const Volume& v) { return !std::holds_alternative<VolumeInterval>(v); }

SurdValue exact_value(const Volume& v) {
  if (const auto* r = std::get_if<Rational>(&v)) return SurdValue(*r);
  if (const auto* s = std::get_if<SurdValue>(&v)) return *s;
  throw Error(ErrorKind::kUndecidable, "volume is only known as an interval");
}

double numeric_value(const Volume& v) {
  return std::visit(overloaded{
                        [](const Rational& r) { return r.to_double(); },
                        [](const SurdValue& s) { return s.to_double(); },
                        [](const VolumeInterval& i) { return i.refined_hi.value_or(i.hi.to_double()); },
                    },
                    v);
}

std::string to_string(const Volume& v) {
  return std::visit(overloaded{
                        [](const Rational& r) { return r.to_string(); },
                        [](const SurdValue& s) { return s.to_string(); },
                        [](const VolumeInterval& i) { return "[" + i.lo.to_string() + ", " + i.hi.to_string() + "]"; },
                    },
                    v);
}

Rational quotient_volume(int n, long order) {
  if (n < 2) bad("quotient dimension must be >= 2");
  if (order < 1) bad("group order must be >= 1");
  return Rational(n).pow(static_cast<unsigned>(n)) / Rational(order);
}

Rational cover_transfer(const Rational& vol_downstairs, long degree) {
  if (vol_downstairs.sign() <= 0) bad("volume must be positive");
  if (degree < 1) bad("cover degree must be >= 1");
  return Rational(degree) * vol_downstairs;
}

SurdValue cover_transfer(const SurdValue& vol_downstairs, long degree) {
  if (vol_downstairs.sign() <= 0) bad("volume must be positive");
  if (degree < 1) bad("cover degree must be >= 1");
  return SurdValue(Rational(degree)) * vol_downstairs;
}

Rational ade_family_volume(int k) {
  if (k < 3 || k > 6) throw Error(ErrorKind::kOutOfRange, "cubic family needs 3 <= k <= 6");
  return Rational(4) * Rational(3 + k).pow(3) / (Rational(9) * Rational(k).pow(2));
}

namespace {

struct VolumeAndSource {
  Volume volume;
  std::string source;
};

VolumeAndSource volume_of(const SingularityDescriptor& d, const OptimizerOptions& opts) {
  return std::visit(
      overloaded{
          [](const Smooth&) { return VolumeAndSource{quotient_volume(3, 1), "smooth point: n^n"}; },
          [](const CyclicQuotient& q) {
            return VolumeAndSource{quotient_volume(3, q.r), "quotient formula n^n/|G|"};
          },
          [](const QuotientOrder& q) {
            return VolumeAndSource{quotient_volume(q.n, q.order), "quotient formula n^n/|G|"};
          },
          [](const Ak& a) {
            if (a.k && *a.k == 1) return VolumeAndSource{Rational(16), "A_k family: ODP value"};
            if (a.k && *a.k == 2) return VolumeAndSource{Rational(125, 9), "A_k family"};
            if (a.k) return VolumeAndSource{Rational(27, 2), "A_k family, k >= 3"};
            return VolumeAndSource{Rational(27, 2), "transversal A_1 (A_inf)"};
          },
          [](const Dk& x) {
            if (x.k && *x.k == 4) return VolumeAndSource{ade_family_volume(3), "cubic family k = 3 (D_4)"};
            return VolumeAndSource{six_root_three(), x.k ? "D_k family, k >= 5: weight (1,1,sqrt3-1,4-2sqrt3)"
                                                         : "D_inf: weight (1,1,sqrt3-1,4-2sqrt3)"};
          },
          [](const Ek& e) {
            if (e.k == 6) return VolumeAndSource{ade_family_volume(4), "cubic family k = 4 (E_6)"};
            if (e.k == 8) return VolumeAndSource{ade_family_volume(5), "cubic family k = 5 (E_8)"};
            return VolumeAndSource{Rational(250, 27), "E_7 literature value"};
          },
          [](const CubicFamily& c) {
            return VolumeAndSource{ade_family_volume(c.k), "cubic family 4(3+k)^3/(9k^2)"};
          },
          [](const TransversalADE& t) {
            // Surface ADE singularity times a line: C^3 / G with G the binary
            // polyhedral group of the surface singularity.
            long order = 0;
            if (t.type == 'A') order = t.k + 1;
            if (t.type == 'D') order = 4L * (t.k - 2);
            if (t.type == 'E') order = t.k == 6 ? 24 : (t.k == 7 ? 48 : 120);
            return VolumeAndSource{quotient_volume(3, order), "transversal ADE: quotient formula"};
          },
          [](const CAClass& c) {
            if (c.k == 0) return VolumeAndSource{quotient_volume(3, 1), "cA_0 is smooth"};
            if (c.k == 1) {
              return VolumeAndSource{VolumeInterval{Rational(27, 2), Rational(16), std::nullopt},
                                     "cA_1 values {27/2, 125/9, 16}"};
            }
            if (c.k == 2) {
              return VolumeAndSource{VolumeInterval{Rational(9), Rational(32, 3), std::nullopt},
                                     "cA_2: >= 9, weight (3,3,2,2) bound 32/3"};
            }
            return VolumeAndSource{VolumeInterval{Rational(0), Rational(8), std::nullopt},
                                   "cA_{>=3}: weight (2,2,1,1) bound 8"};
          },
          [&](const HypersurfaceSupport& h) {
            const BoundResult r = minimize_bound(h.f, opts);
            return VolumeAndSource{VolumeInterval{Rational(0), *r.oracle_value, r.value},
                                   "monomial bound: grid oracle and refined minimum"};
          },
      },
      d);
}

}  // namespace

CatalogEntry catalog_volume(const SingularityDescriptor& d, const OptimizerOptions& opts) {
  validate(d);
  VolumeAndSource vs = volume_of(d, opts);
  std::optional<Rational> mld;
  try {
    mld = mld_of(d);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUnknownMld) throw;
  }
  return {d, std::move(vs.volume), std::move(mld), std::move(vs.source)};
}

Rational mld_of(const SingularityDescriptor& d) {
  validate(d);
  if (denotes_smooth_point(d)) return Rational(3);
  const auto unknown_mld = [&]() -> Rational {
    throw Error(ErrorKind::kUnknownMld, "no mld formula for " + to_string(d));
  };
  return std::visit(overloaded{
                        [&](const CyclicQuotient& q) {
                          if (!is_scalar_type(q)) return unknown_mld();
                          return Rational(3, q.r);
                        },
                        // Isolated cDV points are terminal Gorenstein: mld 2.
                        [&](const Ak& a) { return a.k ? Rational(2) : unknown_mld(); },
                        [&](const Dk& x) { return x.k ? Rational(2) : unknown_mld(); },
                        [](const Ek&) { return Rational(2); },
                        [](const CubicFamily&) { return Rational(2); },
                        [&](const auto&) { return unknown_mld(); },
                    },
                    d);
}

NvMldCheck check_nv_mld(const SingularityDescriptor& d) {
  const Rational mld = mld_of(d);
  const SurdValue vol = exact_value(catalog_volume(d).volume);
  const SurdValue cap = SurdValue(Rational(9) * mld);
  return {vol <= cap, vol == cap, vol, mld};
}

// ---------------------------------------------------------------------------
// Classification

bool acts_freely_in_codim1(const CyclicQuotient& q) {
  if (q.r == 1) return true;
  const auto w = reduced_weights(q);
  if (std::gcd(std::gcd(w[0], w[1]), std::gcd(w[2], q.r)) != 1) return false;
  for (int j = 1; j < q.r; ++j) {
    int moving = 0;
    for (int x : w) moving += (j * x) % q.r != 0;
    if (moving < 2) return false;
  }
  return true;
}

std::optional<std::string> listed_quotient_type(const CyclicQuotient& q) {
  static const std::array<CyclicQuotient, 4> kListed{
      CyclicQuotient{2, {1, 1, 1}}, CyclicQuotient{3, {1, 1, 0}}, CyclicQuotient{3, {1, 1, 1}},
      CyclicQuotient{3, {1, 1, 2}}};
  const auto mine = canonical_weights(q);
  for (const auto& listed : kListed) {
    if (listed.r == q.r && canonical_weights(listed) == mine) return to_string(SingularityDescriptor(listed));
  }
  return std::nullopt;
}

namespace {

Classification classify_ca(int k, const std::string& what) {
  if (k <= 2) {
    return {true, what + " is a hypersurface point of type cA_" + std::to_string(k) +
                      "; cA_{<=2} points have local volume >= 9"};
  }
  return {false, what + " is of type cA_" + std::to_string(k) + "; the weight (2,2,1,1) bounds the volume by 8"};
}

}  // namespace

Classification classify_volume_ge_9(const SingularityDescriptor& d, const OptimizerOptions& opts) {
  validate(d);
  const std::string name = to_string(d);
  return std::visit(
      overloaded{
          [&](const Smooth&) { return Classification{true, "smooth point, local volume 27"}; },
          [&](const CAClass& c) { return classify_ca(c.k, name); },
          [&](const Ak&) { return classify_ca(1, name); },
          [&](const Dk&) { return classify_ca(2, name); },
          [&](const Ek&) { return classify_ca(2, name); },
          [&](const CubicFamily&) { return classify_ca(2, name); },
          [&](const TransversalADE& t) {
            if (t.type == 'A') return classify_ca(t.k, name);
            return Classification{false, name + " is not of type cA (general section is D/E); volume " +
                                             to_string(catalog_volume(d).volume) + " < 9"};
          },
          [&](const CyclicQuotient& q) {
            if (q.r == 1) return Classification{true, "trivial group: smooth point"};
            if (q.r > 3) {
              return Classification{false, name + " has volume 27/" + std::to_string(q.r) + " < 9"};
            }
            if (auto listed = listed_quotient_type(q)) {
              return Classification{true, name + " is the listed cyclic quotient type " + *listed};
            }
            if (is_gorenstein(q)) {
              return Classification{true, name + " is Gorenstein: a transversal A_" + std::to_string(q.r - 1) +
                                              " hypersurface point of type cA_" + std::to_string(q.r - 1)};
            }
            return Classification{true, name + " has order " + std::to_string(q.r) + " <= 3, volume 27/" +
                                            std::to_string(q.r) + " >= 9"};
          },
          [&](const QuotientOrder& q) {
            if (q.n != 3) bad("classification applies to threefolds only");
            if (q.order == 1) return Classification{true, "trivial group: smooth point"};
            if (q.order > 3) {
              return Classification{false, name + " has volume 27/" + std::to_string(q.order) + " < 9"};
            }
            return Classification{true, name + ": a group of order " + std::to_string(q.order) +
                                            " is cyclic; volume 27/" + std::to_string(q.order) + " >= 9"};
          },
          [&](const HypersurfaceSupport& h) {
            const BoundResult r = minimize_bound(h.f, opts);
            if (*r.oracle_value < Rational(9)) {
              return Classification{false, "exact monomial bound " + r.oracle_value->to_string() + " < 9"};
            }
            if (r.value < 9.0 - 1e-9) {
              return Classification{false, "monomial bound " + std::to_string(r.value) + " < 9"};
            }
            throw Error(ErrorKind::kUndecidable,
                        "monomial bound " + std::to_string(r.value) +
                            " >= 9; the cA type of an arbitrary support is not computed");
          },
      },
      d);
}

// ---------------------------------------------------------------------------
// Known values and dumps

std::vector<SingularityDescriptor> standard_descriptors() {
  std::vector<SingularityDescriptor> out{Smooth{}};
  for (int k = 1; k <= 4; ++k) out.push_back(Ak{k});
  out.push_back(Ak{std::nullopt});
  for (int k = 4; k <= 6; ++k) out.push_back(Dk{k});
  out.push_back(Dk{std::nullopt});
  for (int k = 6; k <= 8; ++k) out.push_back(Ek{k});
  for (int k = 3; k <= 6; ++k) out.push_back(CubicFamily{k});
  for (int k = 1; k <= 3; ++k) out.push_back(TransversalADE{'A', k});
  out.push_back(TransversalADE{'D', 4});
  for (int k = 6; k <= 8; ++k) out.push_back(TransversalADE{'E', k});
  for (const auto& q : {CyclicQuotient{2, {1, 1, 1}}, CyclicQuotient{2, {1, 1, 0}}, CyclicQuotient{3, {1, 1, 0}},
                        CyclicQuotient{3, {1, 1, 1}}, CyclicQuotient{3, {1, 1, 2}}, CyclicQuotient{3, {1, 2, 0}},
                        CyclicQuotient{4, {1, 1, 1}}, CyclicQuotient{4, {1, 1, 3}}, CyclicQuotient{5, {1, 1, 1}}}) {
    out.push_back(q);
  }
  for (int k = 0; k <= 3; ++k) out.push_back(CAClass{k});
  return out;
}

KnownVolumeList known_volume_list() {
  KnownVolumeList list;
  for (const auto& d : standard_descriptors()) {
    const CatalogEntry entry = catalog_volume(d);
    if (!is_exact(entry.volume)) continue;
    const SurdValue v = exact_value(entry.volume);
    if (v < SurdValue(9)) continue;
    auto it = std::find_if(list.values.begin(), list.values.end(), [&](const auto& kv) { return kv.value == v; });
    if (it == list.values.end()) {
      list.values.push_back({v, {d}});
    } else {
      it->witnesses.push_back(d);
    }
  }
  std::sort(list.values.begin(), list.values.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return list;
}

nlohmann::json to_json(const CatalogEntry& entry) {
  nlohmann::json j{{"descriptor", to_string(entry.descriptor)},
                   {"volume", to_string(entry.volume)},
                   {"volume_numeric", numeric_value(entry.volume)},
                   {"mld", entry.mld ? nlohmann::json(entry.mld->to_string()) : nlohmann::json(nullptr)},
                   {"source", entry.source}};
  if (const auto* iv = std::get_if<VolumeInterval>(&entry.volume)) {
    j["volume_interval"] = {{"lo", iv->lo.to_string()}, {"hi", iv->hi.to_string()}};
  }
  return j;
}

nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& entries) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : entries) out.push_back(to_json(e));
  return out;
}

}  // namespace nvol
