#include "nvol/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nvol/catalog.hpp"
#include "nvol/error.hpp"
#include "nvol/screener.hpp"
#include "nvol/valuation.hpp"

namespace nvol {

namespace {

constexpr double kOptimizerTolerance = 1e-6;

const SurdValue& six_root_three() {
  static const SurdValue value(Rational(0), Rational(6), 3);
  return value;
}

PolySupport poly(const char* text) { return parse_polynomial(text, 4); }

ExactWeight rational_weight(std::initializer_list<Rational> w) { return ExactWeight(std::vector<Rational>(w)); }

class ClaimSink {
 public:
  explicit ClaimSink(std::string section) : section_(std::move(section)) {}

  void exact(std::string id, std::string location, const SurdValue& expected, const SurdValue& computed) {
    Claim c{std::move(id), section_, std::move(location), expected.to_string(), computed.to_string()};
    c.delta = std::abs(computed.to_double() - expected.to_double());
    c.exact = true;
    c.pass = computed == expected;
    claims_.push_back(std::move(c));
  }

  void exact_text(std::string id, std::string location, std::string expected, std::string computed) {
    Claim c{std::move(id), section_, std::move(location), expected, computed};
    c.exact = true;
    c.pass = expected == computed;
    c.delta = c.pass ? 0.0 : 1.0;
    claims_.push_back(std::move(c));
  }

  void numeric(std::string id, std::string location, const SurdValue& expected, double computed) {
    Claim c{std::move(id), section_, std::move(location), expected.to_string(), ""};
    std::ostringstream os;
    os.precision(12);
    os << computed;
    c.computed = os.str();
    c.delta = std::abs(computed - expected.to_double());
    c.tolerance = kOptimizerTolerance;
    c.exact = false;
    c.pass = c.delta <= c.tolerance;
    claims_.push_back(std::move(c));
  }

  void push(Claim c) { claims_.push_back(std::move(c)); }

  std::vector<Claim> take() { return std::move(claims_); }

 private:
  std::string section_;
  std::vector<Claim> claims_;
};

double minimized(const char* text, const OptimizerOptions& opts) { return minimize_bound(poly(text), opts).value; }

std::vector<Claim> ade_examples(const OptimizerOptions& opts) {
  ClaimSink sink("ade-examples");
  sink.numeric("ade.a1-volume", "A_k family, k = 1", Rational(16), minimized("x1*x2 + x3^2 + x4^2", opts));
  sink.numeric("ade.a2-volume", "A_k family, k = 2", Rational(125, 9), minimized("x1*x2 + x3^2 + x4^3", opts));
  sink.numeric("ade.ak-volume", "A_k family, k >= 3 (k = 3)", Rational(27, 2),
               minimized("x1*x2 + x3^2 + x4^4", opts));
  sink.numeric("ade.transversal-a1-volume", "cA_1 not A_k: transversal A_1", Rational(27, 2),
               minimized("x1*x2 + x3^2", opts));
  {
    // One row for the whole family; per-k rows live in "cubic-family".
    double worst = 0.0;
    std::ostringstream computed;
    computed.precision(10);
    for (int k = 3; k <= 6; ++k) {
      const double v = minimize_bound(parse_polynomial("x1*x2 + x3^3 + x4^" + std::to_string(k), 4), opts).value;
      worst = std::max(worst, std::abs(v - ade_family_volume(k).to_double()));
      computed << (k > 3 ? ", " : "") << v;
    }
    Claim c{"ade.cubic-family", "ade-examples", "x1x2 + x3^3 + x4^k, k = 3..6", "32/3, 343/36, 2048/225, 9",
            computed.str()};
    c.delta = worst;
    c.tolerance = kOptimizerTolerance;
    c.exact = false;
    c.pass = worst <= kOptimizerTolerance;
    sink.push(std::move(c));
  }
  sink.numeric("ade.dk-volume", "D_k family, k >= 5 (k = 5)", six_root_three(),
               minimized("x1*x2 + x3^2*x4 + x4^4", opts));
  sink.numeric("ade.dinf-volume", "D_inf", six_root_three(), minimized("x1*x2 + x3^2*x4", opts));
  sink.numeric("ade.e7-volume", "E_7", Rational(250, 27), minimized("x1*x2 + x3^3 + x3*x4^3", opts));
  return sink.take();
}

std::vector<Claim> cubic_family(const OptimizerOptions& opts) {
  ClaimSink sink("cubic-family");
  const Rational expected[] = {Rational(32, 3), Rational(343, 36), Rational(2048, 225), Rational(9)};
  for (int k = 3; k <= 6; ++k) {
    sink.exact("cubic.formula-k" + std::to_string(k), "4(3+k)^3/(9k^2), k = " + std::to_string(k),
               expected[k - 3], ade_family_volume(k));
  }
  for (int k = 3; k <= 6; ++k) {
    sink.numeric("cubic.minimum-k" + std::to_string(k), "x1x2 + x3^3 + x4^" + std::to_string(k), expected[k - 3],
                 minimize_bound(parse_polynomial("x1*x2 + x3^3 + x4^" + std::to_string(k), 4), opts).value);
  }
  return sink.take();
}

std::vector<Claim> thresholds() {
  ClaimSink sink("thresholds");
  auto bound = [](const char* text, std::initializer_list<Rational> w) {
    return SurdValue(nv_bound(poly(text), rational_weight(w)).bound);
  };
  sink.exact("thresholds.non-cA-bound", "mult 2, not cA: weight (3,2,2,2)", Rational(27, 4),
             bound("x1^2 + x2^3 + x3^3 + x4^3", {3, 2, 2, 2}));
  sink.exact("thresholds.cA3-bound", "cA_{>=3}: weight (2,2,1,1)", Rational(8),
             bound("x1*x2 + x3^4 + x4^4", {2, 2, 1, 1}));
  sink.exact("thresholds.cA2-bound", "cA_2: weight (3,3,2,2)", Rational(32, 3),
             bound("x1*x2 + x3^3 + x4^3", {3, 3, 2, 2}));
  sink.exact("thresholds.non-isolated-cA2-bound", "x1x2 + x3^2(x3 + x4^2): weight (3,3,2,1)", Rational(9),
             bound("x1*x2 + x3^2*(x3 + x4^2)", {3, 3, 2, 1}));
  sink.exact("thresholds.liu-26", "27V/64 at V = 26", Rational(351, 32), liu_lower_bound(Rational(26)));
  sink.exact("thresholds.liu-22", "27V/64 at V = 22", Rational(297, 32), liu_lower_bound(Rational(22)));
  sink.exact("thresholds.liu-11", "27V/64 at V = 11", Rational(297, 64), liu_lower_bound(Rational(11)));
  return sink.take();
}

std::vector<Claim> witnesses() {
  ClaimSink sink("witnesses");
  auto at = [](const std::string& text, std::initializer_list<Rational> w) {
    return SurdValue(nv_bound(parse_polynomial(text, 4), rational_weight(w)).bound);
  };
  sink.exact("witness.a1", "A_1 at (1,1,1,1)", Rational(16), at("x1*x2 + x3^2 + x4^2", {1, 1, 1, 1}));
  sink.exact("witness.a2", "A_2 at (3,3,3,2)", Rational(125, 9), at("x1*x2 + x3^2 + x4^3", {3, 3, 3, 2}));
  sink.exact("witness.a3", "A_3 at (2,2,2,1)", Rational(27, 2), at("x1*x2 + x3^2 + x4^4", {2, 2, 2, 1}));
  sink.exact("witness.ainf", "A_inf at (2,2,2,1)", Rational(27, 2), at("x1*x2 + x3^2", {2, 2, 2, 1}));
  for (int k = 3; k <= 6; ++k) {
    sink.exact("witness.cubic-k" + std::to_string(k), "cubic k = " + std::to_string(k) + " at (3/2,3/2,1,3/k)",
               ade_family_volume(k),
               at("x1*x2 + x3^3 + x4^" + std::to_string(k), {Rational(3, 2), Rational(3, 2), 1, Rational(3, k)}));
  }
  sink.exact("witness.e7", "E_7 at (9,9,6,4)", Rational(250, 27), at("x1*x2 + x3^3 + x3*x4^3", {9, 9, 6, 4}));
  const SurdWeight dk_weight(std::vector<SurdValue>{SurdValue(1), SurdValue(1), SurdValue(Rational(-1), Rational(1), 3),
                                                    SurdValue(Rational(4), Rational(-2), 3)});
  sink.exact("witness.d5", "D_5 at (1,1,sqrt3-1,4-2sqrt3)", six_root_three(),
             nv_bound(poly("x1*x2 + x3^2*x4 + x4^4"), dk_weight).bound);
  sink.exact("witness.dinf", "D_inf at (1,1,sqrt3-1,4-2sqrt3)", six_root_three(),
             nv_bound(poly("x1*x2 + x3^2*x4"), dk_weight).bound);
  return sink.take();
}

std::vector<Claim> catalog_claims() {
  ClaimSink sink("catalog");
  sink.exact("catalog.quotient-1-3", "1/3(1,1,1): 27/3", Rational(9), quotient_volume(3, 3));
  sink.exact("catalog.quotient-1-2", "1/2(1,1,1): 27/2", Rational(27, 2), quotient_volume(3, 2));
  sink.exact("catalog.smooth", "smooth point: 3^3", Rational(27), quotient_volume(3, 1));
  sink.exact("catalog.odp", "A_1 (ODP) volume", Rational(16), exact_value(catalog_volume(Ak{1}).volume));
  sink.exact("catalog.cover-half", "degree-2 cover of volume 9/2", Rational(9), cover_transfer(Rational(9, 2), 2));
  sink.exact("catalog.mld-1-3", "mld of 1/3(1,1,1) = 3/r", Rational(1), mld_of(CyclicQuotient{3, {1, 1, 1}}));
  {
    const auto check = check_nv_mld(Ak{1});
    sink.exact_text("catalog.nv-mld-a1", "A_1: 16 <= 18, strict", "holds, strict",
                    std::string(check.holds ? "holds" : "fails") + (check.equality ? ", equality" : ", strict"));
  }
  {
    const auto check = check_nv_mld(CyclicQuotient{5, {1, 1, 1}});
    sink.exact_text("catalog.nv-mld-1-5", "1/5(1,1,1): 27/5 = 9 * 3/5", "holds, equality",
                    std::string(check.holds ? "holds" : "fails") + (check.equality ? ", equality" : ", strict"));
  }
  return sink.take();
}

std::vector<Claim> volume_list() {
  ClaimSink sink("volume-list");
  std::string computed;
  for (const auto& kv : known_volume_list().values) computed += (computed.empty() ? "" : " < ") + kv.value.to_string();
  sink.exact_text("volume-list.order", "known local volumes in [9, 27]",
                  "9 < 2048/225 < 250/27 < 343/36 < 6*sqrt(3) < 32/3 < 27/2 < 125/9 < 16 < 27", computed);
  return sink.take();
}

std::string tags_of(const ScreeningReport& r) {
  std::string out;
  for (const auto& a : r.allowed) out += (out.empty() ? "" : ", ") + a.tag;
  return out;
}

std::vector<Claim> screening() {
  ClaimSink sink("screening");
  sink.exact_text("screening.v26", "V >= 26", "cA1, 1/2(1,1,1)", tags_of(screen_fano(Rational(26), false)));
  sink.exact_text("screening.v22", "V >= 22", "cA1, isolated-cA2, D-infinity, 1/2(1,1,1)",
                  tags_of(screen_fano(Rational(22), false)));
  sink.exact_text("screening.v26-smoothable", "V >= 26, Q-Gorenstein smoothable", "cA1",
                  tags_of(screen_fano(Rational(26), true)));
  const auto r11 = screen_fano(Rational(11), false);
  sink.exact_text("screening.v11", "V >= 11: non-Gorenstein points", "cyclic-quotient-of-cA<=2",
                  allows(r11, tags::kQuotientOfCA2) && !r11.constraint.empty() ? "cyclic-quotient-of-cA<=2" : "");
  return sink.take();
}

}  // namespace

std::vector<std::string> reproduce_sections() {
  return {"thresholds", "witnesses", "ade-examples", "cubic-family", "catalog", "volume-list", "screening"};
}

std::vector<Claim> reproduce(const std::optional<std::string>& section, const OptimizerOptions& opts) {
  std::string wanted = section.value_or("");
  if (wanted == "example-5.1") wanted = "ade-examples";
  const std::vector<std::pair<std::string, std::function<std::vector<Claim>()>>> runners{
      {"thresholds", [] { return thresholds(); }},
      {"witnesses", [] { return witnesses(); }},
      {"ade-examples", [&] { return ade_examples(opts); }},
      {"cubic-family", [&] { return cubic_family(opts); }},
      {"catalog", [] { return catalog_claims(); }},
      {"volume-list", [] { return volume_list(); }},
      {"screening", [] { return screening(); }},
  };
  std::vector<Claim> out;
  bool matched = false;
  for (const auto& [name, run] : runners) {
    if (!wanted.empty() && name != wanted) continue;
    matched = true;
    for (auto& c : run()) out.push_back(std::move(c));
  }
  if (!matched) throw Error(ErrorKind::kInvalidArgument, "unknown reproduce section '" + wanted + "'");
  return out;
}

nlohmann::json to_json(const Claim& c) {
  return {{"id", c.id},       {"section", c.section}, {"location", c.location}, {"expected", c.expected},
          {"computed", c.computed}, {"delta", c.delta},     {"tolerance", c.tolerance}, {"exact", c.exact},
          {"pass", c.pass}};
}

}  // namespace nvol
