#include "nvol/screener.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nvol/error.hpp"

namespace nvol {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::kR26: return "R26";
    case Regime::kR22: return "R22";
    case Regime::kR11: return "R11";
  }
  return "unknown";
}

Rational liu_lower_bound(const Rational& volume) {
  if (volume.sign() <= 0) throw Error(ErrorKind::kInvalidArgument, "Fano volume must be positive");
  return Rational(27) * volume / Rational(64);
}

ScreeningReport screen_fano(const Rational& volume, bool smoothable) {
  ScreeningReport report;
  report.volume = volume;
  report.liu_bound = liu_lower_bound(volume);
  report.smoothable = smoothable;

  const bool r26 = volume >= Rational(26);
  const bool r22 = volume >= Rational(22);
  const bool r11 = volume >= Rational(11);
  if (r26) report.regimes.push_back(Regime::kR26);
  if (r22) report.regimes.push_back(Regime::kR22);
  if (r11) report.regimes.push_back(Regime::kR11);

  const Rational& lb = report.liu_bound;
  if (r26) report.justifications.push_back({Regime::kR26, lb, Rational(32, 3), lb > Rational(32, 3)});
  if (r22) report.justifications.push_back({Regime::kR22, lb, Rational(9), lb > Rational(9)});
  if (r11) report.justifications.push_back({Regime::kR11, lb, Rational(9, 2), lb > Rational(9, 2)});

  auto add = [&](const char* tag, std::string citation) { report.allowed.push_back({tag, std::move(citation)}); };
  if (r26) {
    add(tags::kCA1, "volume >= 351/32 > 32/3 rules out cA2 and every other class");
    add(tags::kHalfQuotient, "27/2 >= 351/32");
  } else if (r22) {
    add(tags::kCA1, "volume >= 297/32 > 9");
    add(tags::kIsolatedCA2, "volume >= 297/32 > 9");
    add(tags::kDInfinity, "the only non-isolated cA2 point with volume > 9");
    add(tags::kHalfQuotient, "27/2 >= 297/32");
  } else if (r11) {
    add(tags::kGorensteinCanonical, "Gorenstein points: no restriction beyond canonical");
    add(tags::kCA1, "Gorenstein");
    add(tags::kIsolatedCA2, "Gorenstein");
    add(tags::kDInfinity, "Gorenstein");
    add(tags::kHalfQuotient, "index-2 cover has volume 27 > 9");
    add(tags::kQuotientOfCA2, "volume >= 297/64 > 9/2; index-1 cover has volume > 9");
    report.constraint = "every non-Gorenstein point is a cyclic quotient of a (possibly smooth) cA_{<=2} point";
  } else {
    report.unrestricted = true;
    add(tags::kAnyKlt, "no threshold applies");
    add(tags::kGorensteinCanonical, "no threshold applies");
    add(tags::kCA1, "no threshold applies");
    add(tags::kIsolatedCA2, "no threshold applies");
    add(tags::kDInfinity, "no threshold applies");
    add(tags::kHalfQuotient, "no threshold applies");
    add(tags::kQuotientOfCA2, "no threshold applies");
  }
  if (smoothable) {
    // 1/2(1,1,1) points are not Q-Gorenstein smoothable.
    std::erase_if(report.allowed, [](const AllowedClass& c) { return c.tag == tags::kHalfQuotient; });
  }
  return report;
}

bool allows(const ScreeningReport& report, const std::string& tag) {
  return std::any_of(report.allowed.begin(), report.allowed.end(),
                     [&](const AllowedClass& c) { return c.tag == tag; });
}

std::optional<SingularityDescriptor> representative(const std::string& tag) {
  if (tag == tags::kCA1) return CAClass{1};
  if (tag == tags::kIsolatedCA2) return CAClass{2};
  if (tag == tags::kDInfinity) return Dk{std::nullopt};
  if (tag == tags::kHalfQuotient) return CyclicQuotient{2, {1, 1, 1}};
  return std::nullopt;
}

nlohmann::json to_json(const ScreeningReport& report) {
  nlohmann::json regimes = nlohmann::json::array();
  for (auto r : report.regimes) regimes.push_back(to_string(r));
  nlohmann::json allowed = nlohmann::json::array();
  for (const auto& a : report.allowed) allowed.push_back({{"tag", a.tag}, {"citation", a.citation}});
  nlohmann::json just = nlohmann::json::array();
  for (const auto& j : report.justifications) {
    just.push_back({{"regime", to_string(j.regime)},
                    {"lhs", j.lhs.to_string()},
                    {"rhs", j.rhs.to_string()},
                    {"holds", j.holds}});
  }
  return {{"volume", report.volume.to_string()},
          {"liu_bound", report.liu_bound.to_string()},
          {"liu_bound_numeric", report.liu_bound.to_double()},
          {"regime", regimes},
          {"allowed", allowed},
          {"justifications", just},
          {"unrestricted", report.unrestricted},
          {"smoothable", report.smoothable},
          {"constraint", report.constraint.empty() ? nlohmann::json(nullptr) : nlohmann::json(report.constraint)}};
}

std::vector<ScreeningRow> screen_table(std::string_view text, bool smoothable) {
  std::vector<ScreeningRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto sep = line.find_first_of(",\t");
    if (sep == std::string::npos) {
      throw Error(ErrorKind::kSyntax, "line " + std::to_string(line_no) + ": expected 'family,volume'");
    }
    std::string family = line.substr(0, sep);
    family.erase(0, family.find_first_not_of(" \t"));
    family.erase(family.find_last_not_of(" \t\r") + 1);
    const Rational volume = Rational::parse(line.substr(sep + 1));
    rows.push_back({family, screen_fano(volume, smoothable)});
  }
  return rows;
}

}  // namespace nvol
