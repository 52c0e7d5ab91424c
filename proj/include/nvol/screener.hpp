#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nvol/catalog.hpp"
#include "nvol/rational.hpp"

namespace nvol {

// Class tags reported by the screener, from most to least restrictive.
namespace tags {
inline constexpr const char* kCA1 = "cA1";
inline constexpr const char* kIsolatedCA2 = "isolated-cA2";
inline constexpr const char* kDInfinity = "D-infinity";
inline constexpr const char* kHalfQuotient = "1/2(1,1,1)";
// Any Gorenstein canonical point.
inline constexpr const char* kGorensteinCanonical = "gorenstein-canonical";
// Non-Gorenstein point that is a cyclic quotient of a (possibly smooth)
// cA_{<=2} hypersurface point.
inline constexpr const char* kQuotientOfCA2 = "cyclic-quotient-of-cA<=2";
// Any klt point; only present when no threshold applies.
inline constexpr const char* kAnyKlt = "any-klt";
}  // namespace tags

enum class Regime { kR26, kR22, kR11 };

const char* to_string(Regime r);

struct AllowedClass {
  std::string tag;
  std::string citation;
};

// lhs > rhs certifies the corresponding regime.
struct Justification {
  Regime regime;
  Rational lhs;
  Rational rhs;
  bool holds;
};

struct ScreeningReport {
  Rational volume;
  Rational liu_bound;  // 27 V / 64
  std::vector<Regime> regimes;
  std::vector<AllowedClass> allowed;
  std::vector<Justification> justifications;
  bool unrestricted = false;  // below every threshold
  bool smoothable = false;
  std::string constraint;  // structural statement for the weakest regime, if any
};

// 27 V / 64, the lower bound on local volumes of a K-semistable Fano
// threefold of anticanonical volume V.
Rational liu_lower_bound(const Rational& volume);

ScreeningReport screen_fano(const Rational& volume, bool smoothable);

bool allows(const ScreeningReport& report, const std::string& tag);

// Representative descriptor for a class tag; used to cross-check tags
// against catalog volumes. Returns nullopt for structural tags.
std::optional<SingularityDescriptor> representative(const std::string& tag);

nlohmann::json to_json(const ScreeningReport& report);

struct ScreeningRow {
  std::string family;
  ScreeningReport report;
};

// Rows of "family,volume" (comma or tab separated, '#' comments).
std::vector<ScreeningRow> screen_table(std::string_view text, bool smoothable);

}  // namespace nvol
