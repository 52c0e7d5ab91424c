#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "nvol/catalog.hpp"
#include "nvol/error.hpp"
#include "nvol/screener.hpp"

using nvol::Rational;
using nvol::Regime;
using nvol::screen_fano;

namespace {

std::vector<std::string> tags_of(const nvol::ScreeningReport& r) {
  std::vector<std::string> out;
  for (const auto& a : r.allowed) out.push_back(a.tag);
  return out;
}

std::set<std::string> tag_set(const nvol::ScreeningReport& r) {
  const auto t = tags_of(r);
  return {t.begin(), t.end()};
}

}  // namespace

TEST(Liu, Values) {
  EXPECT_EQ(nvol::liu_lower_bound(Rational(26)), Rational(351, 32));
  EXPECT_EQ(nvol::liu_lower_bound(Rational(22)), Rational(297, 32));
  EXPECT_EQ(nvol::liu_lower_bound(Rational(11)), Rational(297, 64));
  EXPECT_EQ(nvol::liu_lower_bound(Rational(64)), Rational(27));
  EXPECT_THROW(nvol::liu_lower_bound(Rational(0)), nvol::Error);
  EXPECT_THROW(nvol::liu_lower_bound(Rational(-3)), nvol::Error);
  EXPECT_THROW(screen_fano(Rational(-1), false), nvol::Error);
}

TEST(Screen, V26) {
  const auto r = screen_fano(Rational(26), false);
  EXPECT_EQ(r.regimes, (std::vector<Regime>{Regime::kR26, Regime::kR22, Regime::kR11}));
  EXPECT_EQ(tags_of(r), (std::vector<std::string>{"cA1", "1/2(1,1,1)"}));
  ASSERT_FALSE(r.justifications.empty());
  EXPECT_EQ(r.justifications[0].lhs, Rational(351, 32));
  EXPECT_EQ(r.justifications[0].rhs, Rational(32, 3));
  EXPECT_TRUE(r.justifications[0].holds);
}

TEST(Screen, V26Smoothable) {
  EXPECT_EQ(tags_of(screen_fano(Rational(26), true)), (std::vector<std::string>{"cA1"}));
}

TEST(Screen, V22) {
  const auto r = screen_fano(Rational(22), false);
  EXPECT_EQ(tags_of(r), (std::vector<std::string>{"cA1", "isolated-cA2", "D-infinity", "1/2(1,1,1)"}));
  EXPECT_EQ(r.justifications[0].lhs, Rational(297, 32));
  EXPECT_EQ(r.justifications[0].rhs, Rational(9));
  EXPECT_TRUE(r.justifications[0].holds);
}

TEST(Screen, V11) {
  const auto r = screen_fano(Rational(11), false);
  EXPECT_EQ(r.regimes, (std::vector<Regime>{Regime::kR11}));
  EXPECT_TRUE(nvol::allows(r, nvol::tags::kQuotientOfCA2));
  EXPECT_TRUE(nvol::allows(r, nvol::tags::kGorensteinCanonical));
  EXPECT_FALSE(r.constraint.empty());
  EXPECT_EQ(r.justifications[0].lhs, Rational(297, 64));
  EXPECT_EQ(r.justifications[0].rhs, Rational(9, 2));
}

TEST(Screen, V10Unrestricted) {
  const auto r = screen_fano(Rational(10), false);
  EXPECT_TRUE(r.regimes.empty());
  EXPECT_TRUE(r.unrestricted);
  EXPECT_TRUE(nvol::allows(r, nvol::tags::kAnyKlt));
  EXPECT_FALSE(nvol::allows(screen_fano(Rational(10), true), nvol::tags::kHalfQuotient));
}

TEST(ScreenProperty, MonotoneShrinkage) {
  const std::vector<Rational> vs{Rational(10), Rational(11), Rational(22), Rational(26), Rational(64)};
  for (bool smoothable : {false, true}) {
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      const auto lo = tag_set(screen_fano(vs[i], smoothable));
      const auto hi = tag_set(screen_fano(vs[i + 1], smoothable));
      EXPECT_TRUE(std::includes(lo.begin(), lo.end(), hi.begin(), hi.end())) << vs[i] << " -> " << vs[i + 1];
      const auto regimes_lo = screen_fano(vs[i], smoothable).regimes;
      const auto regimes_hi = screen_fano(vs[i + 1], smoothable).regimes;
      EXPECT_LE(regimes_lo.size(), regimes_hi.size());
    }
  }
}

TEST(ScreenProperty, ThresholdsAreExact) {
  const Rational eps(1, 1000000);
  for (int t : {26, 22, 11}) {
    EXPECT_EQ(screen_fano(Rational(t), false).regimes.size(),
              screen_fano(Rational(t) - eps, false).regimes.size() + 1)
        << t;
  }
}

TEST(ScreenProperty, SmoothableRemovesHalfQuotientEverywhere) {
  for (int v : {1, 10, 11, 15, 22, 26, 64}) {
    const auto plain = screen_fano(Rational(v), false);
    const auto smooth = screen_fano(Rational(v), true);
    EXPECT_TRUE(nvol::allows(plain, nvol::tags::kHalfQuotient)) << v;
    EXPECT_FALSE(nvol::allows(smooth, nvol::tags::kHalfQuotient)) << v;
    EXPECT_EQ(plain.allowed.size(), smooth.allowed.size() + 1);
  }
}

// Allowed classes at V >= 22 have volume at least 9; at V >= 26 their
// volume can exceed 32/3.
TEST(ScreenProperty, ConsistentWithCatalog) {
  auto low_end = [](const nvol::Volume& v) {
    if (const auto* iv = std::get_if<nvol::VolumeInterval>(&v)) return nvol::SurdValue(iv->lo);
    return nvol::exact_value(v);
  };
  auto high_end = [](const nvol::Volume& v) {
    if (const auto* iv = std::get_if<nvol::VolumeInterval>(&v)) return nvol::SurdValue(iv->hi);
    return nvol::exact_value(v);
  };
  for (const auto& tag : tags_of(screen_fano(Rational(22), false))) {
    const auto d = nvol::representative(tag);
    ASSERT_TRUE(d) << tag;
    EXPECT_GE(low_end(nvol::catalog_volume(*d).volume), nvol::SurdValue(9)) << tag;
  }
  for (const auto& tag : tags_of(screen_fano(Rational(26), false))) {
    const auto d = nvol::representative(tag);
    ASSERT_TRUE(d) << tag;
    EXPECT_GT(high_end(nvol::catalog_volume(*d).volume), nvol::SurdValue(Rational(32, 3))) << tag;
  }
}

TEST(ScreenJson, Fields) {
  const auto j = nvol::to_json(screen_fano(Rational(22), false));
  EXPECT_EQ(j["liu_bound"], "297/32");
  EXPECT_EQ(j["volume"], "22");
  EXPECT_EQ(j["regime"], nlohmann::json::array({"R22", "R11"}));
  EXPECT_TRUE(j["constraint"].is_null());
}

TEST(ScreenTable, Rows) {
  const auto rows = nvol::screen_table("# family, volume\nV22,22\n1-17\t64\n\nodd, 27/2\n", false);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].family, "V22");
  EXPECT_EQ(rows[1].report.liu_bound, Rational(27));
  EXPECT_EQ(rows[2].report.volume, Rational(27, 2));
  EXPECT_THROW(nvol::screen_table("no separator\n", false), nvol::Error);
  EXPECT_THROW(nvol::screen_table("x,abc\n", false), nvol::Error);
}
