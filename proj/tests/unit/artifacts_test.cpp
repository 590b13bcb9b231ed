// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "kreiss/artifacts.hpp"

using namespace kreiss;

TEST(Artifacts, FormatRoundTrips)
{
  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, -7.0, 1e22, 123456789.125})
  {
    const std::string s = artifacts::format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(artifacts::format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(artifacts::format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(artifacts::format_double(std::nan("")), "nan");
}

TEST(Artifacts, ReportJsonShape)
{
  VerificationReport rep;
  rep.add(make_check("a", "x <= y", {1.0}, {2.0}, 1.05));
  rep.add(failed_check("b", "z", "boom"));
  const auto doc = nlohmann::json::parse(artifacts::report_json(rep));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[0]["check"], "a");
  EXPECT_EQ(doc[0]["worst_margin"], 0.5);
  EXPECT_EQ(doc[0]["slack"], 1.05);
  EXPECT_EQ(doc[0]["pass"], true);
  EXPECT_TRUE(doc[0]["details"].contains("left"));
  EXPECT_EQ(doc[1]["pass"], false);
  for (const auto &key : {"check", "inequality", "worst_margin", "slack", "pass", "details"})
    EXPECT_TRUE(doc[1].contains(key)) << key;
}

TEST(Artifacts, FitJsonShape)
{
  GrowthFitResult f;
  f.a = 1.0;
  f.c = 2.0;
  f.t_min = 2.0;
  f.t_max = 30.0;
  const std::vector<artifacts::LabelledFit> fits = {{"forward", f}};
  const auto doc = nlohmann::json::parse(artifacts::fit_json(fits));
  ASSERT_TRUE(doc.is_array());
  EXPECT_EQ(doc[0]["model"], "power");
  EXPECT_TRUE(doc[0]["omega"].is_null());
  for (const auto &key : {"label", "model", "c", "a", "omega", "rms_residual", "t_min", "t_max"})
    EXPECT_TRUE(doc[0].contains(key)) << key;
}

TEST(Artifacts, MakeCheckMargins)
{
  const auto e = make_check("c", "", {1.0, 3.0}, {2.0, 2.0}, 1.05);
  EXPECT_EQ(e.worst_margin, 1.5);
  EXPECT_FALSE(e.pass);
  const auto inf = make_check("c", "", {1.0}, {0.0}, 1.0);
  EXPECT_TRUE(std::isinf(inf.worst_margin));
  EXPECT_FALSE(make_check("c", "", {}, {}, 1.0).pass);
}
