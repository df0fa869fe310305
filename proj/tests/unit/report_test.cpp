#include "fracstab/report.hpp"

#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "support/test_systems.hpp"

namespace fracstab {
namespace {

CheckOutcome example1(char which) {
  ProblemFile p;
  p.orders = parse_decimal_orders(testing::example1_orders(which));
  p.A = testing::example1_matrix();
  return run_check(p);
}

TEST(CheckJson, Example1aContents) {
  const nlohmann::json j = nlohmann::json::parse(render_check_json(example1('a')));
  EXPECT_EQ(j["tool"]["name"], "fracstab");
  EXPECT_EQ(j["orders"]["sigma"], 15);
  EXPECT_EQ(j["orders"]["sigma_d"], 120);
  EXPECT_EQ(j["orders"]["N"], 78);
  EXPECT_EQ(j["classification"]["counts"]["cat3"], 74);
  EXPECT_EQ(j["classification"]["stable_side"], 4);
  EXPECT_EQ(j["classification"]["unstable_side"], 0);
  EXPECT_EQ(j["zeros"].size(), 4u);
  EXPECT_EQ(j["eigenvalues"]["mu"].size(), 78u);
  EXPECT_EQ(j["stable"], true);
  EXPECT_EQ(j["a_singular"], false);
}

TEST(CheckJson, Deterministic) {
  EXPECT_EQ(render_check_json(example1('d')), render_check_json(example1('d')));
  EXPECT_EQ(render_check_text(example1('d')), render_check_text(example1('d')));
}

TEST(CheckText, SummaryRow) {
  const std::string text = render_check_text(example1('d'));
  EXPECT_NE(text.find("0.96"), std::string::npos);
  EXPECT_NE(text.find("128"), std::string::npos);
  EXPECT_NE(text.find("83"), std::string::npos);
  EXPECT_NE(text.find("no"), std::string::npos);
}

TEST(ZerosText, FourDecimals) {
  EXPECT_EQ(render_zeros_text(example1('a')),
            "-0.4364 +0.5828i\n-0.4364 -0.5828i\n-3.0819 +3.7337i\n-3.0819 -3.7337i\n");
}

TEST(ZerosJson, Lists) {
  const nlohmann::json j = nlohmann::json::parse(render_zeros_json(example1('d')));
  EXPECT_EQ(j["zeros"].size(), 2u);
  EXPECT_EQ(j["stable"], false);
}

TEST(OracleJson, Fields) {
  OracleOutcome o;
  o.pencil_mu = {1.0, 2.0};
  o.distance = 1e-9;
  const nlohmann::json j = nlohmann::json::parse(render_oracle_json(o, 1e-6));
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["within_tolerance"], true);
  EXPECT_NE(render_oracle_text(o, 1e-6).find("matched distance"), std::string::npos);
}

TEST(TrajectoryCsv, HeaderAndRoundTrip) {
  Trajectory t;
  t.t = {0.0, 0.1};
  t.x.resize(2, 2);
  t.x << 1.0, -2.0, 1.0 / 3.0, 1e-300;
  std::ostringstream out;
  write_trajectory_csv(out, t);
  EXPECT_EQ(out.str(), "t,x1,x2\n0,1,-2\n0.1,0.3333333333333333,1e-300\n");
}

}  // namespace
}  // namespace fracstab
