#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "twisthc/report.hpp"

namespace {

using namespace twisthc;
using nlohmann::json;

RunConfig config(std::int64_t sigma, std::int64_t M, OutputFormat fmt) {
  RunConfig cfg;
  cfg.sigma = sigma;
  cfg.max_winding = M;
  cfg.format = fmt;
  cfg.local = LocalModelParams::for_sigma(sigma);
  return cfg;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

TEST(Format, ParseAndReals) {
  EXPECT_EQ(parse_format("csv"), OutputFormat::Csv);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
  EXPECT_EQ(format_real(0.1 + 0.2), "0.3");
  EXPECT_EQ(round_real(1.0 / 3.0), 0.333333333333);
}

TEST(Config, Validation) {
  EXPECT_THROW(config(0, 3, OutputFormat::Text).validate(), std::invalid_argument);
  EXPECT_THROW(config(2, 0, OutputFormat::Text).validate(), std::invalid_argument);
  EXPECT_NO_THROW(config(2, 3, OutputFormat::Text).validate());
}

TEST(Generators, JsonRoundTripIsByteIdentical) {
  for (auto sigma : {1, 2, 5}) {
    auto cfg = config(sigma, 4, OutputFormat::Json);
    cfg.include_binding = true;
    const std::string out = render_generators(cfg);
    EXPECT_EQ(json::parse(out).dump(2) + "\n", out);
  }
}

TEST(Generators, RowsAndFields) {
  const auto j = json::parse(render_generators(config(2, 2, OutputFormat::Json)));
  ASSERT_EQ(j["generators"].size(), 10u);
  const auto& first = j["generators"][0];
  EXPECT_EQ(first["label"], "e_{1/1}");
  EXPECT_EQ(first["class"]["torsion"], 1);
  EXPECT_TRUE(first["mu_bar"].is_null());
  EXPECT_TRUE(first["action"].is_number());

  const auto csv = lines_of(render_generators(config(2, 2, OutputFormat::Csv)));
  EXPECT_EQ(csv.front(), "label,kind,n,m,class_torsion,class_free,parity,mu_bar,action");
  EXPECT_EQ(csv.size(), 11u);
}

TEST(Homology, CsvHeaderAndVerdict) {
  bool passed = false;
  const auto csv = lines_of(render_homology(config(3, 5, OutputFormat::Csv), &passed));
  EXPECT_TRUE(passed);
  EXPECT_EQ(csv.front(), "class_torsion,grading_or_winding,parity,kernel,image,homology");
  EXPECT_EQ(csv.back(), "# verdict: PASS");
}

TEST(Homology, JsonGradingsOneToSeventeen) {
  bool passed = false;
  const std::string out = render_homology(config(1, 10, OutputFormat::Json), &passed);
  EXPECT_TRUE(passed);
  EXPECT_EQ(json::parse(out).dump(2) + "\n", out);
  const auto j = json::parse(out);
  std::set<std::int64_t> gradings;
  for (const auto& b : j["blocks"]) {
    if (b["homology"] == 1) gradings.insert(b["grading_or_winding"].get<std::int64_t>());
  }
  ASSERT_EQ(gradings.size(), 17u);
  EXPECT_EQ(*gradings.begin(), 1);
  EXPECT_EQ(*gradings.rbegin(), 17);
}

TEST(Homology, SmallWindowRejected) {
  EXPECT_THROW(render_homology(config(2, 2, OutputFormat::Text)), std::invalid_argument);
}

TEST(Verify, AllPassAndFaultDetected) {
  const auto cfg = config(3, 10, OutputFormat::Text);
  const auto ok = run_verify_suite(cfg);
  EXPECT_TRUE(ok.ok());
  for (const auto& c : ok.checks) EXPECT_TRUE(c.result.ok) << c.name << ": " << c.result.counterexample;

  const auto bad = run_verify_suite(cfg, true);
  EXPECT_FALSE(bad.ok());
  bool named = false;
  for (const auto& c : bad.checks) {
    if (!c.result.ok && c.result.counterexample.find("<d ") != std::string::npos) named = true;
  }
  EXPECT_TRUE(named);
}

TEST(Local, ReturnMapRowsAllElliptic) {
  auto cfg = config(1, 1, OutputFormat::Json);
  const auto j = json::parse(render_return_map(cfg, 10, true));
  ASSERT_EQ(j["rows"].size(), 10u);
  for (const auto& r : j["rows"]) EXPECT_EQ(r["type"], "elliptic");
}

TEST(Local, LaurentCorrespondence) {
  const auto j = json::parse(render_laurent(config(1, 1, OutputFormat::Json), {0, 2}));
  EXPECT_TRUE(j["correspondence"].is_string());
}

}  // namespace
