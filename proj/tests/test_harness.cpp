#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "pwenv/harness/checks.hpp"

using namespace pwenv;
using namespace pwenv::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / ("pwenv_test_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Toml, SubsetParses) {
  const auto j = parse_toml_subset(R"(
# comment
suite = "sweep"   # trailing comment
p_grid = [0.6, 0.75]
k_grid = [3, 5,
          7]
pairs = 4
seed = 42
catalog = ["fejer", "centred"]

[quadrature]
rel_tolerance = 1e-9
tail_model = false
)");
  EXPECT_EQ(j.at("suite"), "sweep");
  EXPECT_EQ(j.at("k_grid").size(), 3u);
  EXPECT_EQ(j.at("quadrature").at("tail_model"), false);
  const ExperimentConfig c = config_from_json(j);
  EXPECT_EQ(c.p_grid, (std::vector<double>{0.6, 0.75}));
  EXPECT_EQ(c.pairs, 4);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.quad.rel_tolerance, 1e-9);
  EXPECT_FALSE(c.quad.tail_model);
  EXPECT_EQ(c.catalog.size(), 2u);
}

TEST(Toml, MalformedInputIsRejected) {
  EXPECT_THROW(parse_toml_subset("p_grid = [0.5, 0.6"), Error);
  EXPECT_THROW(parse_toml_subset("just words"), Error);
  EXPECT_THROW(parse_toml_subset("s = \"unterminated"), Error);
}

TEST(Config, UnknownKeysAndRangesAreErrors) {
  EXPECT_THROW(config_from_json(nlohmann::json{{"p_grdi", {0.5}}}), Error);
  EXPECT_THROW(config_from_json(nlohmann::json{{"sweep_p", 0.4}}), Error);
  EXPECT_THROW(config_from_json(nlohmann::json{{"envelope_q", 0.25}}), Error);
  EXPECT_THROW(config_from_json(nlohmann::json{{"k_grid", {1}}}), Error);
  EXPECT_THROW(config_from_json(nlohmann::json{{"pairs", "many"}}), Error);
  EXPECT_NO_THROW(config_from_json(nlohmann::json::object()));
}

TEST(Config, LoadsJsonAndTomlFiles) {
  const auto d = temp_dir("config");
  std::ofstream(d / "a.json") << R"({"pairs": 3, "quadrature": {"x_truncation": 40}})";
  std::ofstream(d / "b.toml") << "pairs = 3\n[quadrature]\nx_truncation = 40\n";
  const ExperimentConfig a = load_config((d / "a.json").string());
  const ExperimentConfig b = load_config((d / "b.toml").string());
  EXPECT_EQ(a.pairs, b.pairs);
  EXPECT_EQ(a.quad.x_truncation, 40.0);
  EXPECT_EQ(b.quad.x_truncation, 40.0);
  try {
    load_config((d / "missing.toml").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(Report, JudgeSemantics) {
  EXPECT_EQ(judge(1e-3, 1e-4), Status::pass);
  EXPECT_EQ(judge(0.0, 0.0), Status::pass);
  EXPECT_EQ(judge(-5e-5, 1e-4), Status::low_confidence);
  EXPECT_EQ(judge(5e-5, 1e-4), Status::low_confidence);
  EXPECT_EQ(judge(-2e-4, 1e-4), Status::fail);
  EXPECT_EQ(judge(std::numeric_limits<double>::quiet_NaN(), 1.0), Status::fail);
  EXPECT_EQ(judge(-std::numeric_limits<double>::infinity(), 1.0), Status::fail);
}

TEST(Report, FailedOnlyCountsFailRows) {
  VerificationReport r{"x", {}, {}};
  r.add(record("a", {}, 1.0, 2.0));
  r.add(check("b", {}, 1.0, 1.0, -0.5, 1.0));
  EXPECT_FALSE(r.failed());
  r.add(check("c", {}, 1.0, 1.0, -2.0, 1.0));
  EXPECT_TRUE(r.failed());
}

TEST(Report, RenderingIsDeterministic) {
  VerificationReport r{"demo", {}, {}};
  r.add(check("ineq", ojson{{"p", 0.75}, {"f", "a,\"b\""}}, 1.0 / 3.0, 0.5, 0.5 - 1.0 / 3.0, 1e-12));
  r.add(record("info", {}, std::numeric_limits<double>::infinity(), 2.0, "note"));
  r.extra["table"] = ojson::array({1, 2});
  const auto d1 = temp_dir("r1"), d2 = temp_dir("r2");
  write_report(d1, r);
  write_report(d2, r);
  EXPECT_EQ(slurp(d1 / "demo.json"), slurp(d2 / "demo.json"));
  EXPECT_EQ(slurp(d1 / "demo.csv"), slurp(d2 / "demo.csv"));
  const std::string csv = slurp(d1 / "demo.csv");
  EXPECT_NE(csv.find("\"{\"\"p\"\":0.75,\"\"f\"\":\"\"a,\\\"\"b\\\"\"\"\"}\""), std::string::npos) << csv;
  EXPECT_NE(csv.find("0.33333333333333331"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(d1 / "demo.json"));
  EXPECT_TRUE(j.at("checks").at(1).at("lhs").is_null());
  EXPECT_EQ(j.at("summary").at("report_only"), 1);
  EXPECT_FALSE(std::filesystem::exists(d1 / "demo.json.tmp"));
}

TEST(Catalog, MembershipInEp) {
  const auto cat = default_catalog();
  const auto& fejer = find_entry(cat, "fejer").f;
  EXPECT_TRUE(in_ep(fejer, 0.75));
  EXPECT_FALSE(in_ep(fejer, 0.5));
  EXPECT_TRUE(in_ep(find_entry(cat, "bump[-pi,-pi+1/8]k3").f, 0.25));
  EXPECT_THROW(find_entry(cat, "nope"), Error);
  EXPECT_EQ(select(cat, {}).size(), cat.size());
  EXPECT_EQ(select(cat, {"centred", "fejer"}).front().name, "centred");
}

TEST(Family, SeededAndReproducible) {
  const QuadratureSpec quad{};
  const Dictionary dict = make_dictionary(0.75, 1.0, quad);
  const auto a = equivalence_family(dict, 6, 5);
  const auto b = equivalence_family(dict, 6, 5);
  const auto c = equivalence_family(dict, 6, 6);
  ASSERT_EQ(a.size(), 6u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].f(0.7), b[i].f(0.7));
    differs = differs || a[i].f(0.7) != c[i].f(0.7);
  }
  EXPECT_TRUE(differs);
}

TEST(Checks, ClosedFormsPass) {
  ExperimentConfig cfg;
  cfg.y_grid = {0.0, 0.5, -1.0};
  const VerificationReport r = check_closed_forms(cfg);
  EXPECT_EQ(r.count(Status::pass), r.rows.size());
  EXPECT_EQ(r.rows.size(), 5u);
}

TEST(Checks, PlancherelPolyaSmallGrid) {
  ExperimentConfig cfg;
  cfg.catalog = {"fejer", "bump[-pi,-pi+1/2]k3"};
  cfg.pp_p_grid = {0.5, 1.0};
  cfg.y_grid = {0.0, 1.0};
  const VerificationReport r = check_plancherel_polya(cfg);
  EXPECT_FALSE(r.failed());
  EXPECT_EQ(r.count(Status::report_only), 1u);  // fejer at p = 1/2 is not in E^p
}

TEST(Checks, SpectralGrowthIsReportOnly) {
  ExperimentConfig cfg;
  cfg.catalog = {"fejer"};
  cfg.p_grid = {0.75};
  const VerificationReport r = check_spectral_growth(cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.count(Status::report_only), 2u);
  EXPECT_TRUE(std::isfinite(r.rows[0].lhs / r.rows[0].rhs));
  EXPECT_GT(r.rows[0].lhs, 0.0);
  EXPECT_EQ(r.rows[1].note, "constant 0");
}

TEST(Checks, SingleEpsHasNoMonotonicityRow) {
  ExperimentConfig cfg;
  cfg.eps_grid = {1.0};
  cfg.k_grid = {3};
  const VerificationReport r = run_counterexample_sweep(cfg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].id, "counterexample.ratio");
  EXPECT_FALSE(r.failed());
}
