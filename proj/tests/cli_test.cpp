#include "momenta/cli.hpp"

#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "momenta/matrix_io.hpp"
#include "support/cli_runner.hpp"
#include "support/fixtures.hpp"

namespace momenta {
namespace {

using testing::data_file;
using testing::run_cli;

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(CliBounds, ExampleMatrix) {
  const auto r = run_cli({"bounds", data_file("example3.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "cubic: x^3 + (0)x^2 + (-144)x + (0)")) << r.out;
  EXPECT_TRUE(contains(r.out, "roots: -12.0000000000 0.0000000000 12.0000000000")) << r.out;
  EXPECT_TRUE(contains(r.out, "lambda_min <= -12.0000000000")) << r.out;
  EXPECT_TRUE(contains(r.out, "lambda_max >= 12.0000000000")) << r.out;
  EXPECT_TRUE(contains(r.out, "wolkowicz-styan: lambda_min <= -6.9282032303, lambda_max >= 6.9282032303")) << r.out;
}

TEST(CliBounds, IdentityIsDegenerate) {
  const auto r = run_cli({"bounds", data_file("identity3.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "degenerate")) << r.out;
  EXPECT_FALSE(contains(r.out, "roots:")) << r.out;
  EXPECT_TRUE(contains(r.out, "wolkowicz-styan: lambda_min <= 1.0000000000, lambda_max >= 1.0000000000")) << r.out;
}

TEST(CliBounds, DiagOneTwoFour) {
  const auto r = run_cli({"bounds", data_file("diag124.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "lambda_min <= 1.0000000000")) << r.out;
  EXPECT_TRUE(contains(r.out, "lambda_max >= 4.0000000000")) << r.out;
}

TEST(CliBounds, JsonReportCarriesTheBounds) {
  testing::ScratchDir dir("momenta_cli_bounds");
  const auto out = dir.file("bounds.json");
  ASSERT_EQ(run_cli({"bounds", data_file("example3.csv"), "--out", out}).code, 0);
  const auto j = nlohmann::json::parse(testing::slurp(out));
  EXPECT_NEAR(j["bounds"]["lambda_min_upper"].get<double>(), -12.0, 1e-9);
  EXPECT_NEAR(j["bounds"]["lambda_max_lower"].get<double>(), 12.0, 1e-9);
  EXPECT_NEAR(j["bounds"]["cubic"][1].get<double>(), -144.0, 1e-9);
  EXPECT_EQ(j["summary"]["total"], 1);
  EXPECT_EQ(j["records"][0]["check"], "eigen_bounds/validity");
  EXPECT_EQ(j["config"]["command"], "bounds");
}

TEST(CliBounds, RejectsNonHermitianAndMatrixValuedMaps) {
  EXPECT_EQ(run_cli({"bounds", data_file("nonhermitian.json")}).code, 2);
  EXPECT_EQ(run_cli({"bounds", data_file("example3.csv"), "--map", "identity"}).code, 2);
}

TEST(CliVerify, ExampleMatrixPasses) {
  const auto r = run_cli({"verify", data_file("example3.csv"), "--r-max", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "1 instance(s)"));
  EXPECT_TRUE(contains(r.out, ", 0 failed"));
  EXPECT_FALSE(contains(r.out, "FAIL"));
}

TEST(CliVerify, NonHermitianFileIsAllSkips) {
  const auto r = run_cli({"verify", data_file("nonhermitian.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "skip kadison seed=0: requires Hermitian A")) << r.out;
  EXPECT_TRUE(contains(r.out, "skip normal_moment seed=0: requires normal A")) << r.out;
  EXPECT_TRUE(contains(r.out, "0 passed, worst margin n/a")) << r.out;
}

TEST(CliVerify, RandomCampaignSummaryLine) {
  const auto r = run_cli({"verify", "--random", "--seed", "42", "--instances", "20", "--n-range", "2:6"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "20 instance(s)"));
  const auto line = r.out.substr(r.out.find("instance(s)\n") + 12);
  EXPECT_NE(line.find(" checks, "), std::string::npos);
  EXPECT_NE(line.find(" passed, worst margin "), std::string::npos);
}

TEST(CliVerify, ApplicableFailureExitsOne) {
  // A vanishing tolerance turns rounding-level negative eigenvalues into failures.
  const auto r = run_cli({"verify", data_file("example3.csv"), "--tol", "1e-300"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "FAIL ")) << r.out;
}

TEST(CliVerify, ReportsAreByteIdentical) {
  testing::ScratchDir dir("momenta_cli_determinism");
  const auto a = dir.file("a.json");
  const auto b = dir.file("b.json");
  for (const auto& path : {a, b}) {
    ASSERT_EQ(run_cli({"verify", "--random", "--seed", "7", "--instances", "12", "--map", "all", "--out", path}).code,
              0);
  }
  EXPECT_EQ(testing::slurp(a), testing::slurp(b));
  const auto j = nlohmann::json::parse(testing::slurp(a));
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_EQ(j["summary"]["total"].get<std::size_t>(), j["records"].size());
  for (const auto& rec : j["records"]) EXPECT_TRUE(rec.contains("seed"));

  const auto c = dir.file("c.json");
  ASSERT_EQ(run_cli({"verify", "--random", "--seed", "8", "--instances", "12", "--map", "all", "--out", c}).code, 0);
  EXPECT_NE(testing::slurp(a), testing::slurp(c));
}

TEST(CliVerify, SeedComesFromEnvironmentUnlessGiven) {
  testing::ScratchDir dir("momenta_cli_seed");
  const auto env_path = dir.file("env.json");
  const auto flag_path = dir.file("flag.json");
  ::setenv("MOMENTA_SEED", "1234", 1);
  EXPECT_EQ(cli::default_seed(), 1234u);
  ASSERT_EQ(run_cli({"verify", "--random", "--instances", "2", "--out", env_path}).code, 0);
  ASSERT_EQ(run_cli({"verify", "--random", "--instances", "2", "--seed", "5", "--out", flag_path}).code, 0);
  ::setenv("MOMENTA_SEED", "not-a-number", 1);
  EXPECT_EQ(cli::default_seed(), 0u);
  ::unsetenv("MOMENTA_SEED");
  EXPECT_EQ(nlohmann::json::parse(testing::slurp(env_path))["config"]["seed"], 1234);
  EXPECT_EQ(nlohmann::json::parse(testing::slurp(flag_path))["config"]["seed"], 5);
  EXPECT_EQ(nlohmann::json::parse(testing::slurp(env_path))["records"][0]["seed"].get<int>() >= 1234, true);
}

TEST(CliMoments, ExampleMatrixRow) {
  const auto r = run_cli({"moments", data_file("example3.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "moments k=0..6: 1 0 96 0 13824 0 1990656")) << r.out;
  EXPECT_TRUE(contains(r.out, "hankel r=3: psd")) << r.out;
}

TEST(CliMoments, IdentityAndInversePower) {
  const auto id = run_cli({"moments", data_file("identity3.json"), "--map", "compression:2", "--r-max", "1"});
  EXPECT_EQ(id.code, 0) << id.err;
  EXPECT_FALSE(contains(id.out, "NOT psd"));

  testing::ScratchDir dir("momenta_cli_moments");
  const auto csv = dir.file("d12.csv");
  std::ofstream(csv) << write_matrix_csv(testing::diag({1, 2}));
  const auto r = run_cli({"moments", csv, "--k-min", "-1", "--r-max", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "moments k=-1..2: 0.75 1 1.5 2.5")) << r.out;
}

TEST(CliMoments, BlocksInReportRoundTrip) {
  testing::ScratchDir dir("momenta_cli_roundtrip");
  const auto out = dir.file("m.json");
  ASSERT_EQ(run_cli({"moments", data_file("example3.csv"), "--map", "identity", "--out", out}).code, 0);
  const auto j = nlohmann::json::parse(testing::slurp(out));
  const auto& block = j["moments"][2]["block"];
  const auto parsed = parse_matrix_json(block.dump());
  const ComplexMatrix square = testing::example_matrix() * testing::example_matrix();
  EXPECT_LE((parsed.matrix - square).norm(), 1e-10 * square.norm());
  EXPECT_EQ(write_matrix_json(parsed.matrix), write_matrix_json(parse_matrix_json(write_matrix_json(parsed.matrix)).matrix));
}

TEST(CliErrors, UsageParseAndIoAllExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"bounds"}).code, 2);
  EXPECT_EQ(run_cli({"bounds", data_file("does_not_exist.json")}).code, 2);
  EXPECT_EQ(run_cli({"bounds", data_file("example3.csv"), "--tol", "0"}).code, 2);
  EXPECT_EQ(run_cli({"bounds", data_file("example3.csv"), "--map", "bogus"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--random", "--n-range", "5:2"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--random", "--instances", "0"}).code, 2);
  EXPECT_EQ(run_cli({"verify", data_file("example3.csv"), "--map", "all"}).code, 2);
  EXPECT_EQ(run_cli({"moments", data_file("example3.csv"), "--k-min", "-2"}).code, 2);

  testing::ScratchDir dir("momenta_cli_errors");
  const auto bad = dir.file("bad.csv");
  std::ofstream(bad) << "1,2\n3\n";
  const auto r = run_cli({"bounds", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "parse error")) << r.err;
  EXPECT_TRUE(contains(r.err, "row 2")) << r.err;
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(MapSpecs, Parse) {
  EXPECT_EQ(cli::parse_map_spec("trace").kind, MapKind::NormalizedTrace);
  EXPECT_EQ(cli::parse_map_spec("vector-state").kind, MapKind::VectorState);
  const auto c = cli::parse_map_spec("compression:3");
  EXPECT_EQ(c.kind, MapKind::Compression);
  EXPECT_EQ(c.codomain, 3);
  EXPECT_FALSE(cli::parse_map_spec("all").kind.has_value());
  EXPECT_ANY_THROW(cli::parse_map_spec("pinching:2"));
  EXPECT_ANY_THROW(cli::parse_map_spec("compression:0"));
  EXPECT_ANY_THROW(cli::parse_map_spec("compression:x"));
  EXPECT_EQ(cli::make_map(cli::parse_map_spec("compression"), 5, 0).codomain_dim(), 2);
}

}  // namespace
}  // namespace momenta
