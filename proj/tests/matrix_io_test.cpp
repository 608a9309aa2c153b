#include "momenta/matrix_io.hpp"

#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "momenta/campaign.hpp"
#include "support/fixtures.hpp"

namespace momenta {
namespace {

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

TEST(ParseJson, ComplexHermitian) {
  const auto m = parse_matrix_json(R"({"rows": 2, "cols": 2, "entries": [[2,0],[0,1],[0,-1],[2,0]]})");
  EXPECT_TRUE(m.hermitian);
  EXPECT_EQ(m.matrix(0, 1), Complex(0, 1));
  EXPECT_EQ(m.matrix(1, 0), Complex(0, -1));
}

TEST(ParseJson, NonHermitianIsKeptRaw) {
  const auto m = parse_matrix_json(R"({"rows": 2, "cols": 2, "entries": [[1,0],[2,0],[0,0],[1,0]]})");
  EXPECT_FALSE(m.hermitian);
  EXPECT_EQ(m.matrix(0, 1), Complex(2, 0));
  EXPECT_EQ(m.matrix(1, 0), Complex(0, 0));
}

TEST(ParseJson, Diagnostics) {
  EXPECT_THROW(parse_matrix_json("{"), ParseError);
  EXPECT_THROW(parse_matrix_json(R"({"rows": 2, "entries": []})"), ParseError);
  EXPECT_EQ(message_of([] { parse_matrix_json(R"({"rows": 2, "cols": 3, "entries": []})"); }),
            "matrix is not square: 2 rows, 3 columns");
  EXPECT_THROW(parse_matrix_json(R"({"rows": 1, "cols": 1, "entries": [[1,0],[2,0]]})"), ParseError);
  const auto bad_entry =
      message_of([] { parse_matrix_json(R"({"rows": 2, "cols": 2, "entries": [[1,0],[1,0],["x",0],[1,0]]})"); });
  EXPECT_NE(bad_entry.find("row 2, column 1"), std::string::npos) << bad_entry;
  EXPECT_THROW(parse_matrix_json(R"({"rows": 0, "cols": 0, "entries": []})"), ParseError);
}

TEST(ParseCsv, RealSymmetric) {
  const auto m = parse_matrix_csv("1, 2\n2, 5\n");
  EXPECT_TRUE(m.hermitian);
  EXPECT_EQ(m.matrix, testing::real_matrix({{1, 2}, {2, 5}}));
  EXPECT_EQ(parse_matrix_csv("1,2\r\n2,5").matrix, m.matrix);
  EXPECT_EQ(parse_matrix_csv("\n1,2\n\n2,5\n\n").matrix, m.matrix);
}

TEST(ParseCsv, Diagnostics) {
  const auto ragged = message_of([] { parse_matrix_csv("1,2\n3\n"); });
  EXPECT_NE(ragged.find("not square"), std::string::npos) << ragged;
  EXPECT_NE(ragged.find("row 2"), std::string::npos) << ragged;
  const auto token = message_of([] { parse_matrix_csv("1,2\n3,abc\n"); });
  EXPECT_NE(token.find("row 2, column 2"), std::string::npos) << token;
  EXPECT_NE(token.find("abc"), std::string::npos) << token;
  EXPECT_NE(message_of([] { parse_matrix_csv("1,,2\n"); }).find("empty field"), std::string::npos);
  EXPECT_THROW(parse_matrix_csv(""), ParseError);
  EXPECT_THROW(parse_matrix_csv("nan,0\n0,1\n"), ParseError);
}

TEST(ParseFile, PicksFormatAndReportsMissingFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "momenta_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.csv") << "1,0\n0,2\n";
    std::ofstream(dir / "b.json") << write_matrix_json(testing::diag({1, 2}));
    std::ofstream(dir / "c.txt") << "  " << write_matrix_json(testing::diag({1, 2}));
  }
  EXPECT_EQ(parse_matrix(dir / "a.csv").matrix, testing::diag({1, 2}));
  EXPECT_EQ(parse_matrix(dir / "b.json").matrix, testing::diag({1, 2}));
  EXPECT_EQ(parse_matrix(dir / "c.txt").matrix, testing::diag({1, 2}));
  EXPECT_THROW(parse_matrix(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Write, FormatsSeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_THROW(write_matrix_csv(testing::cdiag({Complex(0, 1)})), DomainError);
}

TEST(Write, RoundTripIsExact) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> exponent(-30, 30);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 6);
    ComplexMatrix a = random_hermitian(n, seed) * std::pow(10.0, exponent(rng));
    const auto back = parse_matrix_json(write_matrix_json(a));
    EXPECT_EQ(back.matrix, a) << seed;

    ComplexMatrix real = a.real().cast<Complex>();
    real = (real + real.transpose()) / 2.0;
    EXPECT_EQ(parse_matrix_csv(write_matrix_csv(real)).matrix, real) << seed;
  }
}

}  // namespace
}  // namespace momenta
