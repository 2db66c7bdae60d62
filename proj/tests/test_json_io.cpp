#include "fano4/json_io.hpp"
#include "fano4/library.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

using namespace fano4;

TEST(JsonIo, RoundTripIsByteIdentical) {
  std::mt19937 rng(6);
  std::vector<Fan> fans;
  for (const auto& nf : library::corpus()) fans.push_back(nf.make());
  for (int k = 0; k < 30; ++k) fans.push_back(oracle::random_blowup_fan(rng, 3));
  for (const auto& f : fans) {
    std::string a = io::dump(io::fan_to_json(f));
    Fan g = io::fan_from_string(a);
    EXPECT_EQ(g, f);
    EXPECT_EQ(io::dump(io::fan_to_json(g)), a);
  }
}

// Checked-in fan files match the builtin constructions.
TEST(JsonIo, DataFilesMatchBuiltins) {
  const std::filesystem::path dir = std::filesystem::path(FANO4_DATA_DIR) / "fans";
  int seen = 0;
  for (const auto& nf : library::corpus()) {
    auto p = dir / (nf.name + ".json");
    ASSERT_TRUE(std::filesystem::exists(p)) << p;
    EXPECT_EQ(io::read_file(p.string()), io::dump(io::fan_to_json(nf.make()))) << nf.name;
    ++seen;
  }
  EXPECT_GE(seen, 8);
}

TEST(JsonIo, SyntaxErrorsReportLineAndColumn) {
  try {
    io::fan_from_string("{\n  \"dim\": 4,\n  \"rays\": [1, 2,, 3]\n}");
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(JsonIo, SchemaErrorsNameTheField) {
  auto msg = [](const std::string& text) {
    try {
      io::fan_from_string(text);
    } catch (const io::ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(msg(R"({"dim": 2, "rays": [[1,0],[0,1,2]], "max_cones": []})").find("rays[1]"), std::string::npos);
  EXPECT_NE(msg(R"({"dim": 2, "rays": [[1,0]], "max_cones": [[0, 5]]})").find("max_cones[0]"), std::string::npos);
  EXPECT_NE(msg(R"({"dim": 2, "rays": [], "max_cones": [], "colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(msg(R"({"rays": [], "max_cones": []})").find("dim"), std::string::npos);
  EXPECT_NE(msg(R"({"dim": 2, "rays": [[1,0]], "max_cones": [], "labels": {"x": "a"}})").find("labels"),
            std::string::npos);
  EXPECT_NE(msg("[1, 2]").find("top level"), std::string::npos);
}

TEST(JsonIo, ReportsAreWellFormed) {
  Fan f = library::bl_pt_p4();
  toric::ToricVariety X(f);
  auto j = io::invariants_json(birational::invariants(X));
  EXPECT_EQ(j["degK4"], 544);
  auto fixed = io::fixed_json(f, mori::classify_all(X));
  ASSERT_EQ(fixed.size(), 1u);
  EXPECT_EQ(fixed[0]["type"], "(3,0)^sm");
  EXPECT_EQ(io::rational_json(Rational(3, 4)), "3/4");
  EXPECT_EQ(io::integer_json(Integer("123456789012345678901234567890")), "123456789012345678901234567890");
  auto ch = io::chambers_json(mori::mori_chambers(X));
  EXPECT_EQ(ch["count"], 1);
  EXPECT_EQ(ch["nodes"].size(), 1u);
}
