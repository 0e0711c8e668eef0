#include <gtest/gtest.h>

#include "gshift/config_parse.hpp"

using namespace gshift;

TEST(ConfigParse, AffineShift) {
  ConfigFile c = parse_config(R"(
kind = "shift"
rule = "affine 1 1"
alphabet = 2
window = [0, 5]
)");
  ASSERT_TRUE(c.shift.has_value());
  EXPECT_FALSE(c.fort.has_value());
  EXPECT_EQ(c.shift->apply(Int(4)), Int(5));
  EXPECT_EQ(c.alphabet.size, 2);
  ASSERT_TRUE(c.window.has_value());
  EXPECT_EQ(c.window->coords, (std::vector<Int>{Int(0), Int(5)}));
}

TEST(ConfigParse, TableShift) {
  ConfigFile c = parse_config(R"(
kind = "shift"
atoms = ["a", "b", "c"]
rule = "table"
table = ["a>b", "b>c", "c>a"]
)");
  ASSERT_TRUE(c.shift.has_value());
  EXPECT_TRUE(c.shift->domain().is_finite());
  EXPECT_EQ(c.shift->apply(Int(0)), Int(1));
  EXPECT_EQ(c.shift->apply(Int(2)), Int(0));
}

TEST(ConfigParse, PiecewiseShift) {
  ConfigFile c = parse_config(R"(
kind = "shift"
rule = "piecewise"
branches = ["point 0 => const 1", "ge 10 => affine 1 -1"]
fallback = "affine 1 1"
)");
  ASSERT_TRUE(c.shift.has_value());
  EXPECT_EQ(c.shift->apply(Int(0)), Int(1));
  EXPECT_EQ(c.shift->apply(Int(12)), Int(11));
  EXPECT_EQ(c.shift->apply(Int(3)), Int(4));
}

TEST(ConfigParse, IntegerFort) {
  ConfigFile c = parse_config(R"(
kind = "fort"
rule = "affine -1 0"
base_image = 0
)");
  ASSERT_TRUE(c.fort.has_value());
  EXPECT_EQ(c.fort->apply(Int(3)), Int(-3));
  EXPECT_EQ(c.fort->apply(Int(0)), Int(0));
}

TEST(ConfigParse, FiniteFort) {
  ConfigFile c = parse_config(R"(
kind = "fort"
atoms = ["base", "x", "y"]
rule = "table"
table = ["x>y", "y>base", "base>base"]
base = "base"
)");
  ASSERT_TRUE(c.fort.has_value());
  EXPECT_TRUE(c.fort->finite());
  EXPECT_EQ(c.fort->base(), Int(0));
  EXPECT_EQ(c.fort->apply(Int(1)), Int(2));
}

TEST(ConfigParse, SequenceGrammar) {
  EXPECT_EQ(parse_sequence_text("naturals", 0).kind, SequenceSpec::Kind::Naturals);
  auto ar = parse_sequence_text("arithmetic:3:7:100", 0);
  EXPECT_EQ(ar.kind, SequenceSpec::Kind::Arithmetic);
  EXPECT_EQ(ar.start, Int(3));
  EXPECT_EQ(ar.step, Int(7));
  EXPECT_EQ(ar.prefix, 100);
  auto ex = parse_sequence_text("explicit:1,5,6", 0);
  EXPECT_EQ(ex.terms, (std::vector<Int>{Int(1), Int(5), Int(6)}));
  EXPECT_THROW(parse_sequence_text("fibonacci", 0), parse_error);
}

TEST(ConfigParse, SegmentsAndWindows) {
  ConfigFile c = parse_config(R"(
kind = "shift"
rule = "affine 1 1"
alphabet = 3
window = [0, 5]
fill = 1
windows = ["0 2", "9 10"]
segments = ["0", "2 5:1"]
)");
  ASSERT_EQ(c.segments.size(), 2u);
  EXPECT_EQ(c.segments[0].from, Int(0));
  EXPECT_EQ(c.segments[0].to, Int(2));
  EXPECT_EQ(c.segments[0].target.fill, 0);
  EXPECT_EQ(c.segments[1].from, Int(9));
  EXPECT_EQ(c.segments[1].target.fill, 2);
  EXPECT_EQ(c.segments[1].target.at(Int(5)), 1);
  EXPECT_EQ(c.fill, 1);
}

TEST(ConfigParse, Errors) {
  EXPECT_THROW(parse_config("kind = \"shift\"\n"), input_error);  // no rule
  EXPECT_THROW(parse_config("kind = \"shift\"\nrule = \"affine 1 1\"\nmystery = 1\n"),
               parse_error);  // unknown key
  EXPECT_THROW(parse_config("kind = \"shift\"\nkind = \"fort\"\nrule = \"affine 1 1\"\n"),
               parse_error);  // duplicate key
  EXPECT_THROW(parse_config("kind = \"shift\"\nrule = \"affine one two\"\n"),
               parse_error);  // bad integer
  try {
    parse_config("kind = \"shift\"\nrule = \"affine 1\"\n");
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
  }
}

TEST(ConfigParse, CommentsAndQuotes) {
  ConfigFile c = parse_config(R"(
# leading comment
kind = "shift"   # trailing comment
rule = "affine 2 3"
steps = 500
magnitude = 1000
)");
  ASSERT_TRUE(c.shift.has_value());
  EXPECT_EQ(c.shift->budget().steps, 500);
  EXPECT_EQ(c.shift->budget().magnitude, Int(1000));
}
