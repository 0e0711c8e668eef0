#include <gtest/gtest.h>

#include "gshift/map.hpp"

using namespace gshift;

TEST(IndexSet, FiniteParseAndShow) {
  IndexSet dom = IndexSet::finite({"a", "b", "c"});
  EXPECT_TRUE(dom.is_finite());
  EXPECT_EQ(dom.size(), 3);
  EXPECT_EQ(dom.parse_index("b"), Int(1));
  EXPECT_EQ(dom.show(Int(2)), "c");
  EXPECT_TRUE(dom.contains(Int(0)));
  EXPECT_FALSE(dom.contains(Int(3)));
  EXPECT_THROW(dom.parse_index("z"), input_error);
  EXPECT_THROW(dom.require(Int(-1)), input_error);
}

TEST(IndexSet, IntegersParse) {
  IndexSet dom = IndexSet::integers();
  EXPECT_FALSE(dom.is_finite());
  EXPECT_EQ(dom.parse_index("-17"), Int(-17));
  EXPECT_EQ(dom.show(Int(-17)), "-17");
  EXPECT_TRUE(dom.contains(Int("123456789012345678901234567890")));
  EXPECT_THROW(dom.parse_index("1x"), input_error);
}

TEST(IndexSet, ModFloor) {
  EXPECT_EQ(mod_floor(Int(7), Int(3)), Int(1));
  EXPECT_EQ(mod_floor(Int(-7), Int(3)), Int(2));
  EXPECT_EQ(mod_floor(Int(-9), Int(3)), Int(0));
  EXPECT_EQ(mod_floor(Int(5), Int(-3)), Int(2));
}

TEST(Guards, Matching) {
  Guard point = Guard::point(Int(4));
  Guard range = Guard::range(Int(-2), Int(2));
  Guard residue = Guard::residue(Int(3), Int(1));
  EXPECT_TRUE(point.matches(Int(4)));
  EXPECT_FALSE(point.matches(Int(5)));
  EXPECT_TRUE(range.matches(Int(0)));
  EXPECT_FALSE(range.matches(Int(3)));
  EXPECT_TRUE(residue.matches(Int(7)));
  EXPECT_TRUE(residue.matches(Int(-2)));
  EXPECT_FALSE(residue.matches(Int(6)));
  EXPECT_THROW(Guard::range(Int(2), Int(1)), input_error);
  EXPECT_THROW(Guard::residue(Int(0), Int(0)), input_error);
}

TEST(Guards, Disjointness) {
  EXPECT_TRUE(guards_disjoint(Guard::point(Int(1)), Guard::point(Int(2))));
  EXPECT_FALSE(guards_disjoint(Guard::point(Int(1)), Guard::range(Int(0), Int(3))));
  EXPECT_TRUE(guards_disjoint(Guard::range(Int(0), Int(3)), Guard::at_least(Int(4))));
  EXPECT_FALSE(guards_disjoint(Guard::at_most(Int(0)), Guard::at_least(Int(0))));
  // residues 0 mod 4 and 2 mod 4 never meet; 0 mod 4 and 0 mod 6 do (at 0, 12, ...)
  EXPECT_TRUE(guards_disjoint(Guard::residue(Int(4), Int(0)), Guard::residue(Int(4), Int(2))));
  EXPECT_FALSE(guards_disjoint(Guard::residue(Int(4), Int(0)), Guard::residue(Int(6), Int(0))));
  EXPECT_FALSE(guards_disjoint(Guard::residue(Int(2), Int(1)), Guard::at_least(Int(100))));
}

TEST(FunctionalMap, TableApplyIterate) {
  IndexSet dom = IndexSet::finite({"a", "b", "c"});
  FunctionalMap m(dom, TableRule{{1, 2, 0}});
  EXPECT_EQ(m.apply(Int(0)), Int(1));
  EXPECT_EQ(m.iterate(Int(0), Int(4)), Int(1));
  EXPECT_EQ(m.iterate(Int(2), Int(3000000)), Int(2));
  EXPECT_THROW(m.apply(Int(3)), input_error);
  EXPECT_THROW(FunctionalMap(dom, TableRule{{1, 5, 0}}), input_error);
  EXPECT_THROW(FunctionalMap(dom, TableRule{{1, 0}}), input_error);
}

TEST(FunctionalMap, AffineFastPath) {
  FunctionalMap succ(IndexSet::integers(), AffineRule{Int(1), Int(1)});
  EXPECT_EQ(succ.iterate(Int(5), Int(1000000)), Int(1000005));
  FunctionalMap neg(IndexSet::integers(), AffineRule{Int(-1), Int(0)});
  EXPECT_EQ(neg.iterate(Int(7), Int(9)), Int(-7));
  EXPECT_EQ(neg.iterate(Int(7), Int(10)), Int(7));
  FunctionalMap doubling(IndexSet::integers(), AffineRule{Int(2), Int(1)});
  // 2^k (x+1) - 1 stays exact for large k
  EXPECT_EQ(doubling.iterate(Int(0), Int(10)), Int(1023));
}

TEST(FunctionalMap, SquarePlusGrowthAndBudget) {
  FunctionalMap m(IndexSet::integers(), SquarePlusRule{Int(1)});
  EXPECT_EQ(m.apply(Int(3)), Int(10));
  EXPECT_EQ(m.iterate(Int(0), Int(3)), Int(5));
  // doubly exponential growth hits the bit cap quickly
  EXPECT_THROW(m.iterate(Int(2), Int(40)), budget_error);
}

TEST(FunctionalMap, PiecewiseDisjointnessEnforced) {
  PiecewiseRule pw;
  pw.branches.push_back({Guard::point(Int(0)), SubRule{AffineRule{Int(0), Int(1)}}});
  pw.branches.push_back({Guard::range(Int(0), Int(5)), SubRule{AffineRule{Int(1), Int(0)}}});
  pw.fallback = SubRule{AffineRule{Int(1), Int(1)}};
  EXPECT_THROW(FunctionalMap(IndexSet::integers(), Rule{pw}), input_error);
}

TEST(FunctionalMap, PiecewiseApply) {
  PiecewiseRule pw;
  pw.branches.push_back({Guard::point(Int(0)), SubRule{AffineRule{Int(0), Int(0)}}});
  pw.branches.push_back({Guard::at_least(Int(10)), SubRule{AffineRule{Int(1), Int(-1)}}});
  pw.fallback = SubRule{AffineRule{Int(1), Int(1)}};
  FunctionalMap m(IndexSet::integers(), Rule{pw});
  EXPECT_EQ(m.apply(Int(0)), Int(0));
  EXPECT_EQ(m.apply(Int(12)), Int(11));
  EXPECT_EQ(m.apply(Int(3)), Int(4));
  EXPECT_EQ(m.iterate(Int(3), Int(7)), Int(10));
  EXPECT_EQ(m.iterate(Int(3), Int(8)), Int(9));
}

TEST(FunctionalMap, Preimages) {
  IndexSet dom = IndexSet::finite({"a", "b", "c"});
  FunctionalMap table(dom, TableRule{{1, 1, 0}});
  auto pre = table.preimages(Int(1));
  ASSERT_EQ(pre.kind, Preimages::Kind::Finite);
  EXPECT_EQ(pre.points, (std::vector<Int>{Int(0), Int(1)}));

  FunctionalMap succ(IndexSet::integers(), AffineRule{Int(1), Int(1)});
  auto p1 = succ.preimages(Int(0));
  ASSERT_EQ(p1.kind, Preimages::Kind::Finite);
  EXPECT_EQ(p1.points, std::vector<Int>{Int(-1)});

  FunctionalMap sq(IndexSet::integers(), SquarePlusRule{Int(1)});
  auto p2 = sq.preimages(Int(5));
  ASSERT_EQ(p2.kind, Preimages::Kind::Finite);
  EXPECT_EQ(p2.points, (std::vector<Int>{Int(-2), Int(2)}));
  auto p3 = sq.preimages(Int(0));
  EXPECT_TRUE(p3.points.empty());

  FunctionalMap constant(IndexSet::integers(), AffineRule{Int(0), Int(4)});
  auto p4 = constant.preimages(Int(4));
  EXPECT_EQ(p4.kind, Preimages::Kind::Infinite);
}

TEST(FunctionalMap, BitCapBudget) {
  Budget tight;
  tight.bit_cap = 64;
  FunctionalMap doubling(IndexSet::integers(), AffineRule{Int(2), Int(0)}, tight);
  EXPECT_THROW(doubling.iterate(Int(1), Int(100)), budget_error);
  EXPECT_EQ(doubling.iterate(Int(1), Int(10)), Int(1024));
}
