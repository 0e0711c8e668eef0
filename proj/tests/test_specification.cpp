#include <gtest/gtest.h>

#include "gshift/specification.hpp"

using namespace gshift;

namespace {

FunctionalMap successor() {
  return FunctionalMap(IndexSet::integers(), AffineRule{Int(1), Int(1)});
}

FunctionalMap negation() {
  return FunctionalMap(IndexSet::integers(), AffineRule{Int(-1), Int(0)});
}

FunctionalMap squareplus1() {
  return FunctionalMap(IndexSet::integers(), SquarePlusRule{Int(1)});
}

}  // namespace

TEST(Deciders, CannedClassification) {
  // n^2 + 1: weak specification without the stronger variants
  EXPECT_EQ(decide_weak_specification(squareplus1()).truth, Truth::Yes);
  EXPECT_EQ(decide_specification(squareplus1()).truth, Truth::No);
  // -n: periodic at 0, but injective
  EXPECT_EQ(decide_weak_specification(negation()).truth, Truth::No);
  EXPECT_EQ(decide_specification(negation()).truth, Truth::No);
  // n + 1: everything
  EXPECT_EQ(decide_weak_specification(successor()).truth, Truth::Yes);
  EXPECT_EQ(decide_specification(successor()).truth, Truth::Yes);
}

TEST(GapBound, Frozen) {
  EXPECT_EQ(gap_bound(successor(), Window({Int(0), Int(5)})), Int(6));
  EXPECT_EQ(gap_bound(successor(), Window({Int(0)})), Int(1));
  EXPECT_EQ(gap_bound(squareplus1(), Window({Int(1), Int(-1)})), Int(2));
  EXPECT_EQ(gap_bound(successor(), Window({Int(-3), Int(0), Int(5)})), Int(9));
}

TEST(Tracing, TwoSegments) {
  FunctionalMap m = successor();
  Alphabet alpha(2);
  Window w({Int(0), Int(5)});

  Configuration ones(1);
  Configuration zeros(0);
  std::vector<TracingSegment> segs = {{zeros, Int(0), Int(2)}, {ones, Int(8), Int(10)}};
  TracingWitness tw = build_tracing_point(m, alpha, w, segs, 0);
  EXPECT_EQ(tw.gap_required, Int(6));

  // pulled-back coordinates carry the demanded symbols
  for (Int t = 0; t <= 2; ++t)
    for (Int g : {Int(0), Int(5)})
      EXPECT_EQ(orbit_value(m, tw.point, g, t), 0);
  for (Int t = 8; t <= 10; ++t)
    for (Int g : {Int(0), Int(5)})
      EXPECT_EQ(orbit_value(m, tw.point, g, t), 1);
}

TEST(Tracing, GapTightness) {
  FunctionalMap m = successor();
  Alphabet alpha(2);
  Window w({Int(0), Int(5)});
  Configuration ones(1);
  Configuration zeros(0);

  // gap of exactly 6 is accepted
  std::vector<TracingSegment> ok = {{zeros, Int(0), Int(0)}, {ones, Int(6), Int(6)}};
  EXPECT_NO_THROW(build_tracing_point(m, alpha, w, ok, 0));

  // gap of 5 is rejected up front: coordinate 5 would be pulled both ways
  std::vector<TracingSegment> bad = {{zeros, Int(0), Int(0)}, {ones, Int(5), Int(5)}};
  EXPECT_THROW(build_tracing_point(m, alpha, w, bad, 0), input_error);
}

TEST(Tracing, ThreeSegments) {
  FunctionalMap m = squareplus1();
  Alphabet alpha(3);
  Window w({Int(1), Int(-1)});
  Configuration a(0), b(1), c(2);
  std::vector<TracingSegment> segs = {
      {a, Int(0), Int(1)}, {b, Int(3), Int(4)}, {c, Int(6), Int(8)}};
  TracingWitness tw = build_tracing_point(m, alpha, w, segs, 0);
  for (Int t = 3; t <= 4; ++t)
    for (Int g : {Int(1), Int(-1)})
      EXPECT_EQ(orbit_value(m, tw.point, g, t), 1);
  for (Int t = 6; t <= 8; ++t)
    for (Int g : {Int(1), Int(-1)})
      EXPECT_EQ(orbit_value(m, tw.point, g, t), 2);
}

TEST(Tracing, RejectsPeriodicMaps) {
  Alphabet alpha(2);
  Window w({Int(0)});
  Configuration zeros(0);
  std::vector<TracingSegment> segs = {{zeros, Int(0), Int(0)}};
  EXPECT_THROW(build_tracing_point(negation(), alpha, w, segs, 0), input_error);
}

TEST(Tracing, RejectsBadSymbols) {
  Alphabet alpha(2);
  Window w({Int(0)});
  Configuration threes(3);
  std::vector<TracingSegment> segs = {{threes, Int(0), Int(0)}};
  EXPECT_THROW(build_tracing_point(successor(), alpha, w, segs, 0), input_error);
}

TEST(Refutation, NegationCases) {
  Refutation r = refute_weak_specification(negation());
  EXPECT_EQ(r.period, Int(1));
  ASSERT_FALSE(r.cases.empty());
  FunctionalMap m = negation();
  for (const auto& c : r.cases) {
    // both demand times pull back to the same coordinate, and the separation
    // exceeds the claimed gap -- no configuration satisfies opposite symbols
    EXPECT_GT(c.t2 - c.t1, c.claimed_gap);
    EXPECT_EQ(m.iterate(r.point, c.t1), c.coord);
    EXPECT_EQ(m.iterate(r.point, c.t2), c.coord);
  }
}

TEST(Refutation, TableCases) {
  FunctionalMap m(IndexSet::finite({"a", "b", "c"}), TableRule{{1, 2, 0}});
  Refutation r = refute_weak_specification(m);
  EXPECT_EQ(r.period, Int(3));
  for (const auto& c : r.cases) {
    EXPECT_GT(c.t2 - c.t1, c.claimed_gap);
    EXPECT_EQ(m.iterate(r.point, c.t1), c.coord);
    EXPECT_EQ(m.iterate(r.point, c.t2), c.coord);
  }
}

TEST(Refutation, RejectsAperiodicMaps) {
  EXPECT_THROW(refute_weak_specification(successor()), input_error);
}
