#include <gtest/gtest.h>

#include "gshift/analysis.hpp"

using namespace gshift;

namespace {

FunctionalMap affine(long a, long b) {
  return FunctionalMap(IndexSet::integers(), AffineRule{Int(a), Int(b)});
}

FunctionalMap squareplus(long c) {
  return FunctionalMap(IndexSet::integers(), SquarePlusRule{Int(c)});
}

FunctionalMap table(std::vector<long> image) {
  std::vector<std::string> names;
  for (size_t i = 0; i < image.size(); ++i) names.push_back("a" + std::to_string(i));
  return FunctionalMap(IndexSet::finite(names), TableRule{std::move(image)});
}

}  // namespace

TEST(Injectivity, Tables) {
  EXPECT_EQ(decide_injective(table({1, 2, 0})).truth, Truth::Yes);
  Verdict v = decide_injective(table({1, 1, 0}));
  EXPECT_EQ(v.truth, Truth::No);
  auto* col = std::get_if<InjectivityCollision>(&v.cert);
  ASSERT_NE(col, nullptr);
  EXPECT_EQ(col->a, Int(0));
  EXPECT_EQ(col->b, Int(1));
}

TEST(Injectivity, AffineAndSquarePlus) {
  EXPECT_EQ(decide_injective(affine(1, 1)).truth, Truth::Yes);
  EXPECT_EQ(decide_injective(affine(-1, 0)).truth, Truth::Yes);
  EXPECT_EQ(decide_injective(affine(2, 3)).truth, Truth::Yes);
  EXPECT_EQ(decide_injective(affine(0, 7)).truth, Truth::No);
  Verdict v = decide_injective(squareplus(1));
  EXPECT_EQ(v.truth, Truth::No);
  auto* col = std::get_if<InjectivityCollision>(&v.cert);
  ASSERT_NE(col, nullptr);
  EXPECT_EQ(abs_int(col->a), Int(1));
  EXPECT_EQ(abs_int(col->b), Int(1));
}

TEST(Injectivity, PiecewisePointGuards) {
  // swap 0 and 1, fix everything else: injective
  PiecewiseRule swap;
  swap.branches.push_back({Guard::point(Int(0)), SubRule{AffineRule{Int(0), Int(1)}}});
  swap.branches.push_back({Guard::point(Int(1)), SubRule{AffineRule{Int(0), Int(0)}}});
  swap.fallback = SubRule{AffineRule{Int(1), Int(0)}};
  EXPECT_EQ(decide_injective(FunctionalMap(IndexSet::integers(), Rule{swap})).truth,
            Truth::Yes);

  // point branch collides with the fallback image
  PiecewiseRule clash;
  clash.branches.push_back({Guard::point(Int(0)), SubRule{AffineRule{Int(0), Int(5)}}});
  clash.fallback = SubRule{AffineRule{Int(1), Int(1)}};
  Verdict v = decide_injective(FunctionalMap(IndexSet::integers(), Rule{clash}));
  EXPECT_EQ(v.truth, Truth::No);
  auto* col = std::get_if<InjectivityCollision>(&v.cert);
  ASSERT_NE(col, nullptr);
  EXPECT_EQ(abs_int(col->a - col->b), Int(4));  // 0 and 4 both land on 5
}

TEST(PeriodicFree, Tables) {
  EXPECT_EQ(decide_periodic_free(table({0})).truth, Truth::No);
  EXPECT_EQ(decide_periodic_free(table({1, 2, 0})).truth, Truth::No);
  // every finite self-map has a periodic index
  EXPECT_EQ(decide_periodic_free(table({1, 2, 2, 1})).truth, Truth::No);
}

TEST(PeriodicFree, Affine) {
  EXPECT_EQ(decide_periodic_free(affine(1, 1)).truth, Truth::Yes);
  EXPECT_EQ(decide_periodic_free(affine(1, 0)).truth, Truth::No);
  Verdict neg = decide_periodic_free(affine(-1, 0));
  EXPECT_EQ(neg.truth, Truth::No);
  auto* pw = std::get_if<PeriodicWitness>(&neg.cert);
  ASSERT_NE(pw, nullptr);
  EXPECT_EQ(pw->point, Int(0));
  EXPECT_EQ(pw->period, Int(1));
  // |a| >= 2: the only candidate is the fixed point b/(1-a).  a = 2 always
  // has one (1 - a = -1); a = 3 with odd b does not.
  EXPECT_EQ(decide_periodic_free(affine(2, 1)).truth, Truth::No);
  EXPECT_EQ(decide_periodic_free(affine(2, 5)).truth, Truth::No);
  EXPECT_EQ(decide_periodic_free(affine(3, 2)).truth, Truth::No);
  EXPECT_EQ(decide_periodic_free(affine(3, 1)).truth, Truth::Yes);
  EXPECT_EQ(decide_periodic_free(affine(3, 3)).truth, Truth::Yes);
  EXPECT_EQ(decide_periodic_free(affine(-2, 1)).truth, Truth::Yes);  // 1/3 not integral
  EXPECT_EQ(decide_periodic_free(affine(-2, 3)).truth, Truth::No);   // fixes 1
}

TEST(PeriodicFree, SquarePlus) {
  EXPECT_EQ(decide_periodic_free(squareplus(1)).truth, Truth::Yes);
  // n^2 fixes 0 and 1; n^2 - 1 has the 2-cycle 0 <-> -1
  EXPECT_EQ(decide_periodic_free(squareplus(0)).truth, Truth::No);
  Verdict v = decide_periodic_free(squareplus(-1));
  EXPECT_EQ(v.truth, Truth::No);
  auto* pw = std::get_if<PeriodicWitness>(&v.cert);
  ASSERT_NE(pw, nullptr);
  EXPECT_EQ(pw->period, Int(2));
}

TEST(PeriodicFree, PiecewiseEscape) {
  // 0 -> 1 -> 2 -> ... with a one-point patch: no periodic index
  PiecewiseRule pw;
  pw.branches.push_back({Guard::point(Int(0)), SubRule{AffineRule{Int(0), Int(5)}}});
  pw.fallback = SubRule{AffineRule{Int(1), Int(1)}};
  EXPECT_EQ(decide_periodic_free(FunctionalMap(IndexSet::integers(), Rule{pw})).truth,
            Truth::Yes);

  // patch that closes a loop: 5 -> 0, else successor; 0..5 is a 6-cycle
  PiecewiseRule loop;
  loop.branches.push_back({Guard::point(Int(5)), SubRule{AffineRule{Int(0), Int(0)}}});
  loop.fallback = SubRule{AffineRule{Int(1), Int(1)}};
  Verdict v = decide_periodic_free(FunctionalMap(IndexSet::integers(), Rule{loop}));
  EXPECT_EQ(v.truth, Truth::No);
  auto* w = std::get_if<PeriodicWitness>(&v.cert);
  ASSERT_NE(w, nullptr);
  EXPECT_EQ(w->period, Int(6));
}

TEST(Period, Frozen) {
  EXPECT_EQ(period(affine(-1, 3), Int(1)).period, Int(2));
  EXPECT_EQ(period(affine(-1, 3), Int(1)).kind, PeriodReport::Kind::Periodic);
  // 3/2 is the fixed point of -n + 3, not an integer; 1 <-> 2 swap
  EXPECT_EQ(period(affine(1, 0), Int(42)).period, Int(1));
  EXPECT_EQ(period(affine(1, 1), Int(0)).kind, PeriodReport::Kind::NotPeriodic);
  EXPECT_EQ(period(squareplus(1), Int(2)).kind, PeriodReport::Kind::NotPeriodic);
  EXPECT_EQ(period(table({1, 2, 0}), Int(1)).period, Int(3));
}

TEST(SameClass, AffineCases) {
  // successor: same class iff congruent mod nothing -- all integers merge
  EXPECT_EQ(same_class(affine(1, 1), Int(-5), Int(12)).truth, Truth::Yes);
  EXPECT_EQ(same_class(affine(1, 2), Int(0), Int(7)).truth, Truth::No);
  EXPECT_EQ(same_class(affine(1, 2), Int(0), Int(8)).truth, Truth::Yes);
  // negation: n and -n collide after one step
  EXPECT_EQ(same_class(affine(-1, 0), Int(4), Int(-4)).truth, Truth::Yes);
  EXPECT_EQ(same_class(affine(-1, 0), Int(4), Int(5)).truth, Truth::No);
}

TEST(SameClass, SquarePlusCases) {
  FunctionalMap m = squareplus(1);
  EXPECT_EQ(same_class(m, Int(2), Int(-2)).truth, Truth::Yes);
  EXPECT_EQ(same_class(m, Int(2), Int(5)).truth, Truth::Yes);  // 2 -> 5
  EXPECT_EQ(same_class(m, Int(2), Int(3)).truth, Truth::No);
}

TEST(ClassType, Cases) {
  EXPECT_EQ(class_type(affine(1, 1), Int(0)).kind, ClassDescriptor::Kind::ChainZ);
  EXPECT_EQ(class_type(table({1, 2, 0}), Int(0)).kind, ClassDescriptor::Kind::Cycle);
  EXPECT_EQ(class_type(table({1, 2, 0}), Int(0)).cycle_length, Int(3));
  EXPECT_THROW(class_type(squareplus(1), Int(0)), input_error);  // not injective
}

TEST(Confluence, SuccessorWindow) {
  Confluence c = confluence(affine(1, 1), {Int(0), Int(5)});
  ASSERT_EQ(c.groups.size(), 1u);
  EXPECT_EQ(c.groups[0].rep, Int(5));
  EXPECT_EQ(c.depth, Int(5));
}

TEST(Confluence, SingletonWindow) {
  Confluence c = confluence(affine(1, 1), {Int(0)});
  EXPECT_EQ(c.depth, Int(0));
}

TEST(Confluence, SquarePlusPair) {
  Confluence c = confluence(squareplus(1), {Int(1), Int(-1)});
  ASSERT_EQ(c.groups.size(), 1u);
  EXPECT_EQ(c.groups[0].rep, Int(2));
  EXPECT_EQ(c.depth, Int(1));
}

TEST(Confluence, SeparateClasses) {
  Confluence c = confluence(affine(1, 2), {Int(0), Int(1), Int(4)});
  EXPECT_EQ(c.groups.size(), 2u);  // evens merge, 1 stays alone
  EXPECT_EQ(c.depth, Int(2));     // 0 and 4 meet at 4, depth 2
}
