#include <gtest/gtest.h>

#include "gshift/strobo.hpp"

using namespace gshift;

namespace {

FunctionalMap successor() {
  return FunctionalMap(IndexSet::integers(), AffineRule{Int(1), Int(1)});
}

FunctionalMap negation() {
  return FunctionalMap(IndexSet::integers(), AffineRule{Int(-1), Int(0)});
}

FunctionalMap three_cycle() {
  return FunctionalMap(IndexSet::finite({"a", "b", "c"}), TableRule{{1, 2, 0}});
}

// fixes 0, patches -1 -> 1, shifts the rest: one periodic class, one chain
FunctionalMap mixed_map() {
  PiecewiseRule pw;
  pw.branches.push_back({Guard::point(Int(0)), SubRule{AffineRule{Int(0), Int(0)}}});
  pw.branches.push_back({Guard::point(Int(-1)), SubRule{AffineRule{Int(0), Int(1)}}});
  pw.fallback = SubRule{AffineRule{Int(1), Int(1)}};
  return FunctionalMap(IndexSet::integers(), Rule{pw});
}

}  // namespace

TEST(Deciders, StroboClassification) {
  EXPECT_EQ(decide_stroboscopic(negation()).truth, Truth::Yes);
  EXPECT_EQ(decide_strong_stroboscopic(negation()).truth, Truth::No);
  EXPECT_EQ(decide_stroboscopic(successor()).truth, Truth::Yes);
  EXPECT_EQ(decide_strong_stroboscopic(successor()).truth, Truth::Yes);
  FunctionalMap sq(IndexSet::integers(), SquarePlusRule{Int(1)});
  EXPECT_EQ(decide_stroboscopic(sq).truth, Truth::No);
  EXPECT_EQ(decide_strong_stroboscopic(sq).truth, Truth::No);
}

TEST(SequenceSpec, Validation) {
  EXPECT_NO_THROW(SequenceSpec::naturals().check());
  EXPECT_NO_THROW(SequenceSpec::arithmetic(Int(3), Int(7)).check());
  EXPECT_NO_THROW(SequenceSpec::explicit_terms({Int(1), Int(5), Int(6)}).check());
  EXPECT_THROW(SequenceSpec::explicit_terms({Int(5)}).check(), input_error);
  EXPECT_THROW(SequenceSpec::explicit_terms({Int(5), Int(5)}).check(), input_error);
  EXPECT_THROW(SequenceSpec::explicit_terms({Int(-1), Int(3)}).check(), input_error);
  EXPECT_THROW(SequenceSpec::arithmetic(Int(1), Int(0)).check(), input_error);
}

TEST(SequenceSpec, Materialize) {
  auto nat = SequenceSpec::naturals(8).materialize();
  EXPECT_EQ(nat, (std::vector<Int>{Int(1), Int(2), Int(3), Int(4), Int(5), Int(6),
                                   Int(7), Int(8)}));
  auto ar = SequenceSpec::arithmetic(Int(3), Int(10), 4).materialize();
  EXPECT_EQ(ar, (std::vector<Int>{Int(3), Int(13), Int(23), Int(33)}));
}

TEST(Congruence, NaturalsLevelThree) {
  auto c = congruence_subsequence(SequenceSpec::naturals(4096), Int(3));
  EXPECT_EQ(c.table.level, Int(3));
  EXPECT_EQ(c.table.at(Int(1)), Int(1));
  EXPECT_EQ(c.table.at(Int(2)), Int(1));
  EXPECT_EQ(c.table.at(Int(3)), Int(1));
  EXPECT_THROW(c.table.at(Int(4)), input_error);
  ASSERT_GE(c.terms.size(), 4u);
  // the guarantee: from index k on, every term is congruent to f(k) mod k
  for (size_t i = 0; i < c.terms.size(); ++i) {
    for (Int k = 1; k <= 3; ++k) {
      if (Int(static_cast<long>(i)) >= k)
        EXPECT_EQ(mod_floor(c.terms[i], k), mod_floor(c.table.at(k), k));
    }
    if (i > 0) EXPECT_LT(c.terms[i - 1], c.terms[i]);
  }
}

TEST(Congruence, NaturalsLevelTwelveFrozen) {
  auto c = congruence_subsequence(SequenceSpec::naturals(100000), Int(12));
  for (Int k = 1; k <= 12; ++k) EXPECT_EQ(c.table.at(k), Int(1));
  std::vector<Int> expect = {Int(1),    Int(2),    Int(3),    Int(7),    Int(13),
                             Int(61),   Int(121),  Int(421),  Int(841),  Int(2521),
                             Int(5041), Int(27721), Int(55441), Int(83161)};
  EXPECT_EQ(c.terms, expect);
}

TEST(Congruence, ShortExplicitRunsOut) {
  auto seq = SequenceSpec::explicit_terms({Int(5), Int(10), Int(15), Int(20)});
  try {
    congruence_subsequence(seq, Int(5));
    FAIL() << "expected budget_error";
  } catch (const budget_error& e) {
    EXPECT_NE(std::string(e.what()).find("stage"), std::string::npos);
  }
}

TEST(GapSubsequence, SquarePositions) {
  auto g = gap_subsequence(SequenceSpec::arithmetic(Int(1), Int(100), 1000), 3);
  EXPECT_EQ(g, (std::vector<Int>{Int(1), Int(101), Int(401)}));

  auto n = gap_subsequence(SequenceSpec::naturals(200), 5);
  EXPECT_EQ(n, (std::vector<Int>{Int(1), Int(2), Int(5), Int(10), Int(17)}));
  for (size_t i = 0; i + 1 < n.size(); ++i)
    EXPECT_GT(n[i + 1] - n[i], Int(2 * static_cast<long>(i)));
}

TEST(GapSubsequence, NeedsLongPrefix) {
  EXPECT_THROW(gap_subsequence(SequenceSpec::naturals(10), 5), budget_error);
}

TEST(Rho, AllPeriodicTable) {
  FunctionalMap m = three_cycle();
  Window w({Int(0), Int(1), Int(2)});
  RhoMap rho = build_rho(m, w, SequenceSpec::naturals(4096));
  EXPECT_EQ(rho.threshold, Int(3));
  // f(3) = 1 on naturals: each index relocates from its predecessor
  ASSERT_EQ(rho.relocation.size(), 3u);
  EXPECT_EQ(rho.relocation.at(Int(1)), Int(0));
  EXPECT_EQ(rho.relocation.at(Int(2)), Int(1));
  EXPECT_EQ(rho.relocation.at(Int(0)), Int(2));

  Alphabet alpha(3);
  auto conv = verify_uniform_convergence(m, alpha, rho, w, 16, 99);
  EXPECT_TRUE(conv.ok) << conv.failure;
}

TEST(Rho, AllPeriodicNegation) {
  FunctionalMap m = negation();
  Window w({Int(1), Int(-1)});
  RhoMap rho = build_rho(m, w, SequenceSpec::naturals(4096));
  EXPECT_EQ(rho.threshold, Int(2));
  EXPECT_EQ(rho.relocation.at(Int(-1)), Int(1));
  EXPECT_EQ(rho.relocation.at(Int(1)), Int(-1));

  Alphabet alpha(2);
  auto conv = verify_uniform_convergence(m, alpha, rho, w, 16, 7);
  EXPECT_TRUE(conv.ok) << conv.failure;
}

TEST(Rho, AperiodicSuccessor) {
  FunctionalMap m = successor();
  Window w({Int(0), Int(5)});
  RhoMap rho = build_rho(m, w, SequenceSpec::naturals(4096));
  EXPECT_EQ(rho.threshold, Int(7));  // spread 5 plus 2
  Alphabet alpha(2);
  auto conv = verify_uniform_convergence(m, alpha, rho, w, 16, 3);
  EXPECT_TRUE(conv.ok) << conv.failure;
}

TEST(Rho, MixedMap) {
  FunctionalMap m = mixed_map();
  Window w({Int(0), Int(1)});
  RhoMap rho = build_rho(m, w, SequenceSpec::naturals(8192));
  EXPECT_EQ(rho.threshold, Int(2));  // max(period 1, spread 0 + 2)
  Alphabet alpha(2);
  auto conv = verify_uniform_convergence(m, alpha, rho, w, 16, 11);
  EXPECT_TRUE(conv.ok) << conv.failure;
}

TEST(Rho, RejectsNonInjective) {
  FunctionalMap sq(IndexSet::integers(), SquarePlusRule{Int(1)});
  EXPECT_THROW(build_rho(sq, Window({Int(0)}), SequenceSpec::naturals()), input_error);
}

TEST(Rho, ConvergenceSemantics) {
  // by hand: relocated points reproduce the original window symbols at the
  // selected times
  FunctionalMap m = negation();
  Window w({Int(1), Int(-1)});
  RhoMap rho = build_rho(m, w, SequenceSpec::naturals(64));
  Configuration z(0);
  z.set(Int(1), 1);
  Configuration rz = rho.apply(z);
  EXPECT_EQ(rz.at(Int(-1)), 1);  // pulled from coordinate 1
  for (size_t i = 2; i < rho.terms.size() && i < 12; ++i) {
    for (Int g : w.coords)
      EXPECT_EQ(orbit_value(m, rz, g, rho.terms[i]), z.at(g));
  }
}
