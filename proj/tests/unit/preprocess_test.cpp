#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "eufui/parser.hpp"
#include "eufui/preprocess.hpp"
#include "fixtures.hpp"
#include "random_problem.hpp"

namespace eufui {
namespace {

using testing::eq;

std::vector<Literal> sorted(std::vector<Literal> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Problem inline_problem(const std::string& asserts) {
  return parse_problem(R"(
    (declare-sort U 0)
    (declare-fun f (U U) U)
    (declare-fun g (U) U)
    (declare-const e U)
    (declare-const z1 U)
    (declare-const z2 U)
    (declare-const z3 U)
    (eliminate e)
  )" + asserts);
}

TEST(Flatten, MixedHeads) {
  Problem p = testing::load("mixed_heads.smt");
  const PreprocessedInput pre = flatten(p);
  ASSERT_EQ(pre.evars.size(), 3u);
  EXPECT_EQ(p.table->symbol(pre.evars[1]).name, "e1");
  EXPECT_EQ(p.table->symbol(pre.evars[2]).name, "e2");
  const std::vector<Literal> expected{eq(p, "(g z4 e0)", "z0"), eq(p, "(f z2 e0)", "e1"), eq(p, "(g z3 e0)", "e1"),
                                      eq(p, "(f z1 e0)", "e2"), eq(p, "(h e2)", "z0")};
  EXPECT_EQ(sorted(pre.s1), sorted(expected));
  EXPECT_TRUE(pre.passthrough.literals.empty());
  EXPECT_TRUE(replay_check(pre, p));
}

TEST(Flatten, EFreeLiteralPassesThrough) {
  Problem p = inline_problem("(assert (= (f z1 z2) z3))");
  const PreprocessedInput pre = flatten(p);
  EXPECT_TRUE(pre.s1.empty());
  EXPECT_EQ(pre.passthrough.literals, std::vector<Literal>{eq(p, "(f z1 z2)", "z3")});
}

TEST(Flatten, SolvedEquationIsReplaced) {
  Problem p = inline_problem("(assert (= e z1)) (assert (= (f e z2) z3))");
  const PreprocessedInput pre = flatten(p);
  EXPECT_TRUE(pre.s1.empty());
  EXPECT_EQ(pre.passthrough.literals, std::vector<Literal>{eq(p, "(f z1 z2)", "z3")});
  EXPECT_TRUE(replay_check(pre, p));
}

TEST(Flatten, SelfDisequalityFalsifies) {
  Problem p = inline_problem("(assert (not (= z1 z1))) (assert (= (g e) z2))");
  const PreprocessedInput pre = flatten(p);
  EXPECT_TRUE(pre.falsified());
  EXPECT_TRUE(replay_check(pre, p));
}

TEST(Flatten, EFreeSubtermGetsDefinedVariable) {
  Problem p = inline_problem("(assert (= (f e (g z1)) z2))");
  const PreprocessedInput pre = flatten(p);
  ASSERT_EQ(pre.initial_dag.size(), 1u);
  EXPECT_EQ(pre.initial_dag.entries()[0].body, testing::term(p, "(g z1)"));
  EXPECT_EQ(pre.evars.size(), 1u);
  EXPECT_TRUE(replay_check(pre, p));
}

TEST(Flatten, CompoundDisequalityIsAbstracted) {
  Problem p = inline_problem("(assert (not (= (g e) (f e z1))))");
  const PreprocessedInput pre = flatten(p);
  for (const auto& l : pre.s1) {
    const FlatShape s = shape_of(*p.table, l);
    EXPECT_TRUE(s == FlatShape::FunEq || s == FlatShape::Diseq);
  }
  EXPECT_EQ(std::count_if(pre.s1.begin(), pre.s1.end(), [](const Literal& l) { return !l.positive; }), 1);
  EXPECT_TRUE(replay_check(pre, p));
}

TEST(Flatten, DroppedLiteralFailsReplay) {
  Problem p = testing::load("mixed_heads.smt");
  PreprocessedInput pre = flatten(p);
  for (std::size_t k = 0; k < pre.s1.size(); ++k) {
    PreprocessedInput corrupted = pre;
    corrupted.s1.erase(corrupted.s1.begin() + static_cast<std::ptrdiff_t>(k));
    EXPECT_FALSE(replay_check(corrupted, p)) << "dropped literal " << k;
  }
}

TEST(Flatten, RandomInstancesReplayAndStayLinear) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 150; ++i) {
    const std::string text = testing::random_problem(rng);
    Problem p = parse_problem(text);
    std::size_t occurrences = 0;
    for (const auto& l : p.body.literals) occurrences += p.table->tree_size(l.lhs) + p.table->tree_size(l.rhs);
    const PreprocessedInput pre = flatten(p);
    EXPECT_LE(pre.renaming.size() + pre.initial_dag.size(), occurrences) << text;
    for (const auto& l : pre.s1) {
      const FlatShape s = shape_of(*p.table, l);
      EXPECT_TRUE(s == FlatShape::FunEq || s == FlatShape::Diseq) << text;
      EXPECT_TRUE(mentions_quantified(*p.table, l)) << text;
    }
    for (const auto& l : pre.passthrough.literals) EXPECT_FALSE(mentions_quantified(*p.table, l)) << text;
    EXPECT_TRUE(replay_check(pre, p)) << text;

    Problem again = parse_problem(text);
    const PreprocessedInput pre2 = flatten(again);
    ASSERT_EQ(pre.s1.size(), pre2.s1.size());
    for (std::size_t k = 0; k < pre.s1.size(); ++k) {
      EXPECT_EQ(to_string(*p.table, pre.s1[k]), to_string(*again.table, pre2.s1[k]));
    }
  }
}

}  // namespace
}  // namespace eufui
