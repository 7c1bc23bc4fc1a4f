#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "eufui/conditional.hpp"
#include "eufui/euf_check.hpp"
#include "eufui/parser.hpp"
#include "eufui/preprocess.hpp"
#include "fixtures.hpp"
#include "random_problem.hpp"

namespace eufui {
namespace {

using testing::eq;

HornClause clause(Problem& p, std::vector<std::pair<std::string, std::string>> ante, std::optional<Literal> cons) {
  HornClause c;
  for (const auto& [a, b] : ante) c.antecedent.push_back(eq(p, a, b));
  c.consequent = cons;
  return *simplify(*p.table, c);
}

std::vector<HornClause> sorted(const ClauseSet& s) {
  std::vector<HornClause> v = s.clauses();
  std::sort(v.begin(), v.end());
  return v;
}

TEST(Horn, SimplifyAndSubsume) {
  Problem p = testing::load("shared_argument.smt");
  const HornClause c = clause(p, {{"z1", "z3"}, {"z3", "z1"}, {"z2", "z2"}}, eq(p, "z2", "z4"));
  EXPECT_EQ(c.antecedent.size(), 1u);
  EXPECT_FALSE(simplify(*p.table, HornClause{{}, eq(p, "z2", "z2")}).has_value());

  const HornClause weak = clause(p, {{"z1", "z3"}, {"z2", "z3"}}, eq(p, "z2", "z4"));
  EXPECT_TRUE(subsumes(c, weak));
  EXPECT_FALSE(subsumes(weak, c));
  ClauseSet set;
  EXPECT_TRUE(set.insert(weak));
  EXPECT_TRUE(set.insert(c));
  EXPECT_FALSE(set.insert(weak));
  EXPECT_EQ(set.size(), 1u);
  EXPECT_TRUE(set.contains(c));
}

TEST(Step1, SharedArgument) {
  Problem p = testing::load("shared_argument.smt");
  const PreprocessedInput pre = flatten(p);
  const ClauseSet s2 = step1(*p.table, pre.s1);
  EXPECT_EQ(s2.size(), 3u);
  EXPECT_TRUE(s2.contains(clause(p, {{"z1", "z3"}}, eq(p, "z2", "z4"))));
}

TEST(Step1, SameRightSideGivesNoClause) {
  Problem p = testing::load("shared_argument.smt");
  const std::vector<Literal> s1{eq(p, "(f e z1)", "z2"), eq(p, "(f e z3)", "z2")};
  EXPECT_EQ(step1(*p.table, s1).size(), 2u);
  EXPECT_EQ(step1(*p.table, {s1[0]}).size(), 1u);
}

TEST(Step2, MixedHeadsRewriting) {
  Problem p = testing::load("mixed_heads.smt");
  const PreprocessedInput pre = flatten(p);
  const ClauseSet s3 = step2(*p.table, step1(*p.table, pre.s1));
  EXPECT_TRUE(s3.subsumed(clause(p, {{"z1", "z2"}}, eq(p, "(f z1 e0)", "e1"))));
  EXPECT_TRUE(s3.subsumed(clause(p, {{"z1", "z2"}}, eq(p, "(h e1)", "z0"))));
}

TEST(Step2, ClauseCap) {
  Problem p = testing::load("path_family_n4.smt");
  const PreprocessedInput pre = flatten(p);
  Limits limits;
  limits.max_clauses = 10;
  EXPECT_THROW(step2(*p.table, step1(*p.table, pre.s1), limits), LimitExceeded);
}

testing::RandomShape small_shape() {
  testing::RandomShape shape;
  shape.max_literals = 5;
  shape.max_evars = 3;
  return shape;
}

TEST(Step2, OrderDoesNotChangeResult) {
  std::mt19937_64 rng(404);
  int compared = 0;
  for (int i = 0; i < 80; ++i) {
    const std::string text = testing::random_problem(rng, small_shape());
    Problem p = parse_problem(text);
    const PreprocessedInput pre = flatten(p);
    if (pre.falsified()) continue;
    const ClauseSet s2 = step1(*p.table, pre.s1);
    Limits limits;
    limits.max_clauses = 5'000;
    try {
      const ClauseSet oldest = step2(*p.table, s2, limits, SaturationOrder::OldestFirst);
      const ClauseSet newest = step2(*p.table, s2, limits, SaturationOrder::NewestFirst);
      EXPECT_EQ(sorted(oldest), sorted(newest)) << text;
      ++compared;
    } catch (const LimitExceeded&) {
    }
  }
  EXPECT_GT(compared, 45);
}

TEST(Step2, SaturationPreservesMeaning) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 40; ++i) {
    const std::string text = testing::random_problem(rng, small_shape());
    Problem p = parse_problem(text);
    const PreprocessedInput pre = flatten(p);
    if (pre.falsified()) continue;
    const ClauseSet s2 = step1(*p.table, pre.s1);
    Limits limits;
    limits.max_clauses = 5'000;
    ClauseSet s3;
    try {
      s3 = step2(*p.table, s2, limits);
    } catch (const LimitExceeded&) {
      continue;
    }
    std::vector<Formula> a;
    std::vector<Formula> b;
    for (const auto& c : s2.clauses()) {
      a.push_back(to_formula(c));
      EXPECT_TRUE(s3.subsumed(c)) << text;
    }
    for (const auto& c : s3.clauses()) b.push_back(to_formula(c));
    const Formula lits = Formula::from(pre.s1);
    EXPECT_TRUE(euf_equiv(*p.table, lits, Formula::conjunction(b)).equivalent) << text;
  }
}

TEST(Cdags, ConditionalChain) {
  Problem p = testing::load("conditional_chain.smt");
  const PreprocessedInput pre = flatten(p);
  const ClauseSet s3 = step2(*p.table, step1(*p.table, pre.s1));
  const std::vector<ConditionalDag> all = enumerate_cdags(*p.table, s3, pre.evars);
  ASSERT_FALSE(all.empty());
  EXPECT_TRUE(all[0].entries.empty());
  std::size_t nontrivial = 0;
  for (const auto& d : all) {
    const PhiDelta phi = phi_delta(*p.table, d, s3);
    if (!phi.trivial) ++nontrivial;
    EXPECT_TRUE(euf_valid(*p.table, Formula::from(p.body), phi.formula).valid);
  }
  EXPECT_EQ(nontrivial, 3u);
  Limits limits;
  limits.max_cdags = 1;
  EXPECT_THROW(enumerate_cdags(*p.table, s3, pre.evars, limits), LimitExceeded);
}

TEST(Cdags, PathFamilyOnlyEmpty) {
  Problem p = testing::load("path_family_n4.smt");
  const PreprocessedInput pre = flatten(p);
  const ClauseSet s3 = step2(*p.table, step1(*p.table, pre.s1));
  const std::vector<ConditionalDag> all = enumerate_cdags(*p.table, s3, pre.evars);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_TRUE(all[0].entries.empty());
}

TEST(ConditionalUi, NoQuantifiedOccurrences) {
  Problem p = parse_problem(R"(
    (declare-sort U 0)
    (declare-fun g (U) U)
    (declare-const e U)
    (declare-const a U)
    (eliminate e)
    (assert (= (g a) a))
  )");
  const ConditionalResult r = conditional_ui(*p.table, flatten(p));
  EXPECT_TRUE(euf_equiv(*p.table, r.ui, Formula::atom(eq(p, "(g a)", "a"))).equivalent);
}

TEST(ConditionalUi, PruningModesAgree) {
  Problem p = testing::load("conditional_chain.smt");
  const PreprocessedInput pre = flatten(p);
  ConditionalOptions none;
  none.prune = Prune::None;
  ConditionalOptions semantic;
  semantic.prune = Prune::Semantic;
  const ConditionalResult a = conditional_ui(*p.table, pre, none);
  const ConditionalResult b = conditional_ui(*p.table, pre);
  const ConditionalResult c = conditional_ui(*p.table, pre, semantic);
  EXPECT_GE(a.cdags.size(), b.cdags.size());
  EXPECT_GE(b.cdags.size(), c.cdags.size());
  EXPECT_TRUE(euf_equiv(*p.table, a.ui, b.ui).equivalent);
  EXPECT_TRUE(euf_equiv(*p.table, b.ui, c.ui).equivalent);
}

}  // namespace
}  // namespace eufui
