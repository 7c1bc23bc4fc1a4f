#include <gtest/gtest.h>

#include <thread>

#include "eufui/error.hpp"
#include "eufui/parser.hpp"
#include "fixtures.hpp"

namespace eufui {
namespace {

using testing::term;

Problem small() {
  return parse_problem(R"(
    (declare-sort U 0)
    (declare-fun f (U U) U)
    (declare-fun g (U) U)
    (declare-fun h (U) U)
    (declare-const e0 U)
    (declare-const e1 U)
    (declare-const z U)
    (declare-const z1 U)
    (declare-const z2 U)
    (eliminate e0 e1)
  )");
}

TEST(TermTable, InterningIsCanonical) {
  Problem p = small();
  TermTable& t = *p.table;
  const TermId a = term(p, "(f z1 e0)");
  const TermId b = term(p, "(f z1 e0)");
  EXPECT_EQ(a, b);
  EXPECT_NE(a, term(p, "(f e0 z1)"));
  const TermId nested = term(p, "(h (f z1 e0))");
  ASSERT_EQ(t.args(nested).size(), 1u);
  EXPECT_EQ(t.args(nested)[0], a);
  EXPECT_TRUE(t.is_constant(term(p, "z1")));
  EXPECT_TRUE(t.mentions_quantified(nested));
  EXPECT_FALSE(t.mentions_quantified(term(p, "(f z1 z2)")));
}

TEST(TermTable, ArityMismatchThrows) {
  Problem p = small();
  const SymbolId f = *p.table->find("f");
  const TermId z = term(p, "z");
  EXPECT_THROW(p.table->intern(f, {z}), Error);
  EXPECT_THROW(p.table->declare("f", 1, SymbolKind::Function), Error);
}

TEST(TermTable, ConcurrentInterningAgrees) {
  Problem p = small();
  TermTable& t = *p.table;
  const SymbolId f = *t.find("f");
  const SymbolId g = *t.find("g");
  const TermId z = term(p, "z");
  std::vector<std::vector<TermId>> seen(4);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < seen.size(); ++w) {
    workers.emplace_back([&, w] {
      TermId cur = z;
      for (int i = 0; i < 500; ++i) {
        cur = (i % 2 == 0) ? t.intern(g, {cur}) : t.intern(f, {cur, z});
        seen[w].push_back(cur);
      }
    });
  }
  for (auto& th : workers) th.join();
  for (std::size_t w = 1; w < seen.size(); ++w) EXPECT_EQ(seen[w], seen[0]);
}

TEST(TermTable, SymbolOrderRanksQuantifiedFirst) {
  Problem p = small();
  TermTable& t = *p.table;
  const SymbolId e0 = *t.find("e0");
  const SymbolId e1 = *t.find("e1");
  const SymbolId z = *t.find("z");
  const SymbolId y = t.defined_var(1);
  EXPECT_TRUE(t.symbol_greater(e1, e0));
  EXPECT_TRUE(t.symbol_greater(e0, y));
  EXPECT_TRUE(t.symbol_greater(y, z));
  EXPECT_FALSE(t.symbol_greater(z, z));
  EXPECT_EQ(t.defined_var(1), y);
}

TEST(Literal, NormalizeOrientsBothWays) {
  Problem p = small();
  TermTable& t = *p.table;
  const Literal a = normalize(t, Literal{term(p, "z"), term(p, "(f z e0)"), true});
  EXPECT_EQ(a.lhs, term(p, "(f z e0)"));
  const Literal b = normalize(t, Literal{term(p, "e0"), term(p, "e1"), true});
  EXPECT_EQ(b.lhs, term(p, "e1"));
  EXPECT_EQ(normalize(t, b), b);
  EXPECT_EQ(shape_of(t, a), FlatShape::FunEq);
  EXPECT_EQ(shape_of(t, b), FlatShape::VarEq);
  EXPECT_EQ(shape_of(t, Literal{term(p, "z1"), term(p, "z2"), false}), FlatShape::Diseq);
  EXPECT_EQ(shape_of(t, Literal{term(p, "(g (g z))"), term(p, "z"), true}), FlatShape::General);
}

TEST(Substitution, SigmaDeltaExpandsRecursively) {
  Problem p = small();
  TermTable& t = *p.table;
  DagDefinition delta;
  const SymbolId y1 = t.defined_var(1);
  const SymbolId y2 = t.defined_var(2);
  delta.add(t, y1, term(p, "(f z z)"));
  delta.add(t, y2, t.intern(*t.find("f"), {t.constant(y1), t.constant(y1)}));
  EXPECT_EQ(sigma_delta_apply(t, delta, t.intern(*t.find("g"), {t.constant(y1)})), term(p, "(g (f z z))"));
  const TermId expanded = sigma_delta_apply(t, delta, t.constant(y2));
  EXPECT_EQ(expanded, term(p, "(f (f z z) (f z z))"));
  EXPECT_EQ(sigma_delta_apply(t, delta, expanded), expanded);
  EXPECT_EQ(sigma_delta_apply(t, DagDefinition{}, term(p, "(f z1 z2)")), term(p, "(f z1 z2)"));
  EXPECT_THROW(sigma_delta_apply(t, DagDefinition{}, t.constant(y2)), Error);

  const Constraint phi{{Literal{t.constant(y2), term(p, "z"), true}}, false};
  const Constraint out = unravel(t, delta, phi);
  ASSERT_EQ(out.literals.size(), 1u);
  EXPECT_EQ(out.literals[0].lhs, expanded);
}

TEST(Substitution, DoublingChainGrowsExponentiallyAsTree) {
  Problem p = small();
  TermTable& t = *p.table;
  const SymbolId f = *t.find("f");
  DagDefinition delta;
  TermId prev = term(p, "z");
  for (std::uint32_t i = 1; i <= 20; ++i) {
    const SymbolId y = t.defined_var(i);
    delta.add(t, y, t.intern(f, {prev, prev}));
    prev = t.constant(y);
  }
  const TermId full = sigma_delta_apply(t, delta, prev);
  EXPECT_EQ(t.tree_size(full), (std::uint64_t{1} << 21) - 1);
}

TEST(Compatible, DifferenceSets) {
  Problem p = small();
  TermTable& t = *p.table;
  const auto d = compatible(t, term(p, "(f z1 e0)"), term(p, "(f z2 e0)"));
  ASSERT_TRUE(d.has_value());
  ASSERT_EQ(d->size(), 1u);
  EXPECT_FALSE((*d)[0].positive);
  EXPECT_EQ(*d, std::vector<Literal>{normalize(t, Literal{term(p, "z1"), term(p, "z2"), false})});
  EXPECT_FALSE(compatible(t, term(p, "(f z1 e0)"), term(p, "(f z1 e1)")).has_value());
  EXPECT_FALSE(compatible(t, term(p, "(g e0)"), term(p, "(h e0)")).has_value());
  const auto same = compatible(t, term(p, "(f z1 z2)"), term(p, "(f z1 z2)"));
  ASSERT_TRUE(same.has_value());
  EXPECT_TRUE(same->empty());
}

}  // namespace
}  // namespace eufui
