#include <gtest/gtest.h>

#include <random>

#include "eufui/error.hpp"
#include "eufui/parser.hpp"
#include "fixtures.hpp"

namespace eufui {
namespace {

const char* kHeader = R"((declare-sort U 0)
(declare-fun f (U U) U)
(declare-const e U)
(declare-const z1 U)
(declare-const z2 U)
)";

ParseError parse_error(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ParseError("none", 0, 0);
}

TEST(Parser, SharedArgumentProblem) {
  Problem p = testing::load("shared_argument.smt");
  EXPECT_EQ(p.eliminate.size(), 1u);
  EXPECT_EQ(p.parameters.size(), 4u);
  ASSERT_EQ(p.body.literals.size(), 2u);
  for (const auto& l : p.body.literals) EXPECT_EQ(shape_of(*p.table, l), FlatShape::FunEq);
  EXPECT_EQ(p.body.literals[0], testing::eq(p, "(f e z1)", "z2"));
}

TEST(Parser, EmptyBody) {
  const Problem p = parse_problem(std::string(kHeader) + "(eliminate e)\n(compute-ui)\n");
  EXPECT_TRUE(p.body.literals.empty());
  EXPECT_FALSE(p.body.falsified);
}

TEST(Parser, DistinctExpandsPairwise) {
  const Problem p = parse_problem(std::string(kHeader) + "(eliminate e)\n(assert (distinct e z1 z2))\n");
  ASSERT_EQ(p.body.literals.size(), 3u);
  for (const auto& l : p.body.literals) EXPECT_FALSE(l.positive);
}

TEST(Parser, CommentsAndNegation) {
  const Problem p =
      parse_problem(std::string(kHeader) + "; comment (assert\n(eliminate e) ; trailing\n(assert (not (= e z1)))\n");
  ASSERT_EQ(p.body.literals.size(), 1u);
  EXPECT_FALSE(p.body.literals[0].positive);
}

TEST(Parser, UndeclaredSymbolIsLocated) {
  const ParseError e = parse_error(std::string(kHeader) + "(eliminate e)\n(assert (= (g e) z1))\n");
  EXPECT_NE(e.message().find("g"), std::string::npos);
  EXPECT_EQ(e.line(), 7u);
  EXPECT_EQ(e.column(), 13u);
}

TEST(Parser, ErrorClasses) {
  const std::string h = kHeader;
  EXPECT_NE(parse_error(h + "(eliminate e)\n(assert (= (f e) z1))\n").message().find("arity"), std::string::npos);
  EXPECT_NE(parse_error(h + "(declare-const z1 U)\n(eliminate e)\n").message().find("z1"), std::string::npos);
  EXPECT_NE(parse_error(h + "(assert (= e z1))\n").message().find("eliminate"), std::string::npos);
  parse_error(h + "(eliminate e)\n(assert (and (= e z1) (= e z2)))\n");
  parse_error(h + "(eliminate e)\n(assert (= e z1)\n");
  parse_error(h + "(eliminate e)\n(assert (= e z1)))\n");
  parse_error(h + "(eliminate f)\n");
  parse_error(h + "(eliminate e)\n(frobnicate)\n");
}

TEST(Parser, MutatedInputNeverAborts) {
  const std::string base = testing::read_data("mixed_heads.smt");
  const std::string alphabet = "()= ;\nabcefgz0123";
  std::mt19937_64 rng(7);
  int rejected = 0;
  for (int round = 0; round < 2000; ++round) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < edits; ++k) {
      const std::size_t pos = rng() % text.size();
      switch (rng() % 3) {
        case 0: text.erase(pos, 1); break;
        case 1: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        default: text[pos] = alphabet[rng() % alphabet.size()]; break;
      }
    }
    try {
      parse_problem(text);
    } catch (const Error&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}

TEST(Parser, FormulaWithLet) {
  Problem p = testing::load("shared_argument.smt");
  const Formula f = parse_formula("(let ((w (f z1 z1))) (=> (= z1 z3) (= w z2)))", p);
  EXPECT_EQ(f.kind(), FormulaKind::Implies);
  EXPECT_THROW(parse_formula("(let ((w z1) (w z2)) true)", p), ParseError);
  EXPECT_THROW(parse_formula("(= q z1)", p), ParseError);
}

}  // namespace
}  // namespace eufui
