#include <gtest/gtest.h>

#include <random>

#include "amlkit/syntax.hpp"
#include "oracle.hpp"

using namespace aml;

TEST(Syntax, SugarExpandsToCore) {
  EXPECT_EQ(parse_term("<>A"), Term::comp(Term::box(Term::comp(Term::atom("A")))));
  EXPECT_EQ(parse_term("<u>A"), Term::comp(Term::sqbox(Term::atom("A"))));
  EXPECT_EQ(parse_formula("*A"), Formula::part(Term::atom("A"), Term::atom("A")));
  EXPECT_EQ(parse_formula("?(A -> B)"), Formula::bl(Formula::univ(Term::atom("A"), Term::atom("B"))));
}

TEST(Syntax, PrefixesNest) {
  Term t = parse_term("~[][u]<>A");
  ASSERT_TRUE(t.is_comp());
  EXPECT_TRUE(t.inner().is_box());
  EXPECT_TRUE(t.inner().inner().is_sqbox());
  EXPECT_EQ(t.inner().inner().inner(), Term::diamond(Term::atom("A")));
}

TEST(Syntax, ConnectivePrecedence) {
  Formula f = parse_formula("A -> B & B -> C => A -> C");
  ASSERT_TRUE(f.is_implies());
  EXPECT_TRUE(f.left().is_and());
  Formula g = parse_formula("A -> B => B -> C => A -> C");
  ASSERT_TRUE(g.is_implies());
  EXPECT_TRUE(g.right().is_implies());
}

TEST(Syntax, RenderRoundTripsRandomFormulas) {
  std::mt19937 rng(7);
  for (int n = 0; n < 2000; ++n) {
    Term a = oracle::random_term(rng, 4), b = oracle::random_term(rng, 4);
    std::vector<Formula> forms{Formula::univ(a, b), Formula::part(a, b), Formula::bl(Formula::univ(b, a))};
    forms.push_back(Formula::conj(forms[0], forms[1]));
    forms.push_back(Formula::implies(forms[3], forms[2]));
    forms.push_back(Formula::implies(forms[4], forms[0]));
    for (const auto& f : forms) {
      std::string text = render(f);
      EXPECT_EQ(parse_formula(text), f) << text;
      EXPECT_EQ(render(parse_formula(text)), text);
    }
  }
}

TEST(Syntax, ErrorsCarryPosition) {
  try {
    parse_formula("A -> ");
    FAIL() << "accepted a truncated formula";
  } catch (const ParseError& e) {
    EXPECT_GE(e.position(), 4u);
  }
  EXPECT_THROW(parse_formula("A -> B)"), ParseError);
  EXPECT_THROW(parse_formula("A => B"), ParseError);
  EXPECT_THROW(parse_term("$x"), ParseError);
  EXPECT_NO_THROW(parse_term("$x", ParseOptions{true}));
  EXPECT_THROW(parse_formula("?(A -> B & B -> C)"), ParseError);
}

TEST(Syntax, GrammarHelpMentionsOperators) {
  std::string help(grammar_help());
  for (const char* op : {"->", "~>", "[u]", "<u>", "?("}) EXPECT_NE(help.find(op), std::string::npos) << op;
}
