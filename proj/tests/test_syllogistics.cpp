#include <gtest/gtest.h>

#include "amlkit/syllogistics.hpp"
#include "amlkit/syntax.hpp"

using namespace aml;

namespace {

Formula F(const char* s) { return parse_formula(s); }

std::vector<Formula> Fs(std::initializer_list<const char*> xs) {
  std::vector<Formula> out;
  for (const char* x : xs) out.push_back(F(x));
  return out;
}

SearchConfig depth(int d) {
  SearchConfig c;
  c.max_depth = d;
  return c;
}

}  // namespace

TEST(Moods, AssertoricCompilation) {
  Syllogism s = interpret_ross("EIO", Figure::First);
  EXPECT_EQ(s.premises, Fs({"B -> ~A", "C ~> B"}));
  EXPECT_EQ(s.conclusion, F("C ~> ~A"));
  EXPECT_TRUE(s.star_premises.empty());
  Syllogism t = interpret_ross("AOO", Figure::Second, {}, true);
  EXPECT_EQ(t.premises, Fs({"B -> A", "C ~> ~A"}));
  EXPECT_EQ(t.conclusion, F("C ~> ~B"));
  EXPECT_EQ(t.assembled, F("B -> A & C ~> ~A => C ~> ~B"));
}

TEST(Moods, TagsAndProfiles) {
  EXPECT_EQ(interpret_ross("A^n A A^n", Figure::First).premises, Fs({"B -> []A", "C -> B"}));
  EXPECT_EQ(interpret_ross("E^c A^c E^c", Figure::First).premises, Fs({"B -> <u>~A", "C -> <u>B"}));
  EXPECT_EQ(interpret_ross("E^c A^c E^c", Figure::First, {false, 1, 1}).premises, Fs({"B -> <>~A", "C -> <>B"}));
  EXPECT_EQ(interpret_ross("A A^c A^p", Figure::First).conclusion, F("C -> <>A"));
  EXPECT_EQ(interpret_ross("A^bl A A", Figure::First).premises[0], F("?(B -> A)"));
  EXPECT_EQ(interpret_ross("A A A", Figure::First, {true, 2, 1}).premises[1], F("?(C -> B)"));
  EXPECT_EQ(interpret_ross("A^s A A", Figure::First, {true, 2, 1}).premises[0], F("B -> A"));
  EXPECT_EQ(interpret_ross("A^c4 A A", Figure::First).premises[0], F("<u>B -> <u>A"));
  EXPECT_EQ(interpret_ross("I^u A I", Figure::Third).premises[0], F("C ~> [u]A"));
}

TEST(Moods, ContingentTemplates) {
  using M = TermModality;
  EXPECT_EQ(contingent_template(1), std::make_pair(M::None, M::Diamond));
  EXPECT_EQ(contingent_template(2), std::make_pair(M::None, M::Bicont));
  EXPECT_EQ(contingent_template(5), std::make_pair(M::Bicont, M::Diamond));
  EXPECT_EQ(contingent_template(8), std::make_pair(M::Bicont, M::None));
  EXPECT_THROW(contingent_template(9), std::invalid_argument);
  EXPECT_THROW(mood_to_predication('A', "c", {false, 7, 1}), std::invalid_argument);
}

TEST(Moods, MalformedInput) {
  EXPECT_THROW(interpret_ross("AA", Figure::First), std::invalid_argument);
  EXPECT_THROW(interpret_ross("AAU", Figure::First), std::invalid_argument);
  EXPECT_THROW(interpret_ross("A^ A A", Figure::First), std::invalid_argument);
  EXPECT_THROW(interpret_ross("A^zz A A", Figure::First), std::invalid_argument);
  EXPECT_THROW(parse_figure("fourth"), std::invalid_argument);
  EXPECT_EQ(parse_figure("2"), Figure::Second);
}

TEST(Stars, TacitStarInThirdFigure) {
  Syllogism aai = interpret_ross("AAI", Figure::Third);
  EXPECT_EQ(aai.star_premises, Fs({"*C"}));
  EXPECT_TRUE(interpret_ross("IAI", Figure::Third).star_premises.empty());
  EXPECT_TRUE(interpret_ross("AAA", Figure::First).star_premises.empty());
  EXPECT_EQ(interpret_ross("*AAA", Figure::First).star_premises, Fs({"*C"}));
  // A modal subject C contributes its own star.
  Syllogism s = interpret_ross("A^c4 A I", Figure::Third);
  EXPECT_EQ(s.star_premises, Fs({"*C", "*<u>C"}));
  EXPECT_EQ(s.all_premises(), Fs({"*C", "*<u>C", "<u>C -> <u>A", "C -> B"}));
}

TEST(Stars, SlotsAreChecked) {
  PredicationForm a;
  EXPECT_NO_THROW(build_syllogism(Figure::Second, a, a, a, false, true));
  // An explicit syllogism needs premises.
  EXPECT_THROW(explicit_syllogism(Figure::First, {}, {}, F("A -> B")), std::invalid_argument);
}

TEST(Classify, ProvesAndRefutes) {
  SearchBounds b{2, 4, {}};
  Classification v = classify(interpret_ross("AAA", Figure::First), Theory::AML, depth(8), b);
  EXPECT_EQ(v.verdict, Verdict::Valid);
  ASSERT_TRUE(v.proof);
  Classification x = classify(interpret_ross("AAA", Figure::Second), Theory::AML, depth(8), b);
  EXPECT_EQ(x.verdict, Verdict::Refuted);
  ASSERT_TRUE(x.model);
  Syllogism s = interpret_ross("AAA", Figure::Second);
  EXPECT_EQ(check_entailment_on_model(*x.model, s.all_premises(), s.conclusion), Entailment::Violated);
  EXPECT_EQ(verdict_name(x.verdict), "invalid");
}

TEST(Classify, UnknownWhenNeitherSearchSucceeds) {
  Syllogism b4 = interpret_ross("A E^n E^n", Figure::Second);
  Classification c = classify_checked(b4, Theory::AML, depth(6), SearchBounds{2, 3, {}});
  EXPECT_EQ(c.verdict, Verdict::Unknown);
  EXPECT_EQ(classify(b4, Theory::AML_S5, depth(8), SearchBounds{2, 3, {}}).verdict, Verdict::Valid);
}

// The fourteen codified assertoric moods.
TEST(Classify, AssertoricCodification) {
  struct M {
    const char* mood;
    Figure fig;
    bool swapped;
  };
  const M moods[] = {{"AAA", Figure::First, false},  {"EAE", Figure::First, false},
                     {"AII", Figure::First, false},  {"EIO", Figure::First, false},
                     {"EAE", Figure::Second, false}, {"AEE", Figure::Second, false},
                     {"EIO", Figure::Second, true},  {"AOO", Figure::Second, true},
                     {"*AAI", Figure::Third, false}, {"IAI", Figure::Third, false},
                     {"AII", Figure::Third, false},  {"*EAO", Figure::Third, true},
                     {"EIO", Figure::Third, true},   {"OAO", Figure::Third, true}};
  for (const M& m : moods) {
    Syllogism s = interpret_ross(m.mood, m.fig, {}, m.swapped);
    Classification c = classify_checked(s, Theory::AML, depth(8), SearchBounds{2, 4, {}});
    EXPECT_EQ(c.verdict, Verdict::Valid) << m.mood << " " << figure_name(m.fig);
  }
}
