#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "amlkit/semantics.hpp"
#include "amlkit/syntax.hpp"
#include "oracle.hpp"

using namespace aml;

namespace {

std::filesystem::path data(const std::string& rel) { return std::filesystem::path(AMLKIT_DATA_DIR) / rel; }

Formula F(const char* s) { return parse_formula(s); }

}  // namespace

TEST(Semantics, AgreesWithMembershipOracle) {
  std::mt19937 rng(3);
  const std::vector<std::string> atoms{"A", "B", "C"};
  for (int n = 0; n < 3000; ++n) {
    Model m = oracle::random_model(rng, 4, 3, atoms);
    Term a = oracle::random_term(rng, 3), b = oracle::random_term(rng, 3);
    for (const Formula& f : {Formula::univ(a, b), Formula::part(a, b), Formula::bl(Formula::univ(a, b)),
                             Formula::bl(Formula::part(a, b)), Formula::bl(Formula::star(a)),
                             Formula::implies(Formula::univ(b, a), Formula::part(a, b))})
      ASSERT_EQ(satisfies(m, f), oracle::holds(m, f)) << render(f) << "\n" << model_to_json(m);
  }
}

TEST(Semantics, ModalExtensionsIgnoreValuation) {
  Model m({"a", "b", "c"}, 3);
  m.set_atom(0, "A", 0b011);
  m.set_atom(1, "A", 0b001);
  m.set_atom(2, "A", 0b101);
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_EQ(extension(m, v, parse_term("[]A")), 0b001u);
    EXPECT_EQ(extension(m, v, parse_term("<>A")), 0b111u);
    EXPECT_EQ(extension(m, v, parse_term("[u]A")), 0b001u);
    EXPECT_EQ(extension(m, v, parse_term("<u>A")), 0b110u);
  }
  EXPECT_EQ(extension(m, 1, parse_term("~A")), 0b110u);
  EXPECT_THROW(extension(m, 3, parse_term("A")), std::out_of_range);
}

TEST(Semantics, WeakAssertoricNeedsOneValuation) {
  Model m({"a"}, 2);
  m.set_atom(0, "A", 1);
  m.set_atom(0, "B", 1);
  EXPECT_FALSE(satisfies(m, F("A ~> B")));
  EXPECT_TRUE(satisfies(m, F("?(A ~> B)")));
  EXPECT_TRUE(satisfies(m, F("?(B -> C)")));  // B is empty at the second valuation
  EXPECT_FALSE(satisfies(m, F("?(*A)")));     // the weak star is the star
}

TEST(Semantics, EntailmentOutcomes) {
  Model m({"a"}, 1);
  m.set_atom(0, "A", 1);
  EXPECT_EQ(check_entailment_on_model(m, {F("A -> B")}, F("A -> C")), Entailment::PremisesUnsatisfied);
  EXPECT_EQ(check_entailment_on_model(m, {F("*A")}, F("A -> B")), Entailment::Violated);
  EXPECT_EQ(check_entailment_on_model(m, {F("*A")}, F("A ~> A")), Entailment::Upheld);
  EXPECT_EQ(entailment_name(Entailment::PremisesUnsatisfied), "premises_unsatisfied");
}

TEST(Semantics, ModelJsonRoundTrip) {
  std::mt19937 rng(9);
  for (int n = 0; n < 200; ++n) {
    Model m = oracle::random_model(rng, 5, 4, {"A", "B", "Snow"});
    EXPECT_EQ(model_from_json(model_to_json(m)), m);
  }
  EXPECT_THROW(model_from_json(R"({"individuals": [], "valuations": [{}]})"), std::invalid_argument);
  EXPECT_THROW(model_from_json(R"({"individuals": ["a"], "valuations": []})"), std::invalid_argument);
  EXPECT_ANY_THROW(model_from_json(R"({"individuals": ["a"], "valuations": [{"A": ["z"]}]})"));
  EXPECT_ANY_THROW(model_from_json("not json"));
}

// The three models drawn in the text.
TEST(TextModels, SnowRefutesContingentNegativeConversion) {
  Model m = load_model(data("models/snow.model.json"));
  EXPECT_EQ(m.individual_count(), 2u);
  EXPECT_EQ(m.valuation_count(), 2u);
  EXPECT_TRUE(satisfies(m, F("Man -> <u>~White")));
  EXPECT_FALSE(satisfies(m, F("White -> <u>~Man")));
  EXPECT_EQ(check_entailment_on_model(m, {F("Man -> <u>~White")}, F("White -> <u>~Man")), Entailment::Violated);
}

TEST(TextModels, HorseValidatesPremisesAndRefutesConclusion) {
  Model m = load_model(data("models/horse.model.json"));
  EXPECT_EQ(m.individual_count(), 2u);
  EXPECT_EQ(m.valuation_count(), 4u);
  EXPECT_TRUE(satisfies(m, F("Man -> <u>White")));
  EXPECT_TRUE(satisfies(m, F("Horse -> <u>White")));
  EXPECT_FALSE(satisfies(m, F("Man -> <u>Horse")));
}

TEST(TextModels, A11ModelRefutesBothConversions) {
  Model m = load_model(data("models/a11.model.json"));
  EXPECT_TRUE(satisfies(m, F("C -> ~A")));
  EXPECT_TRUE(satisfies(m, F("C -> []B")));
  EXPECT_FALSE(satisfies(m, F("B ~> []~A")));
  EXPECT_FALSE(satisfies(m, F("A ~> []~B")));
}
