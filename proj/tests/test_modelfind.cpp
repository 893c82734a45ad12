#include <gtest/gtest.h>

#include <random>

#include "amlkit/modelfind.hpp"
#include "amlkit/syntax.hpp"
#include "oracle.hpp"

using namespace aml;

namespace {

Formula F(const char* s) { return parse_formula(s); }

}  // namespace

TEST(ModelFind, EnumerationHitsEveryIsomorphismClassOnce) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 1; k <= 2; ++k) {
      SearchBounds b{n, k, {"A", "B"}};
      EXPECT_EQ(enumerate_models(b).size(), oracle::iso_classes(n, k, b.atoms)) << n << "x" << k;
    }
  SearchBounds one{2, 3, {"A"}};
  EXPECT_EQ(enumerate_models(one).size(), oracle::iso_classes(2, 3, one.atoms));
}

TEST(ModelFind, EarlyStopIsHonoured) {
  int seen = 0;
  enumerate_models(SearchBounds{2, 2, {"A", "B"}}, [&](const Model&) { return ++seen < 5; });
  EXPECT_EQ(seen, 5);
}

// Countermodel existence agrees with exhaustive search, and every witness refutes.
TEST(ModelFind, AgreesWithExhaustiveOracle) {
  std::mt19937 rng(21);
  const std::vector<std::string> atoms{"A", "B"};
  int refuted = 0, upheld = 0;
  for (int n = 0; n < 300; ++n) {
    Term a = oracle::random_term(rng, 2, 2), b = oracle::random_term(rng, 2, 2),
         c = oracle::random_term(rng, 2, 2);
    std::vector<Formula> premises{rng() % 2 ? Formula::univ(a, b) : Formula::part(a, b)};
    Formula concl = rng() % 2 ? Formula::univ(b, c) : Formula::part(c, a);
    SearchOutcome r = find_countermodel(premises, concl, SearchBounds{2, 2, atoms});
    bool expected = oracle::refutable(premises, concl, 2, 2, atoms);
    ASSERT_EQ(r.model.has_value(), expected) << render(premises[0]) << " => " << render(concl);
    if (r.model) {
      ++refuted;
      EXPECT_EQ(check_entailment_on_model(*r.model, premises, concl), Entailment::Violated);
      EXPECT_EQ(r.model->individual_count(), r.individuals);
      EXPECT_EQ(r.model->valuation_count(), r.valuations);
      // The reported cell is the first one that holds a witness.
      for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t v = 1; v <= 2; ++v)
          if (std::make_pair(i, v) < std::make_pair(r.individuals, r.valuations))
            EXPECT_FALSE(oracle::refutable_exact(premises, concl, i, v, atoms));
    } else {
      ++upheld;
    }
  }
  EXPECT_GT(refuted, 30);
  EXPECT_GT(upheld, 30);
}

TEST(ModelFind, JobsDoNotChangeWitness) {
  std::vector<Formula> premises{F("A -> <u>~B")};
  Formula concl = F("B -> <u>~A");
  SearchBounds b{2, 4, {"A", "B"}};
  SearchOutcome one = find_countermodel(premises, concl, b, 1);
  SearchOutcome many = find_countermodel(premises, concl, b, 8);
  ASSERT_TRUE(one.model && many.model);
  EXPECT_EQ(model_to_json(*one.model), model_to_json(*many.model));
  EXPECT_EQ(one.individuals, many.individuals);
  EXPECT_EQ(one.valuations, many.valuations);
}

TEST(ModelFind, MissingAtomIsAnError) {
  EXPECT_ANY_THROW(find_countermodel({F("A -> B")}, F("B -> C"), SearchBounds{2, 2, {"A", "B"}}));
  EXPECT_EQ(atoms_needed({F("B -> []A")}, F("*C")), (std::vector<std::string>{"A", "B", "C"}));
}

TEST(ModelFind, ValidInferenceHasNoWitness) {
  SearchOutcome r = find_countermodel({F("B -> A"), F("C -> B")}, F("C -> A"), SearchBounds{2, 4, {"A", "B", "C"}});
  EXPECT_FALSE(r.model);
  EXPECT_GT(r.examined, 0u);
}
