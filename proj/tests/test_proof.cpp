#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "amlkit/library.hpp"
#include "amlkit/proof.hpp"
#include "amlkit/syntax.hpp"
#include "oracle.hpp"

using namespace aml;

namespace {

Formula F(const char* s) { return parse_formula(s); }

CheckResult check(const std::string& text, Theory theory = Theory::AML) {
  return check_proof(parse_proof(text), theory);
}

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(AMLKIT_DATA_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Proof, AcceptsChainAndReportsOpenPremises) {
  CheckResult r = check(slurp("proofs/aai_fig3.prf"));
  ASSERT_TRUE(r.accepted) << r.message;
  EXPECT_EQ(*r.conclusion, F("A ~> B"));
  EXPECT_EQ(r.open_premises, (std::vector<Formula>{F("*C"), F("C -> A"), F("C -> B")}));
}

TEST(Proof, DischargeClosesHypothesis) {
  CheckResult r = check(
      "1. A -> B by HYP\n2. B -> C by HYP\n3. A -> C by UNIV_T 1 2\n"
      "4. A -> B => A -> C by IMP_I 3 discharge 1\n");
  ASSERT_TRUE(r.accepted) << r.message;
  EXPECT_EQ(r.open_premises, (std::vector<Formula>{F("B -> C")}));
}

TEST(Proof, DischargedLineCannotBeCitedLater) {
  CheckResult r = check(
      "1. A -> B by HYP\n2. B -> C by HYP\n3. A -> C by UNIV_T 1 2\n"
      "4. A -> B => A -> C by IMP_I 3 discharge 1\n5. A -> B & B -> C by AND_I 1 2\n");
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.failing_line, 5);
}

TEST(Proof, RejectsMalformedSteps) {
  struct Case {
    const char* script;
    int line;
  };
  for (const Case& c : std::vector<Case>{
           {"1. A -> B by HYP\n2. B ~> A by PART_C 1\n", 2},
           {"1. A ~> B by HYP\n2. B ~> C by HYP\n3. A ~> C by PART_T 1 2\n", 3},
           {"1. A -> B by HYP\n2. A -> B by UNIV_T 1 7\n", 2},
           {"1. A -> B by HYP\n2. []A -> []B by K 3\n", 2},
           {"1. []A -> [u]~A by AX_S\n", 1},  // S concludes []A -> [u]A
           {"1. A -> ~B by HYP\n2. B -> A by C_C 1\n", 2},
           {"1. []A -> B by HYP\n2. [u]A -> B by SQ_I 1 1\n", 2},
       }) {
    CheckResult r = check(c.script);
    EXPECT_FALSE(r.accepted) << c.script;
    EXPECT_EQ(r.failing_line, c.line) << c.script << r.message;
    EXPECT_FALSE(r.message.empty());
  }
}

TEST(Proof, RewritesAreFreeBetweenEquivalentForms) {
  EXPECT_TRUE(check("1. A -> ~~B by HYP\n2. A -> B by C_EX 1\n").accepted);
  EXPECT_TRUE(check("1. A -> [u]B by HYP\n2. A -> [u]~B by SQ_EX 1\n").accepted);
  EXPECT_FALSE(check("1. A -> []B by HYP\n2. A -> []~B by SQ_EX 1\n").accepted);
}

TEST(Proof, TheoryGatesAxiomsAndRules) {
  const char* s5 = "1. <>A -> []<>A by AX_S5\n";
  EXPECT_FALSE(check(s5).accepted);
  EXPECT_TRUE(check(s5, Theory::AML_S5).accepted);
  const char* bl = "1. A -> B by HYP\n2. ?(A -> B) by BL_I 1\n";
  EXPECT_FALSE(check(bl).accepted);
  EXPECT_TRUE(check(bl, Theory::AML_BL).accepted);
  EXPECT_TRUE(theory_includes(Theory::AML_S5, Theory::AML));
  EXPECT_FALSE(theory_includes(Theory::AML, Theory::AML_S5));
  EXPECT_FALSE(theory_includes(Theory::AML_BL, Theory::AML_S5));
  EXPECT_EQ(parse_theory("S5"), Theory::AML_S5);
  EXPECT_THROW(parse_theory("K45"), std::invalid_argument);
}

TEST(Proof, LemmaStepsNeedAVerifiedLibrary) {
  const char* script = "1. A -> B by HYP\n2. <>A -> <>B by LEMMA(diamond_t) 1\n";
  EXPECT_FALSE(check(script).accepted);
  EXPECT_TRUE(check_proof(parse_proof(script), Theory::AML, &default_library()).accepted)
      << check_proof(parse_proof(script), Theory::AML, &default_library()).message;
  LemmaLibrary unverified = shipped_library();
  EXPECT_FALSE(check_proof(parse_proof(script), Theory::AML, &unverified).accepted);
}

TEST(Proof, ParseRenderRoundTrip) {
  for (const char* rel : {"proofs/aai_fig3.prf", "proofs/k_barbara.prf", "proofs/enace_s5.prf"}) {
    ProofScript s = parse_proof(slurp(rel));
    std::string text = render_proof(s);
    EXPECT_EQ(render_proof(parse_proof(text)), text) << rel;
  }
  EXPECT_ANY_THROW(parse_proof("1. A -> B by FROB\n"));
  CheckResult r = check("2. A -> B by HYP\n1. B -> C by HYP\n");
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.failing_line, 1);
}

// Axiom instances hold in every model.
TEST(Proof, AxiomInstancesAreValid) {
  std::mt19937 rng(17);
  for (int n = 0; n < 400; ++n) {
    Term t = oracle::random_term(rng, 2);
    Model m = oracle::random_model(rng, 3, 3, {"A", "B", "C"});
    for (Rule r : {Rule::AX_S, Rule::AX_T, Rule::AX_4, Rule::AX_S5})
      EXPECT_TRUE(oracle::holds(m, axiom_instance(r, t))) << rule_name(r) << " " << render(t);
  }
  EXPECT_THROW(axiom_instance(Rule::AX_S5, Term::atom("A"), Theory::AML), std::invalid_argument);
  EXPECT_THROW(axiom_instance(Rule::MP, Term::atom("A")), std::invalid_argument);
}
