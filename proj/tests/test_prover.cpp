#include <gtest/gtest.h>

#include <random>

#include "amlkit/library.hpp"
#include "amlkit/prover.hpp"
#include "amlkit/rewrite.hpp"
#include "amlkit/syntax.hpp"
#include "oracle.hpp"

using namespace aml;

namespace {

Formula F(const char* s) { return parse_formula(s); }

ProveResult prove(std::vector<Formula> premises, Formula goal, int depth = 8, Theory theory = Theory::AML) {
  SearchConfig c;
  c.max_depth = depth;
  c.theory = theory;
  return prove_bounded(premises, goal, c);
}

void expect_sound_script(const ProveResult& r, const std::vector<Formula>& premises, const Formula& goal,
                         Theory theory) {
  ASSERT_TRUE(r.proof);
  CheckResult c = check_proof(*r.proof, theory);
  ASSERT_TRUE(c.accepted) << c.message;
  EXPECT_EQ(canonical(*c.conclusion), canonical(goal));
  for (const auto& p : c.open_premises)
    EXPECT_NE(std::find(premises.begin(), premises.end(), p), premises.end()) << render(p);
}

}  // namespace

TEST(Prover, Barbara) {
  std::vector<Formula> ps{F("B -> A"), F("C -> B")};
  ProveResult r = prove(ps, F("C -> A"));
  expect_sound_script(r, ps, F("C -> A"), Theory::AML);
  EXPECT_EQ(r.depth_reached, 1);
}

TEST(Prover, FailsHonestlyOnInvalidGoal) {
  ProveResult r = prove({F("A -> <u>~B")}, F("B -> <u>~A"), 6);
  EXPECT_FALSE(r.proof);
  EXPECT_FALSE(r.reason.empty());
  EXPECT_GT(r.facts, 0u);
}

TEST(Prover, DepthIsMonotone) {
  std::vector<Formula> ps{F("*C"), F("C -> A"), F("C -> B")};
  Formula goal = F("A ~> B");
  ProveResult r = prove(ps, goal);
  ASSERT_TRUE(r.proof);
  int d = r.depth_reached;
  EXPECT_FALSE(prove(ps, goal, d - 1).proof);
  for (int k = d; k <= d + 3; ++k) EXPECT_EQ(prove(ps, goal, k).depth_reached, d);
}

TEST(Prover, S5OnlyWhereNeeded) {
  std::vector<Formula> ps{F("C -> []~B")};
  Formula goal = F("B -> []~C");
  EXPECT_FALSE(prove(ps, goal, 8).proof);
  ProveResult r = prove(ps, goal, 8, Theory::AML_S5);
  expect_sound_script(r, ps, goal, Theory::AML_S5);
}

TEST(Prover, ImplicationAndWeakGoals) {
  Formula goal = F("B -> A & C -> B => C -> A");
  expect_sound_script(prove({}, goal), {}, goal, Theory::AML);
  Formula weak = F("?(C -> A)");
  std::vector<Formula> ps{F("B -> A"), F("C -> B")};
  EXPECT_FALSE(prove(ps, weak).proof);
  expect_sound_script(prove(ps, weak, 8, Theory::AML_BL), ps, weak, Theory::AML_BL);
}

TEST(Prover, Deterministic) {
  std::vector<Formula> ps{F("B -> []A"), F("C ~> B")};
  Formula goal = F("C ~> []A");
  ProveResult a = prove(ps, goal), b = prove(ps, goal);
  ASSERT_TRUE(a.proof && b.proof);
  EXPECT_EQ(render_proof(*a.proof), render_proof(*b.proof));
  EXPECT_EQ(a.facts, b.facts);
}

TEST(Prover, LibraryStepsStillCheck) {
  SearchConfig c;
  c.max_depth = 8;
  c.use_library = true;
  std::vector<Formula> ps{F("C -> A"), F("<u>C -> <u>B"), F("*C"), F("*<u>C")};
  Formula goal = F("<>A ~> <u>B");
  ProveResult r = prove_bounded(ps, goal, c);
  ASSERT_TRUE(r.proof);
  EXPECT_TRUE(check_proof(*r.proof, Theory::AML, &default_library()).accepted);
}

TEST(Prover, UniverseCoversGoalAndRespectsCap) {
  std::vector<Formula> ps{F("B -> <u>A")};
  Formula goal = F("B -> <>[]A");
  auto u = saturation_universe(ps, goal, 160);
  EXPECT_LE(u.size(), 160u);
  for (const char* t : {"B", "A", "[]A", "<u>A", "<>[]A"})
    EXPECT_NE(std::find(u.begin(), u.end(), canonical(parse_term(t))), u.end()) << t;
  EXPECT_LT(saturation_universe(ps, goal, 20).size(), u.size());
}

// Whatever is proved has no countermodel in the small cells.
TEST(Prover, ProvedGoalsHaveNoSmallCountermodel) {
  std::mt19937 rng(29);
  int proved = 0;
  const std::vector<std::string> atoms{"A", "B"};
  for (int n = 0; n < 150; ++n) {
    auto pick = [&] {
      Term a = oracle::random_term(rng, 1, 2), b = oracle::random_term(rng, 2, 2);
      return rng() % 3 ? Formula::univ(a, b) : Formula::part(a, b);
    };
    std::vector<Formula> ps{pick(), pick()};
    Formula goal = pick();
    SearchConfig c;
    c.max_depth = 4;
    c.max_terms = 60;
    ProveResult r = prove_bounded(ps, goal, c);
    if (!r.proof) continue;
    ++proved;
    EXPECT_TRUE(check_proof(*r.proof, Theory::AML).accepted);
    EXPECT_FALSE(oracle::refutable(ps, goal, 2, 2, atoms)) << render(ps[0]) << " & " << render(ps[1])
                                                           << " => " << render(goal);
  }
  EXPECT_GT(proved, 10);
}
