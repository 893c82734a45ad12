#include <gtest/gtest.h>

#include <random>

#include "amlkit/rewrite.hpp"
#include "amlkit/syntax.hpp"
#include "oracle.hpp"

using namespace aml;

namespace {

const RewriteMode kModes[] = {RewriteMode::CEx, RewriteMode::SqEx, RewriteMode::OmEx};

}  // namespace

TEST(Rewrite, KnownEquivalences) {
  EXPECT_TRUE(rewrite_reachable(parse_term("~~A"), parse_term("A"), RewriteMode::CEx));
  EXPECT_TRUE(rewrite_reachable(parse_term("[]~~~~B"), parse_term("[]B"), RewriteMode::CEx));
  EXPECT_FALSE(rewrite_reachable(parse_term("~A"), parse_term("A"), RewriteMode::CEx));
  EXPECT_TRUE(rewrite_reachable(parse_term("[u]A"), parse_term("[u]~A"), RewriteMode::SqEx));
  EXPECT_FALSE(rewrite_reachable(parse_term("[]A"), parse_term("[]~A"), RewriteMode::SqEx));
  EXPECT_TRUE(rewrite_reachable(parse_term("<u>A"), parse_term("<u>~A"), RewriteMode::OmEx));
  EXPECT_TRUE(rewrite_reachable(parse_formula("A -> <u>~B"), parse_formula("A -> <u>B"), RewriteMode::OmEx));
  EXPECT_FALSE(rewrite_reachable(parse_formula("A -> B"), parse_formula("A ~> B"), RewriteMode::CEx));
}

// Normal forms agree with breadth-first search over single rewrite steps.
TEST(Rewrite, MatchesBreadthFirstOracle) {
  std::mt19937 rng(11);
  int positive = 0;
  for (int n = 0; n < 600; ++n) {
    Term a = oracle::random_term(rng, 3, 2);
    for (RewriteMode mode : kModes) {
      // Candidates: random terms plus a few steps away from a.
      std::vector<Term> targets{oracle::random_term(rng, 3, 2)};
      Term walk = a;
      for (int s = 0; s < 3; ++s) {
        auto next = oracle::rewrite_neighbours(walk, mode);
        if (next.empty()) break;
        walk = next[rng() % next.size()];
        targets.push_back(walk);
      }
      for (const Term& b : targets) {
        std::size_t cap = std::max(a.size(), b.size()) + 4;
        bool bfs = oracle::bfs_reachable(a, b, mode, cap);
        EXPECT_EQ(rewrite_reachable(a, b, mode), bfs) << render(a) << " vs " << render(b);
        EXPECT_EQ(normal_form(a, mode) == normal_form(b, mode), bfs) << render(a) << " vs " << render(b);
        positive += bfs;
      }
    }
  }
  EXPECT_GT(positive, 500);
}

TEST(Rewrite, CanonicalIsIdempotentAndSemanticallyNeutral) {
  std::mt19937 rng(5);
  for (int n = 0; n < 500; ++n) {
    Term t = oracle::random_term(rng, 5);
    Term c = canonical(t);
    EXPECT_EQ(canonical(c), c);
    Model m = oracle::random_model(rng, 3, 3, {"A", "B", "C"});
    for (std::size_t v = 0; v < m.valuation_count(); ++v)
      EXPECT_EQ(extension(m, v, t), extension(m, v, c)) << render(t);
  }
}

TEST(Rewrite, FormulaNormalFormActsOnEveryTerm) {
  Formula f = parse_formula("~~A -> [u]~B & *~~C");
  EXPECT_EQ(normal_form(normal_form(f, RewriteMode::CEx), RewriteMode::SqEx),
            canonical(parse_formula("A -> [u]B & *C")));
}
