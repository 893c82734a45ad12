#pragma once

// Brute-force reference implementations the library code is checked against.
// Nothing here reuses the evaluators, enumerators or rewriters under test.

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "amlkit/formula.hpp"
#include "amlkit/rewrite.hpp"
#include "amlkit/semantics.hpp"
#include "amlkit/syntax.hpp"

namespace oracle {

using aml::Formula;
using aml::FormulaKind;
using aml::Model;
using aml::Term;
using aml::TermKind;

// Membership of individual i in term t at valuation v, straight from the definitions.
inline bool member(const Model& m, std::size_t i, std::size_t v, const Term& t) {
  switch (t.kind()) {
    case TermKind::Atom: return (m.atom(v, t.name()) >> i) & 1;
    case TermKind::Comp: return !member(m, i, v, t.inner());
    case TermKind::Box:
      for (std::size_t w = 0; w < m.valuation_count(); ++w)
        if (!member(m, i, w, t.inner())) return false;
      return true;
    case TermKind::SqBox: {
      bool in = false, out = false;
      for (std::size_t w = 0; w < m.valuation_count(); ++w)
        (member(m, i, w, t.inner()) ? in : out) = true;
      return !(in && out);
    }
  }
  return false;
}

inline bool atomic_at(const Model& m, std::size_t v, const Formula& f) {
  bool found = false;
  for (std::size_t i = 0; i < m.individual_count(); ++i) {
    bool a = member(m, i, v, f.subject()), b = member(m, i, v, f.predicate());
    if (f.is_univ() && a && !b) return false;
    if (f.is_part() && a && b) found = true;
  }
  return f.is_univ() || found;
}

inline bool holds(const Model& m, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part:
      for (std::size_t v = 0; v < m.valuation_count(); ++v)
        if (!atomic_at(m, v, f)) return false;
      return true;
    case FormulaKind::And: return holds(m, f.left()) && holds(m, f.right());
    case FormulaKind::Implies: return !holds(m, f.left()) || holds(m, f.right());
    case FormulaKind::Bl: {
      const Formula& g = f.inner();
      if (g.is_part() && g.subject() == g.predicate()) return holds(m, g);
      for (std::size_t v = 0; v < m.valuation_count(); ++v)
        if (atomic_at(m, v, g)) return true;
      return false;
    }
  }
  return false;
}

// Every model with exactly n individuals and k valuations over `atoms`, no
// symmetry reduction. `visit` returns false to stop.
inline void all_models(std::size_t n, std::size_t k, const std::vector<std::string>& atoms,
                       const std::function<bool(const Model&)>& visit) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("i" + std::to_string(i));
  const std::size_t slots = k * atoms.size();
  const std::uint64_t per = std::uint64_t{1} << n;
  std::vector<std::uint64_t> digit(slots, 0);
  while (true) {
    Model m(names, k);
    for (std::size_t s = 0; s < slots; ++s) m.set_atom(s / atoms.size(), atoms[s % atoms.size()], digit[s]);
    if (!visit(m)) return;
    std::size_t s = 0;
    while (s < slots && ++digit[s] == per) digit[s++] = 0;
    if (s == slots) return;
  }
}

// Countermodel existence in the cell of exactly n individuals, k valuations.
inline bool refutable_exact(const std::vector<Formula>& premises, const Formula& concl, std::size_t n,
                            std::size_t k, const std::vector<std::string>& atoms) {
  bool found = false;
  all_models(n, k, atoms, [&](const Model& m) {
    for (const auto& p : premises)
      if (!holds(m, p)) return true;
    found = !holds(m, concl);
    return !found;
  });
  return found;
}

// Countermodel existence over every cell up to (n, k).
inline bool refutable(const std::vector<Formula>& premises, const Formula& concl, std::size_t n,
                      std::size_t k, const std::vector<std::string>& atoms) {
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t v = 1; v <= k; ++v)
      if (refutable_exact(premises, concl, i, v, atoms)) return true;
  return false;
}

// Isomorphism-class count for n individuals, k valuations: canonical key under
// permutations of individuals and reordering of valuations.
inline std::size_t iso_classes(std::size_t n, std::size_t k, const std::vector<std::string>& atoms) {
  std::set<std::vector<std::uint64_t>> keys;
  std::vector<std::size_t> perm(n);
  all_models(n, k, atoms, [&](const Model& m) {
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint64_t> best;
    do {
      std::vector<std::uint64_t> vals;
      for (std::size_t v = 0; v < k; ++v) {
        std::uint64_t code = 0;
        for (const auto& a : atoms) {
          std::uint64_t e = m.atom(v, a), p = 0;
          for (std::size_t i = 0; i < n; ++i)
            if (e >> i & 1) p |= std::uint64_t{1} << perm[i];
          code = code << n | p;
        }
        vals.push_back(code);
      }
      std::sort(vals.begin(), vals.end());
      if (best.empty() || vals < best) best = vals;
    } while (std::next_permutation(perm.begin(), perm.end()));
    keys.insert(best);
    return true;
  });
  return keys.size();
}

// One rewrite step of `mode` applied at any position of t.
inline std::vector<Term> rewrite_neighbours(const Term& t, aml::RewriteMode mode) {
  std::vector<Term> out;
  switch (mode) {
    case aml::RewriteMode::CEx:
      out.push_back(Term::comp(Term::comp(t)));
      if (t.is_comp() && t.inner().is_comp()) out.push_back(t.inner().inner());
      break;
    case aml::RewriteMode::SqEx:
      if (t.is_sqbox()) {
        const Term& x = t.inner();
        out.push_back(Term::sqbox(Term::comp(x)));
        if (x.is_comp()) out.push_back(Term::sqbox(x.inner()));
      }
      break;
    case aml::RewriteMode::OmEx:
      if (t.is_comp() && t.inner().is_sqbox()) {
        const Term& x = t.inner().inner();
        out.push_back(Term::comp(Term::sqbox(Term::comp(x))));
        if (x.is_comp()) out.push_back(Term::comp(Term::sqbox(x.inner())));
      }
      break;
  }
  if (!t.is_atom())
    for (const Term& u : rewrite_neighbours(t.inner(), mode)) {
      switch (t.kind()) {
        case TermKind::Comp: out.push_back(Term::comp(u)); break;
        case TermKind::Box: out.push_back(Term::box(u)); break;
        case TermKind::SqBox: out.push_back(Term::sqbox(u)); break;
        default: break;
      }
    }
  return out;
}

// Breadth-first reachability through terms no larger than `size_cap`.
inline bool bfs_reachable(const Term& from, const Term& to, aml::RewriteMode mode, std::size_t size_cap) {
  std::set<Term> seen{from};
  std::deque<Term> queue{from};
  while (!queue.empty()) {
    Term t = queue.front();
    queue.pop_front();
    if (t == to) return true;
    for (const Term& u : rewrite_neighbours(t, mode))
      if (u.size() <= size_cap && seen.insert(u).second) queue.push_back(u);
  }
  return false;
}

// Random term over atoms A, B, C with at most `depth` operators.
inline Term random_term(std::mt19937& rng, int depth, int atoms = 3) {
  int pick = std::uniform_int_distribution<int>(0, depth <= 0 ? 0 : 4)(rng);
  if (pick == 0) return Term::atom(std::string(1, static_cast<char>('A' + rng() % atoms)));
  Term inner = random_term(rng, depth - 1, atoms);
  switch (pick) {
    case 1: return Term::comp(inner);
    case 2: return Term::box(inner);
    case 3: return Term::sqbox(inner);
    default: return Term::comp(Term::comp(inner));
  }
}

inline Model random_model(std::mt19937& rng, std::size_t max_i, std::size_t max_v,
                          const std::vector<std::string>& atoms) {
  std::size_t n = 1 + rng() % max_i, k = 1 + rng() % max_v;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("i" + std::to_string(i));
  Model m(names, k);
  for (std::size_t v = 0; v < k; ++v)
    for (const auto& a : atoms) m.set_atom(v, a, rng() & ((std::uint64_t{1} << n) - 1));
  return m;
}

}  // namespace oracle
