#include "amlkit/prover.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "amlkit/rewrite.hpp"

namespace aml {

namespace {

void atomic_parts(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part: out.push_back(f); return;
    case FormulaKind::And:
    case FormulaKind::Implies:
      atomic_parts(f.left(), out);
      atomic_parts(f.right(), out);
      return;
    case FormulaKind::Bl: atomic_parts(f.inner(), out); return;
  }
}

bool has_metavariable(const Term& t) {
  Term core = t;
  while (!core.is_atom()) core = core.inner();
  return is_metavariable(core.name());
}

bool has_metavariable(const Formula& f) {
  std::vector<Formula> parts;
  atomic_parts(f, parts);
  return std::any_of(parts.begin(), parts.end(), [](const Formula& a) {
    return has_metavariable(a.subject()) || has_metavariable(a.predicate());
  });
}

std::vector<std::string> metavariables_of(const Formula& f) {
  std::vector<std::string> names;
  atoms_of(f, names);
  std::vector<std::string> out;
  for (auto& n : names)
    if (is_metavariable(n) && std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  return out;
}

using Prefix = Term (*)(Term);

const Prefix kPrefixes[] = {&Term::comp, &Term::box, &Term::sqbox, &Term::diamond, &Term::bicontingent};

}  // namespace

std::vector<Term> saturation_universe(const std::vector<Formula>& premises, const Formula& goal,
                                      std::size_t max_terms) {
  std::vector<Formula> parts;
  for (const auto& p : premises) atomic_parts(p, parts);
  atomic_parts(goal, parts);

  std::set<Term> all;
  for (const auto& a : parts) {
    for (const Term& t : {a.subject(), a.predicate()}) {
      std::vector<Term> subs;
      subterms(t, subs);
      subterms(canonical(t), subs);
      for (const auto& s : subs) {
        Term c = canonical(s);
        all.insert(c);
        all.insert(canonical(Term::comp(c)));
      }
    }
  }

  // Modal-prefix layers, added while they fit; a layer that does not fit is
  // truncated in term order (smallest terms first).
  std::set<Term> frontier = all;
  for (int layer = 0; layer < 2 && all.size() < max_terms; ++layer) {
    std::set<Term> next;
    for (const auto& t : frontier) {
      for (Prefix pre : kPrefixes) {
        Term c = canonical(pre(t));
        if (!all.count(c)) next.insert(c);
        Term nc = canonical(Term::comp(c));
        if (!all.count(nc)) next.insert(nc);
      }
    }
    for (const auto& t : next) {
      if (all.size() >= max_terms) break;
      all.insert(t);
    }
    frontier = std::move(next);
  }
  return {all.begin(), all.end()};
}

namespace {

struct Derivation {
  Rule rule = Rule::HYP;
  std::string lemma;
  std::vector<int> premises;       // fact ids
  std::vector<Formula> views;      // exact form each premise must take for the rule
  std::optional<Formula> raw;      // conclusion as the rule produces it
  int source = -1;                 // HYP-origin facts: index into sources
  int height = 0;
};

// A premise or hypothesis conjunct: root formula plus And-path (1 = left, 2 = right).
struct Source {
  int root;
  std::vector<int> path;
};

struct Candidate {
  std::string key;
  std::vector<int> premises;
  Formula raw;
  Formula canon;
  Derivation d;
};

struct LemmaRule {
  const LemmaEntry* entry;
  std::vector<Formula> canon_premises;
};

class Search {
 public:
  Search(const SearchConfig& config, const std::vector<Term>& universe, const LemmaLibrary* library)
      : config_(config), universe_(universe.begin(), universe.end()) {
    if (library) {
      for (const auto& e : library->entries()) {
        if (!theory_includes(config.theory, e.theory)) continue;
        bool atomic = e.conclusion.is_atomic() &&
                      std::all_of(e.premises.begin(), e.premises.end(),
                                  [](const Formula& p) { return p.is_atomic(); });
        if (!atomic || e.premises.size() > 2) continue;
        LemmaRule r{&e, {}};
        for (const auto& p : e.premises) r.canon_premises.push_back(canonical(p));
        lemmas_.push_back(std::move(r));
      }
    }
  }

  std::vector<Formula> facts;
  std::vector<Derivation> derivations;
  std::unordered_map<Formula, int> index;
  std::vector<Formula> roots;
  std::vector<Source> sources;

  void add_root(const Formula& f) {
    roots.push_back(f);
    add_sources(f, static_cast<int>(roots.size()) - 1, {});
  }

  void seed_axioms() {
    for (const auto& t : universe_) {
      offer(Rule::AX_S, "", {}, {}, Formula::univ(Term::box(t), Term::sqbox(t)), 0);
      offer(Rule::AX_T, "", {}, {}, Formula::univ(Term::box(t), t), 0);
      offer(Rule::AX_4, "", {}, {}, Formula::univ(Term::box(t), Term::box(Term::box(t))), 0);
      if (theory_includes(config_.theory, Theory::AML_S5))
        offer(Rule::AX_S5, "", {}, {}, axiom_instance(Rule::AX_S5, t), 0);
    }
    for (const auto& l : lemmas_) {
      if (!l.entry->premises.empty()) continue;
      auto vars = metavariables_of(l.entry->conclusion);
      if (vars.size() != 1) continue;
      for (const auto& t : universe_) {
        Substitution sigma{{vars[0], t}};
        offer(Rule::LEMMA, l.entry->name, {}, {}, substitute(l.entry->conclusion, sigma), 0);
      }
    }
    commit();
  }

  // One round: every rule application with at least one premise from the last round.
  bool step(int round) {
    std::size_t lo = frontier_begin_, hi = facts.size();
    frontier_begin_ = hi;
    for (std::size_t id = lo; id < hi; ++id) expand(static_cast<int>(id), round);
    commit();
    return facts.size() > hi;
  }

  bool has(const Formula& canon) const { return index.count(canon) > 0; }

 private:
  void add_sources(const Formula& f, int root, std::vector<int> path) {
    if (f.is_and()) {
      auto l = path, r = path;
      l.push_back(1);
      r.push_back(2);
      add_sources(f.left(), root, l);
      add_sources(f.right(), root, r);
      return;
    }
    if (!f.is_atomic()) return;
    Formula c = canonical(f);
    if (index.count(c) || !in_universe(c)) return;
    sources.push_back(Source{root, path});
    Derivation d;
    d.source = static_cast<int>(sources.size()) - 1;
    insert(c, d);
  }

  bool in_universe(const Formula& f) const {
    return universe_.count(f.subject()) && universe_.count(f.predicate());
  }

  void insert(const Formula& canon, Derivation d) {
    int id = static_cast<int>(facts.size());
    facts.push_back(canon);
    derivations.push_back(std::move(d));
    index.emplace(canon, id);
    if (canon.is_univ()) {
      univ_by_subject_[canon.subject()].push_back(id);
      univ_by_predicate_[canon.predicate()].push_back(id);
    } else {
      part_by_subject_[canon.subject()].push_back(id);
      part_by_predicate_[canon.predicate()].push_back(id);
    }
  }

  int height_of(const std::vector<int>& prem) const {
    int h = -1;
    for (int p : prem) h = std::max(h, derivations[p].height);
    return h + 1;
  }

  void offer(Rule rule, const std::string& lemma, std::vector<int> prem, std::vector<Formula> views,
             const Formula& raw, int height) {
    Formula canon = canonical(raw);
    if (!in_universe(canon) || index.count(canon)) return;
    std::string key = rule == Rule::LEMMA ? "LEMMA(" + lemma + ")" : std::string(rule_name(rule));
    auto it = pending_.find(canon);
    if (it != pending_.end()) {
      const Candidate& c = candidates_[it->second];
      if (std::tie(c.key, c.premises, c.raw) <= std::tie(key, prem, raw)) return;
    }
    Derivation d{rule, lemma, prem, std::move(views), raw, -1, height};
    Candidate c{key, prem, raw, canon, std::move(d)};
    if (it != pending_.end()) {
      candidates_[it->second] = std::move(c);
    } else {
      pending_.emplace(canon, candidates_.size());
      candidates_.push_back(std::move(c));
    }
  }

  void commit() {
    std::sort(candidates_.begin(), candidates_.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(a.key, a.premises, a.raw) < std::tie(b.key, b.premises, b.raw);
    });
    for (auto& c : candidates_) insert(c.canon, std::move(c.d));
    candidates_.clear();
    pending_.clear();
  }

  const std::vector<int>& lookup(const std::unordered_map<Term, std::vector<int>>& m, const Term& t) const {
    static const std::vector<int> none;
    auto it = m.find(t);
    return it == m.end() ? none : it->second;
  }

  void expand(int id, int round) {
    const Formula f = facts[id];
    const Term& x = f.subject();
    const Term& y = f.predicate();
    if (f.is_univ()) {
      for (int bc : std::vector<int>(lookup(univ_by_subject_, y))) {
        const Formula& g = facts[bc];
        offer(Rule::UNIV_T, "", {id, bc}, {f, g}, Formula::univ(x, g.predicate()), round);
      }
      for (int ab : std::vector<int>(lookup(univ_by_predicate_, x))) {
        const Formula& g = facts[ab];
        offer(Rule::UNIV_T, "", {ab, id}, {g, f}, Formula::univ(g.subject(), y), round);
      }
      for (int ab : std::vector<int>(lookup(part_by_predicate_, x))) {
        const Formula& g = facts[ab];
        offer(Rule::PART_T, "", {ab, id}, {g, f}, Formula::part(g.subject(), y), round);
      }
      if (y.is_comp()) {
        offer(Rule::C_C, "", {id}, {f}, Formula::univ(y.inner(), Term::comp(x)), round);
      } else {
        offer(Rule::C_C, "", {id}, {Formula::univ(x, Term::comp(Term::comp(y)))},
              Formula::univ(Term::comp(y), Term::comp(x)), round);
      }
      offer(Rule::K, "", {id}, {f}, Formula::univ(Term::box(x), Term::box(y)), round);
      if (x.is_box()) {
        const Term& p = x.inner();
        Term a = p.is_comp() ? p.inner() : p;
        Formula pos = Formula::univ(Term::box(a), y);
        Formula neg = Formula::univ(Term::box(Term::comp(a)), y);
        auto pi = index.find(pos), ni = index.find(neg);
        if (pi != index.end() && ni != index.end())
          offer(Rule::SQ_I, "", {pi->second, ni->second}, {pos, neg}, Formula::univ(Term::sqbox(a), y),
                round);
      }
    } else {
      for (int bc : std::vector<int>(lookup(univ_by_subject_, y))) {
        const Formula& g = facts[bc];
        offer(Rule::PART_T, "", {id, bc}, {f, g}, Formula::part(x, g.predicate()), round);
      }
      offer(Rule::PART_C, "", {id}, {f}, Formula::part(y, x), round);
      offer(Rule::PART_I, "", {id}, {f}, Formula::part(x, x), round);
    }
    for (const auto& l : lemmas_) expand_lemma(l, id, round);
  }

  void expand_lemma(const LemmaRule& l, int id, int round) {
    const auto& pats = l.canon_premises;
    for (std::size_t i = 0; i < pats.size(); ++i) {
      Substitution sigma;
      if (!match_pattern(pats[i], facts[id], sigma)) continue;
      if (pats.size() == 1) {
        finish_lemma(l, {id}, sigma, round);
        continue;
      }
      std::size_t j = 1 - i;
      Formula other = substitute(pats[j], sigma);
      auto place = [&](int oid) {
        std::vector<int> prem(2);
        prem[i] = id;
        prem[j] = oid;
        return prem;
      };
      if (!has_metavariable(other)) {
        auto it = index.find(canonical(other));
        if (it != index.end()) finish_lemma(l, place(it->second), sigma, round);
      } else if (!has_metavariable(other.subject())) {
        const auto& by = other.is_univ() ? univ_by_subject_ : part_by_subject_;
        for (int oid : std::vector<int>(lookup(by, other.subject()))) {
          Substitution s2 = sigma;
          if (match_pattern(pats[j], facts[oid], s2)) finish_lemma(l, place(oid), s2, round);
        }
      }
    }
  }

  void finish_lemma(const LemmaRule& l, const std::vector<int>& prem, const Substitution& sigma, int round) {
    std::vector<Formula> views;
    for (std::size_t k = 0; k < prem.size(); ++k) {
      Formula inst = substitute(l.entry->premises[k], sigma);
      if (has_metavariable(inst) || !(canonical(inst) == facts[prem[k]])) return;
      views.push_back(inst);
    }
    Formula concl = substitute(l.entry->conclusion, sigma);
    if (has_metavariable(concl)) return;
    offer(Rule::LEMMA, l.entry->name, prem, std::move(views), concl, round);
  }

  const SearchConfig& config_;
  std::unordered_set<Term> universe_;
  std::vector<LemmaRule> lemmas_;
  std::unordered_map<Term, std::vector<int>> univ_by_subject_, univ_by_predicate_;
  std::unordered_map<Term, std::vector<int>> part_by_subject_, part_by_predicate_;
  std::vector<Candidate> candidates_;
  std::unordered_map<Formula, std::size_t> pending_;
  std::size_t frontier_begin_ = 0;
};

// Turns chosen derivations into script lines, inserting C_EX/SQ_EX steps
// wherever a rule needs a premise in a form other than the stored canonical one.
class Emitter {
 public:
  explicit Emitter(const Search& s) : s_(s), fact_line_(s.facts.size(), 0), root_line_(s.roots.size(), 0) {}

  ProofScript script;

  int fact(int id) {
    if (fact_line_[id]) return fact_line_[id];
    const Derivation& d = s_.derivations[id];
    int line;
    if (d.source >= 0) {
      line = source(s_.sources[d.source]);
    } else {
      std::vector<int> lines;
      for (std::size_t k = 0; k < d.premises.size(); ++k)
        lines.push_back(derive_as(fact(d.premises[k]), d.views[k]));
      line = add(*d.raw, Justification{d.rule, d.lemma, lines, {}});
    }
    return fact_line_[id] = derive_as(line, s_.facts[id]);
  }

  int derive_as(int line, const Formula& target) {
    Formula from = formula(line);
    if (from == target) return line;
    Formula a = normal_form(from, RewriteMode::CEx);
    if (!(a == from)) line = add(a, {Rule::C_EX, "", {line}, {}});
    Formula b = normal_form(a, RewriteMode::SqEx);
    if (!(b == a)) line = add(b, {Rule::SQ_EX, "", {line}, {}});
    Formula t1 = normal_form(target, RewriteMode::CEx);
    if (!(t1 == b)) line = add(t1, {Rule::SQ_EX, "", {line}, {}});
    if (!(target == t1)) line = add(target, {Rule::C_EX, "", {line}, {}});
    return line;
  }

  int root(int r) {
    if (!root_line_[r]) root_line_[r] = add(s_.roots[r], {Rule::HYP, "", {}, {}});
    return root_line_[r];
  }
  bool root_emitted(int r) const { return root_line_[r] != 0; }

  int add(const Formula& f, Justification why) {
    if (why.rule != Rule::IMP_I) {
      auto it = line_of_.find(f);
      if (it != line_of_.end()) return it->second;
    }
    int n = static_cast<int>(script.steps.size()) + 1;
    script.steps.push_back(ProofStep{n, f, std::move(why), ""});
    line_of_.emplace(f, n);
    return n;
  }

  const Formula& formula(int line) const { return script.steps[line - 1].formula; }

  // Makes `line` the last step; an earlier line reused by add() would otherwise
  // leave some other formula as the script's conclusion.
  int conclude(int line) {
    if (line == static_cast<int>(script.steps.size())) return line;
    int n = static_cast<int>(script.steps.size()) + 1;
    script.steps.push_back(ProofStep{n, formula(line), {Rule::C_EX, "", {line}, {}}, ""});
    return n;
  }

 private:
  int source(const Source& src) {
    int line = root(src.root);
    for (int dir : src.path) {
      const Formula& f = formula(line);
      line = dir == 1 ? add(f.left(), {Rule::AND_E1, "", {line}, {}})
                      : add(f.right(), {Rule::AND_E2, "", {line}, {}});
    }
    return line;
  }

  const Search& s_;
  std::vector<int> fact_line_;
  std::vector<int> root_line_;
  std::unordered_map<Formula, int> line_of_;
};

bool target_supported(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part: return true;
    case FormulaKind::And: return target_supported(f.left()) && target_supported(f.right());
    case FormulaKind::Bl: return true;
    case FormulaKind::Implies: return false;
  }
  return false;
}

bool target_reached(const Search& s, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part: return s.has(canonical(f));
    case FormulaKind::And: return target_reached(s, f.left()) && target_reached(s, f.right());
    case FormulaKind::Bl: return target_reached(s, f.inner());
    case FormulaKind::Implies: return false;
  }
  return false;
}

int emit_target(Emitter& e, const Search& s, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part: return e.derive_as(e.fact(s.index.at(canonical(f))), f);
    case FormulaKind::And: {
      int l = emit_target(e, s, f.left());
      int r = emit_target(e, s, f.right());
      return e.add(f, {Rule::AND_I, "", {l, r}, {}});
    }
    case FormulaKind::Bl: {
      int l = emit_target(e, s, f.inner());
      return e.add(f, {Rule::BL_I, "", {l}, {}});
    }
    case FormulaKind::Implies: break;
  }
  throw std::logic_error("unsupported target shape");
}

bool mentions_bl(const Formula& f) {
  if (f.is_bl()) return true;
  if (f.is_and() || f.is_implies()) return mentions_bl(f.left()) || mentions_bl(f.right());
  return false;
}

}  // namespace

ProveResult prove_bounded(const std::vector<Formula>& premises, const Formula& goal,
                          const SearchConfig& config) {
  if (config.max_depth < 0) throw std::invalid_argument("max_depth must be non-negative");
  ProveResult result;

  std::vector<Formula> hyps;
  Formula target = goal;
  while (target.is_implies()) {
    hyps.push_back(target.left());
    target = target.right();
  }
  if (!target_supported(target)) {
    result.reason = "goal shape not supported: implication nested inside a conjunction";
    return result;
  }
  if (mentions_bl(target) && !theory_includes(config.theory, Theory::AML_BL)) {
    result.reason = "goal needs BL_I, which " + std::string(theory_name(config.theory)) + " lacks";
    return result;
  }

  const LemmaLibrary* library = nullptr;
  if (config.use_library) library = config.library ? config.library : &default_library();
  if (library && !library->usable()) {
    result.reason = "lemma library is not verified";
    return result;
  }

  std::vector<Term> universe = saturation_universe(premises, goal, config.max_terms);
  result.universe_size = universe.size();
  Search search(config, universe, library);
  for (const auto& p : premises) search.add_root(p);
  for (const auto& h : hyps) search.add_root(h);
  search.seed_axioms();

  int round = 0;
  bool found = target_reached(search, target);
  while (!found && round < config.max_depth) {
    ++round;
    if (!search.step(round)) break;
    found = target_reached(search, target);
  }
  result.depth_reached = round;
  result.facts = search.facts.size();
  if (!found) {
    result.reason = round < config.max_depth ? "saturated without reaching the goal"
                                             : "depth bound reached";
    return result;
  }

  Emitter emit(search);
  int line = emit_target(emit, search, target);
  if (hyps.empty()) line = emit.conclude(line);
  for (std::size_t k = hyps.size(); k-- > 0;) {
    int r = static_cast<int>(premises.size() + k);
    std::vector<int> dis;
    if (emit.root_emitted(r)) dis.push_back(emit.root(r));
    Formula f = Formula::implies(hyps[k], emit.formula(line));
    line = emit.add(f, {Rule::IMP_I, "", {line}, dis});
  }

  CheckResult check = check_proof(emit.script, config.theory, library);
  if (!check.accepted || !(*check.conclusion == goal))
    throw std::logic_error("prover emitted a script the kernel rejects: " + check.message);
  for (const auto& open : check.open_premises)
    if (std::find(premises.begin(), premises.end(), open) == premises.end())
      throw std::logic_error("prover script depends on a non-premise hypothesis");
  result.proof = std::move(emit.script);
  return result;
}

}  // namespace aml
