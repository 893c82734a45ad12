#include "amlkit/library.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace aml {

// ---------------------------------------------------------------------------
// Matching

bool match_pattern(const Term& pattern, const Term& target, Substitution& sigma) {
  if (pattern.is_atom() && is_metavariable(pattern.name())) {
    auto [it, inserted] = sigma.try_emplace(pattern.name(), target);
    return inserted || it->second == target;
  }
  if (pattern.kind() != target.kind()) return false;
  if (pattern.is_atom()) return pattern.name() == target.name();
  return match_pattern(pattern.inner(), target.inner(), sigma);
}

bool match_pattern(const Formula& pattern, const Formula& target, Substitution& sigma) {
  if (pattern.kind() != target.kind()) return false;
  switch (pattern.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part:
      return match_pattern(pattern.subject(), target.subject(), sigma) &&
             match_pattern(pattern.predicate(), target.predicate(), sigma);
    case FormulaKind::And:
    case FormulaKind::Implies:
      return match_pattern(pattern.left(), target.left(), sigma) &&
             match_pattern(pattern.right(), target.right(), sigma);
    case FormulaKind::Bl: return match_pattern(pattern.inner(), target.inner(), sigma);
  }
  return false;
}

Term substitute(const Term& t, const Substitution& sigma) {
  switch (t.kind()) {
    case TermKind::Atom: {
      auto it = sigma.find(t.name());
      return it == sigma.end() ? t : it->second;
    }
    case TermKind::Comp: return Term::comp(substitute(t.inner(), sigma));
    case TermKind::Box: return Term::box(substitute(t.inner(), sigma));
    case TermKind::SqBox: return Term::sqbox(substitute(t.inner(), sigma));
  }
  return t;
}

Formula substitute(const Formula& f, const Substitution& sigma) {
  return map_terms(f, [&](const Term& t) { return substitute(t, sigma); });
}

// ---------------------------------------------------------------------------
// LemmaLibrary

void LemmaLibrary::add(LemmaEntry entry) {
  if (index_.count(entry.name)) throw std::invalid_argument("duplicate lemma '" + entry.name + "'");
  index_[entry.name] = entries_.size();
  entries_.push_back(std::move(entry));
  usable_ = false;
}

const LemmaEntry* LemmaLibrary::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::size_t LemmaLibrary::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown lemma '" + name + "'");
  return it->second;
}

std::optional<std::string> LemmaLibrary::check_step(const std::string& name,
                                                    const Formula& conclusion,
                                                    const std::vector<Formula>& premises,
                                                    Theory theory) const {
  const LemmaEntry* e = find(name);
  if (!e) return "unknown lemma '" + name + "'";
  if (!usable_) return "lemma library is not verified; LEMMA steps are disabled";
  if (!theory_includes(theory, e->theory))
    return "lemma '" + name + "' requires " + std::string(theory_name(e->theory));
  if (premises.size() != e->premises.size())
    return "lemma '" + name + "' expects " + std::to_string(e->premises.size()) +
           " premise line(s), got " + std::to_string(premises.size());
  Substitution sigma;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (!match_pattern(e->premises[i], premises[i], sigma))
      return "premise " + std::to_string(i + 1) + " '" + render(premises[i]) +
             "' does not match pattern '" + render(e->premises[i]) + "'";
  }
  if (!match_pattern(e->conclusion, conclusion, sigma))
    return "conclusion '" + render(conclusion) + "' does not match pattern '" +
           render(e->conclusion) + "' under the premise bindings";
  return std::nullopt;
}

bool LibraryReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const EntryCheck& c) { return c.status == EntryStatus::Pass; });
}

bool LibraryReport::usable() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const EntryCheck& c) { return c.status == EntryStatus::Fail; });
}

namespace {

std::optional<std::string> verify_entry(const LemmaEntry& e, const LemmaLibrary& prior) {
  CheckResult r = check_proof(e.proof, e.theory, &prior);
  if (!r.accepted) return "defining script rejected: " + r.message;
  if (!(*r.conclusion == e.conclusion))
    return "script concludes '" + render(*r.conclusion) + "', schema says '" +
           render(e.conclusion) + "'";
  std::set<Formula> open(r.open_premises.begin(), r.open_premises.end());
  std::set<Formula> schema(e.premises.begin(), e.premises.end());
  if (open != schema) return "open premises of the script differ from the schema premises";
  if (e.requires_rule) {
    bool used = std::any_of(e.proof.steps.begin(), e.proof.steps.end(),
                            [&](const ProofStep& s) { return s.why.rule == *e.requires_rule; });
    if (!used) return "script never uses " + std::string(rule_name(*e.requires_rule));
  }
  return std::nullopt;
}

}  // namespace

LibraryReport verify_library(LemmaLibrary& library, Theory theory) {
  LibraryReport report;
  report.theory = theory;
  LemmaLibrary prior;
  prior.usable_ = true;
  for (const auto& e : library.entries_) {
    EntryCheck c{e.name, EntryStatus::Pass, ""};
    if (auto err = verify_entry(e, prior)) {
      c.status = EntryStatus::Fail;
      c.message = *err;
    } else if (!theory_includes(theory, e.theory)) {
      c.status = EntryStatus::Unavailable;
      c.message = "requires " + std::string(theory_name(e.theory));
    }
    report.entries.push_back(c);
    prior.index_[e.name] = prior.entries_.size();
    prior.entries_.push_back(e);
    // A failing entry poisons everything after it that cites it; keep going so the
    // report is complete, but stop treating the prefix as trusted.
    if (c.status == EntryStatus::Fail) prior.usable_ = false;
  }
  library.usable_ = report.usable();
  return report;
}

std::string render_report(const LibraryReport& report) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& c : report.entries) {
    const char* tag = c.status == EntryStatus::Pass    ? "PASS"
                      : c.status == EntryStatus::Fail ? "FAIL"
                                                      : "UNAVAILABLE";
    if (c.status == EntryStatus::Pass) ++passed;
    out << tag << "  " << c.name;
    if (!c.message.empty()) out << "  (" << c.message << ")";
    out << "\n";
  }
  out << "theory: " << theory_name(report.theory) << "  passed: " << passed << "/"
      << report.entries.size() << "  usable: " << (report.usable() ? "yes" : "no") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Shipped derived rules

namespace {

struct Spec {
  const char* name;
  const char* description;
  std::vector<const char*> premises;
  const char* conclusion;
  Theory theory;
  const char* proof;
  std::optional<Rule> requires_rule = std::nullopt;
};

const std::vector<Spec>& shipped_specs() {
  static const std::vector<Spec> specs = {
      {"diamond_intro", "(ii) A -> <>A", {}, "$A -> <>$A", Theory::AML, R"(
1. []~$A -> ~$A by AX_T
2. $A -> <>$A by C_C 1
)"},
      {"bicont_to_diamond_comp", "(i) <u>A -> <>~A", {}, "<u>$A -> <>~$A", Theory::AML, R"(
1. []$A -> [u]$A by AX_S
2. []$A -> ~~[u]$A by C_EX 1
3. <u>$A -> ~[]$A by C_C 2
4. <u>$A -> <>~$A by C_EX 3
)"},
      {"bicont_to_diamond", "(iii) <u>A -> <>A", {}, "<u>$A -> <>$A", Theory::AML, R"(
1. []~$A -> [u]~$A by AX_S
2. []~$A -> [u]$A by SQ_EX 1
3. []~$A -> ~~[u]$A by C_EX 2
4. <u>$A -> <>$A by C_C 3
)"},
      {"box_comp_to_sqbox", "(iv) []~A -> [u]A", {}, "[]~$A -> [u]$A", Theory::AML, R"(
1. []~$A -> [u]~$A by AX_S
2. []~$A -> [u]$A by SQ_EX 1
)"},
      {"diamond_diamond", "(v) <><>A -> <>A", {}, "<><>$A -> <>$A", Theory::AML, R"(
1. []~$A -> [][]~$A by AX_4
2. []~$A -> ~~[][]~$A by C_EX 1
3. ~[][]~$A -> <>$A by C_C 2
4. <><>$A -> <>$A by C_EX 3
)"},
      {"diamond_bicont", "(vi) <><u>A -> <u>A", {}, "<><u>$A -> <u>$A", Theory::AML, R"(
1. []$A -> [u]$A by AX_S
2. [][]$A -> [][u]$A by K 1
3. []$A -> [][]$A by AX_4
4. []$A -> [][u]$A by UNIV_T 3 2
5. []~$A -> [u]~$A by AX_S
6. []~$A -> [u]$A by SQ_EX 5
7. [][]~$A -> [][u]$A by K 6
8. []~$A -> [][]~$A by AX_4
9. []~$A -> [][u]$A by UNIV_T 8 7
10. [u]$A -> [][u]$A by SQ_I 4 9
11. [u]$A -> ~~[]~~[u]$A by C_EX 10
12. <><u>$A -> <u>$A by C_C 11
)", Rule::SQ_I},
      {"diamond_box", "(vii) <>[]A -> <>A", {}, "<>[]$A -> <>$A", Theory::AML, R"(
1. []$A -> $A by AX_T
2. []$A -> ~~$A by C_EX 1
3. ~$A -> ~[]$A by C_C 2
4. []~$A -> []~[]$A by K 3
5. []~$A -> ~~[]~[]$A by C_EX 4
6. <>[]$A -> <>$A by C_C 5
)"},
      {"bicont_ex_pred", "transition: X -> <u>A gives X -> <u>~A", {"$X -> <u>$A"},
       "$X -> <u>~$A", Theory::AML, R"(
1. $X -> <u>$A by HYP
2. $X -> <u>~$A by SQ_EX 1
)"},
      {"bicont_ex_pred_back", "transition: X -> <u>~A gives X -> <u>A", {"$X -> <u>~$A"},
       "$X -> <u>$A", Theory::AML, R"(
1. $X -> <u>~$A by HYP
2. $X -> <u>$A by SQ_EX 1
)"},
      {"bicont_ex_subj", "transition: <u>A -> X gives <u>~A -> X", {"<u>$A -> $X"},
       "<u>~$A -> $X", Theory::AML, R"(
1. <u>$A -> $X by HYP
2. <u>~$A -> $X by SQ_EX 1
)"},
      {"bicont_ex_subj_back", "transition: <u>~A -> X gives <u>A -> X", {"<u>~$A -> $X"},
       "<u>$A -> $X", Theory::AML, R"(
1. <u>~$A -> $X by HYP
2. <u>$A -> $X by SQ_EX 1
)"},
      {"bicont_ex_part_pred", "transition: X ~> <u>A gives X ~> <u>~A", {"$X ~> <u>$A"},
       "$X ~> <u>~$A", Theory::AML, R"(
1. $X ~> <u>$A by HYP
2. $X ~> <u>~$A by SQ_EX 1
)"},
      {"bicont_ex_part_pred_back", "transition: X ~> <u>~A gives X ~> <u>A", {"$X ~> <u>~$A"},
       "$X ~> <u>$A", Theory::AML, R"(
1. $X ~> <u>~$A by HYP
2. $X ~> <u>$A by SQ_EX 1
)"},
      {"star_diamond", "*A gives *<>A", {"*$A"}, "*<>$A", Theory::AML, R"(
1. *$A by HYP
2. $A -> <>$A by LEMMA(diamond_intro)
3. $A ~> <>$A by PART_T 1 2
4. <>$A ~> $A by PART_C 3
5. *<>$A by PART_T 4 2
)"},
      {"star_box", "*[]A gives *A", {"*[]$A"}, "*$A", Theory::AML, R"(
1. *[]$A by HYP
2. []$A -> $A by AX_T
3. []$A ~> $A by PART_T 1 2
4. $A ~> []$A by PART_C 3
5. *$A by PART_T 4 2
)"},
      {"weakening", "*A and A -> B give A ~> B", {"*$A", "$A -> $B"}, "$A ~> $B", Theory::AML, R"(
1. *$A by HYP
2. $A -> $B by HYP
3. $A ~> $B by PART_T 1 2
)"},
      {"bicont_intro", "A -> <>B and A -> <>~B give A -> <u>B", {"$A -> <>$B", "$A -> <>~$B"},
       "$A -> <u>$B", Theory::AML, R"(
1. $A -> <>$B by HYP
2. $A -> <>~$B by HYP
3. $A -> ~[]$B by C_EX 2
4. []$B -> ~$A by C_C 3
5. []~$B -> ~$A by C_C 1
6. [u]$B -> ~$A by SQ_I 4 5
7. $A -> <u>$B by C_C 6
)"},
      {"diamond_t", "A -> B gives <>A -> <>B", {"$A -> $B"}, "<>$A -> <>$B", Theory::AML, R"(
1. $A -> $B by HYP
2. $A -> ~~$B by C_EX 1
3. ~$B -> ~$A by C_C 2
4. []~$B -> []~$A by K 3
5. []~$B -> ~~[]~$A by C_EX 4
6. <>$A -> <>$B by C_C 5
)"},
      {"diamond_lift", "A -> <>B gives <>A -> <>B", {"$A -> <>$B"}, "<>$A -> <>$B", Theory::AML, R"(
1. $A -> <>$B by HYP
2. <>$A -> <><>$B by LEMMA(diamond_t) 1
3. <><>$B -> <>$B by LEMMA(diamond_diamond)
4. <>$A -> <>$B by UNIV_T 2 3
)"},
      {"part_k", "A ~> B gives <>A ~> <>B", {"$A ~> $B"}, "<>$A ~> <>$B", Theory::AML, R"(
1. $A ~> $B by HYP
2. $B -> <>$B by LEMMA(diamond_intro)
3. $A ~> <>$B by PART_T 1 2
4. <>$B ~> $A by PART_C 3
5. $A -> <>$A by LEMMA(diamond_intro)
6. <>$B ~> <>$A by PART_T 4 5
7. <>$A ~> <>$B by PART_C 6
)"},
      {"box_lift", "A -> []B gives []A -> []B", {"$A -> []$B"}, "[]$A -> []$B", Theory::AML, R"(
1. $A -> []$B by HYP
2. []$A -> [][]$B by K 1
3. [][]$B -> []$B by AX_T
4. []$A -> []$B by UNIV_T 2 3
)"},
      {"c1_fwd", "c1: C -> <u>~B gives [u]~B -> ~C", {"$C -> <u>~$B"}, "[u]~$B -> ~$C",
       Theory::AML, R"(
1. $C -> <u>~$B by HYP
2. [u]~$B -> ~$C by C_C 1
)"},
      {"c1_bwd", "c1: [u]~B -> ~C gives C -> <u>~B", {"[u]~$B -> ~$C"}, "$C -> <u>~$B",
       Theory::AML, R"(
1. [u]~$B -> ~$C by HYP
2. $C -> <u>~$B by C_C 1
)"},
      {"c2_fwd", "c2: C -> <>~B gives []B -> ~C", {"$C -> <>~$B"}, "[]$B -> ~$C", Theory::AML, R"(
1. $C -> <>~$B by HYP
2. $C -> ~[]$B by C_EX 1
3. []$B -> ~$C by C_C 2
)"},
      {"c2_bwd", "c2: []B -> ~C gives C -> <>~B", {"[]$B -> ~$C"}, "$C -> <>~$B", Theory::AML, R"(
1. []$B -> ~$C by HYP
2. $C -> ~[]$B by C_C 1
3. $C -> <>~$B by C_EX 2
)"},
      {"c3_fwd", "c3: C -> []~B gives <>B -> ~C", {"$C -> []~$B"}, "<>$B -> ~$C", Theory::AML, R"(
1. $C -> []~$B by HYP
2. $C -> ~~[]~$B by C_EX 1
3. <>$B -> ~$C by C_C 2
)"},
      {"c3_bwd", "c3: <>B -> ~C gives C -> []~B", {"<>$B -> ~$C"}, "$C -> []~$B", Theory::AML, R"(
1. <>$B -> ~$C by HYP
2. $C -> ~<>$B by C_C 1
3. $C -> []~$B by C_EX 2
)"},
      {"c4_fwd", "c4: C -> [u]~B gives <u>~B -> ~C", {"$C -> [u]~$B"}, "<u>~$B -> ~$C",
       Theory::AML, R"(
1. $C -> [u]~$B by HYP
2. $C -> ~~[u]~$B by C_EX 1
3. <u>~$B -> ~$C by C_C 2
)"},
      {"c4_bwd", "c4: <u>~B -> ~C gives C -> [u]~B", {"<u>~$B -> ~$C"}, "$C -> [u]~$B",
       Theory::AML, R"(
1. <u>~$B -> ~$C by HYP
2. $C -> ~<u>~$B by C_C 1
3. $C -> [u]~$B by C_EX 2
)"},
      {"nec_neg_conversion", "C -> []~B gives B -> []~C (needs the S5 axiom)", {"$C -> []~$B"},
       "$B -> []~$C", Theory::AML_S5, R"(
1. $C -> []~$B by HYP
2. <>$B -> ~$C by LEMMA(c3_fwd) 1
3. []<>$B -> []~$C by K 2
4. $B -> <>$B by LEMMA(diamond_intro)
5. <>$B -> []<>$B by AX_S5
6. $B -> []<>$B by UNIV_T 4 5
7. $B -> []~$C by UNIV_T 6 3
)"},
  };
  return specs;
}

const ParseOptions kPattern{true};

}  // namespace

LemmaLibrary shipped_library() {
  LemmaLibrary lib;
  for (const auto& s : shipped_specs()) {
    std::vector<Formula> prem;
    for (const char* p : s.premises) prem.push_back(parse_formula(p, kPattern));
    lib.add(LemmaEntry{s.name, std::move(prem), parse_formula(s.conclusion, kPattern), s.theory,
                       parse_proof(s.proof, kPattern), s.description, s.requires_rule});
  }
  return lib;
}

const LemmaLibrary& default_library() {
  static const LemmaLibrary lib = [] {
    LemmaLibrary l = shipped_library();
    LibraryReport r = verify_library(l, Theory::AML_S5);
    if (!r.usable()) throw std::logic_error("shipped lemma library fails verification:\n" + render_report(r));
    return l;
  }();
  return lib;
}

// ---------------------------------------------------------------------------
// Files

LemmaLibrary load_library(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("cannot open " + (dir / "manifest.json").string());
  nlohmann::json manifest = nlohmann::json::parse(in);
  LemmaLibrary lib;
  for (const auto& j : manifest.at("entries")) {
    std::vector<Formula> prem;
    for (const auto& p : j.at("premises")) prem.push_back(parse_formula(p.get<std::string>(), kPattern));
    std::ifstream pf(dir / j.at("proof").get<std::string>());
    if (!pf) throw std::runtime_error("cannot open proof for lemma " + j.at("name").get<std::string>());
    std::stringstream buf;
    buf << pf.rdbuf();
    std::optional<Rule> req;
    if (j.contains("requires_rule")) req = rule_from_name(j.at("requires_rule").get<std::string>());
    lib.add(LemmaEntry{j.at("name").get<std::string>(), std::move(prem),
                       parse_formula(j.at("conclusion").get<std::string>(), kPattern),
                       parse_theory(j.at("theory").get<std::string>()), parse_proof(buf.str(), kPattern),
                       j.value("description", ""), req});
  }
  return lib;
}

void save_library(const LemmaLibrary& library, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : library.entries()) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["description"] = e.description;
    j["premises"] = nlohmann::ordered_json::array();
    for (const auto& p : e.premises) j["premises"].push_back(render(p));
    j["conclusion"] = render(e.conclusion);
    j["theory"] = std::string(theory_name(e.theory));
    j["proof"] = e.name + ".prf";
    if (e.requires_rule) j["requires_rule"] = std::string(rule_name(*e.requires_rule));
    manifest["entries"].push_back(j);
    std::ofstream(dir / (e.name + ".prf")) << render_proof(e.proof);
  }
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Inlining

ProofScript expand_lemmas(const ProofScript& script, const LemmaLibrary& library) {
  ProofScript out;
  std::map<int, int> renumber;
  int next = 1;
  auto remap = [&](const std::vector<int>& refs) {
    std::vector<int> r;
    for (int x : refs) r.push_back(renumber.at(x));
    return r;
  };
  for (const auto& step : script.steps) {
    if (step.why.rule != Rule::LEMMA) {
      Justification why = step.why;
      why.premises = remap(step.why.premises);
      why.discharges = remap(step.why.discharges);
      out.steps.push_back(ProofStep{next, step.formula, why, step.comment});
      renumber[step.line] = next++;
      continue;
    }
    const LemmaEntry* e = library.find(step.why.lemma);
    if (!e) throw std::invalid_argument("unknown lemma '" + step.why.lemma + "'");
    Substitution sigma;
    std::vector<Formula> caller_premises;
    for (int ref : step.why.premises) {
      auto it = std::find_if(script.steps.begin(), script.steps.end(),
                             [&](const ProofStep& s) { return s.line == ref; });
      caller_premises.push_back(it->formula);
    }
    for (std::size_t i = 0; i < e->premises.size() && i < caller_premises.size(); ++i)
      match_pattern(e->premises[i], caller_premises[i], sigma);
    match_pattern(e->conclusion, step.formula, sigma);

    ProofScript body = expand_lemmas(e->proof, library);
    std::set<int> discharged;
    for (const auto& s : body.steps)
      for (int d : s.why.discharges) discharged.insert(d);

    std::map<int, int> local;
    for (std::size_t k = 0; k < body.steps.size(); ++k) {
      const ProofStep& s = body.steps[k];
      Formula f = substitute(s.formula, sigma);
      if (s.why.rule == Rule::HYP && !discharged.count(s.line)) {
        auto pi = std::find_if(e->premises.begin(), e->premises.end(),
                               [&](const Formula& p) { return substitute(p, sigma) == f; });
        if (pi != e->premises.end()) {
          local[s.line] = renumber.at(step.why.premises[pi - e->premises.begin()]);
          if (k + 1 == body.steps.size()) renumber[step.line] = local[s.line];
          continue;
        }
      }
      Justification why = s.why;
      for (int& x : why.premises) x = local.at(x);
      for (int& x : why.discharges) x = local.at(x);
      out.steps.push_back(ProofStep{next, f, why, ""});
      local[s.line] = next++;
    }
    renumber[step.line] = local.at(body.steps.back().line);
  }
  return out;
}

}  // namespace aml
