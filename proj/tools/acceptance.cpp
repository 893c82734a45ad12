// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "amlkit/library.hpp"
#include "amlkit/modelfind.hpp"
#include "amlkit/proof.hpp"
#include "amlkit/prover.hpp"
#include "amlkit/semantics.hpp"
#include "amlkit/syllogistics.hpp"
#include "amlkit/syntax.hpp"

using namespace aml;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr int kMoodDepth = 8;
constexpr int kSchemaDepth = 12;
constexpr std::size_t kRefuteIndividuals = 2, kRefuteValuations = 4;
constexpr std::size_t kParticularIndividuals = 2, kParticularValuations = 2;
constexpr int kFuzzModels = 10000;
constexpr std::size_t kFuzzIndividuals = 3, kFuzzValuations = 3;
constexpr std::size_t kCatalogMinEntries = 90;
constexpr double kCatalogSeconds = 300;
constexpr unsigned kManyJobs = 8;

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> problems;
};

struct Ctx {
  fs::path data;
  unsigned jobs = 1;
  bool verbose = false;
  // Scripts found while checking criteria 1 and 3, re-used by the fuzz.
  std::vector<std::pair<std::string, ProofScript>> found_proofs;
};

Formula F(const std::string& s) { return parse_formula(s); }

std::vector<Formula> Fs(const std::vector<std::string>& xs) {
  std::vector<Formula> out;
  for (const auto& x : xs) out.push_back(F(x));
  return out;
}

SearchConfig search(int depth, Theory theory) {
  SearchConfig c;
  c.max_depth = depth;
  c.theory = theory;
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1 ----

struct Mood {
  const char* text;
  Figure figure;
  bool swapped;
};

const std::vector<Mood>& assertoric_moods() {
  static const std::vector<Mood> moods{
      {"AAA", Figure::First, false},  {"EAE", Figure::First, false},  {"AII", Figure::First, false},
      {"EIO", Figure::First, false},  {"EAE", Figure::Second, false}, {"AEE", Figure::Second, false},
      {"EIO", Figure::Second, true},  {"AOO", Figure::Second, true},  {"*AAI", Figure::Third, false},
      {"IAI", Figure::Third, false},  {"AII", Figure::Third, false},  {"*EAO", Figure::Third, true},
      {"EIO", Figure::Third, true},   {"OAO", Figure::Third, true}};
  return moods;
}

Outcome assertoric_codification(Ctx& ctx) {
  Outcome o;
  int valid = 0, worst = 0;
  for (const Mood& m : assertoric_moods()) {
    Syllogism s = interpret_ross(m.text, m.figure, {}, m.swapped);
    ProveResult r = prove_bounded(s.all_premises(), s.conclusion, search(kMoodDepth, Theory::AML));
    bool star_ok = std::string(m.text)[0] != '*' ||
                   std::find(s.star_premises.begin(), s.star_premises.end(), F("*C")) != s.star_premises.end();
    if (r.proof && star_ok) {
      ++valid;
      worst = std::max(worst, r.depth_reached);
      ctx.found_proofs.emplace_back(std::string(m.text) + " " + std::string(figure_name(m.figure)), *r.proof);
    } else {
      o.problems.push_back(std::string(m.text) + " (" + std::string(figure_name(m.figure)) + "): " +
                           (star_ok ? r.reason : "star missing"));
    }
  }
  o.pass = valid == 14;
  o.summary = std::to_string(valid) + "/14 moods valid, max depth " + std::to_string(worst) + " (bound " +
              std::to_string(kMoodDepth) + ")";
  return o;
}

// ---- 2 ----

Outcome derived_library(Ctx&) {
  Outcome o;
  LemmaLibrary aml = shipped_library();
  LibraryReport r = verify_library(aml, Theory::AML);
  int passed = 0, expected = 0;
  for (const auto& e : r.entries) {
    if (e.name == "nec_neg_conversion") continue;
    ++expected;
    if (e.status == EntryStatus::Pass) ++passed;
    else o.problems.push_back(e.name + ": " + e.message);
  }
  LemmaLibrary s5 = shipped_library();
  LibraryReport r5 = verify_library(s5, Theory::AML_S5);
  bool lemma26 = false;
  for (const auto& e : r5.entries)
    if (e.name == "nec_neg_conversion") lemma26 = e.status == EntryStatus::Pass;
  if (!lemma26) o.problems.push_back("necessary negative conversion fails under AML_S5");
  bool sq = false;
  if (const LemmaEntry* vi = aml.find("diamond_bicont"))
    for (const auto& step : vi->proof.steps) sq = sq || step.why.rule == Rule::SQ_I;
  if (!sq) o.problems.push_back("<><u>A -> <u>A does not use SQ_I");
  o.pass = passed == expected && lemma26 && sq && expected >= 29;
  o.summary = std::to_string(passed) + "/" + std::to_string(expected) + " entries pass under AML; " +
              "necessary negative conversion under AML_S5: " + (lemma26 ? "pass" : "FAIL") +
              "; <><u>A -> <u>A uses SQ_I: " + (sq ? "yes" : "no");
  return o;
}

// ---- 3 ----

struct Schema {
  std::string label;
  Theory theory;
  std::vector<std::string> stars, premises;
  std::string conclusion;
};

std::vector<Schema> labelled_validities() {
  const Theory A = Theory::AML, S = Theory::AML_S5;
  std::vector<Schema> out;
  // A circle copula stands for both arrows.
  auto both = [&](const std::string& label, Theory t, std::vector<std::string> ps, std::string c) {
    auto sub = [](std::string s, const char* arrow) {
      for (std::size_t p; (p = s.find(" o ")) != std::string::npos;) s.replace(p, 3, arrow);
      return s;
    };
    for (const char* arrow : {" -> ", " ~> "}) {
      std::vector<std::string> qs;
      for (const auto& p : ps) qs.push_back(sub(p, arrow));
      out.push_back({label + (arrow[1] == '-' ? " ->" : " ~>"), t, {}, qs, sub(c, arrow)});
    }
  };
  both("A1", A, {"B -> []A", "C o []B"}, "C o []A");
  both("A2", A, {"B -> []A", "C o B"}, "C o []A");
  out.push_back({"I", A, {}, {"B -> A", "C -> []B"}, "C -> []A"});
  both("A3", A, {"B -> <u>A", "C o <u>B"}, "C o <u>A");
  both("A4", A, {"B -> <>A", "C o <>B"}, "C o <>A");
  both("A5", A, {"B -> A", "C o <u>B"}, "C o <>A");
  both("A6", A, {"B -> <u>A", "C o B"}, "C o <u>A");
  both("A7", A, {"B -> []A", "C o <u>B"}, "C o <>A");
  both("A8", A, {"B -> <u>A", "C o []B"}, "C o <u>A");
  out.push_back({"B1", A, {}, {"B -> []A", "C -> []~A"}, "B -> []~C"});
  out.push_back({"B2", A, {}, {"B -> []~A", "C -> []A"}, "B -> []~C"});
  out.push_back({"B3a", S, {}, {"B -> []~A", "C -> A"}, "B -> []~C"});
  out.push_back({"B3b", S, {}, {"B -> []~A", "C ~> A"}, "C ~> []~B"});
  out.push_back({"B4", S, {}, {"B -> A", "C -> []~A"}, "B -> []~C"});
  both("D1", A, {"B o <>A", "C -> ~A"}, "B o <>~C");
  both("D2", A, {"B o <u>A", "C -> ~A"}, "B o <>~C");
  both("D4", A, {"B -> ~A", "C o <>A"}, "C o <>~B");
  out.push_back({"E1", A, {}, {"B -> <u>A", "C -> []~A"}, "B -> ~C"});
  both("E2", A, {"B -> []~A", "C o <u>A"}, "C o ~B");
  out.push_back({"E^nA^cE", S, {}, {"B -> []~A", "C -> <u>B"}, "C -> ~A"});
  out.push_back({"E^nI^cO", S, {}, {"B -> []~A", "C ~> <u>B"}, "C ~> ~A"});
  out.push_back({"C1", A, {"*C"}, {"C -> <>A", "C -> <>B"}, "<>A ~> <>B"});
  out.push_back({"C2", A, {"*C"}, {"C -> <>~A", "C -> <u>~B"}, "<>B ~> <>~A"});
  out.push_back({"S1", A, {"*C", "*<u>C"}, {"C -> A", "<u>C -> <u>B"}, "<>A ~> <u>B"});
  out.push_back({"S2", A, {"*C", "*<u>C"}, {"C -> A", "<u>C -> <u>B"}, "<>A ~> <>B"});
  out.push_back({"S3", A, {"*C"}, {"C -> A", "C -> <>B"}, "A ~> <>B"});
  out.push_back({"S4", A, {"*C", "*<u>C"}, {"<u>C -> <u>~A", "C -> B"}, "<>B ~> <u>~A"});
  out.push_back({"S5", A, {"*C"}, {"C -> <>~A", "C -> B"}, "B ~> <>~A"});
  out.push_back({"S6", A, {"*C"}, {"C -> A", "C -> <u>~B"}, "A ~> <u>B"});
  out.push_back({"S7", A, {}, {"C ~> <>~A", "C -> B"}, "B ~> <>~A"});
  out.push_back({"N1", A, {"*C", "*<u>C"}, {"C -> []A", "<u>C -> <u>B"}, "<>A ~> <u>B"});
  out.push_back({"N2", A, {"*C"}, {"C -> []A", "C -> <>B"}, "A ~> <>B"});
  out.push_back({"N3", A, {"*C"}, {"C -> []~A", "C -> <>B"}, "<>B ~> <>~A"});
  out.push_back({"N4", A, {"*C"}, {"C -> <>~A", "C -> []B"}, "B ~> <>~A"});
  out.push_back({"N5", A, {"*C", "*<u>C"}, {"<u>C -> <u>~A", "C -> []B"}, "<>B ~> <u>~A"});
  out.push_back({"N6", A, {}, {"C ~> []A", "<>C -> <u>B"}, "<>A ~> <u>B"});
  out.push_back({"N7", A, {}, {"C ~> []A", "C -> <>B"}, "A ~> <>B"});
  out.push_back({"necessary negative conversion", S, {}, {"C -> []~B"}, "B -> []~C"});
  return out;
}

Outcome validity_schemas(Ctx& ctx) {
  Outcome o;
  auto schemas = labelled_validities();
  int ok = 0, worst = 0;
  std::vector<std::string> also_aml;
  for (const Schema& s : schemas) {
    std::vector<Formula> ps = Fs(s.stars);
    for (const auto& p : Fs(s.premises)) ps.push_back(p);
    ProveResult r = prove_bounded(ps, F(s.conclusion), search(kSchemaDepth, s.theory));
    if (r.proof) {
      ++ok;
      worst = std::max(worst, r.depth_reached);
      ctx.found_proofs.emplace_back(s.label, *r.proof);
      if (s.theory == Theory::AML_S5 &&
          prove_bounded(ps, F(s.conclusion), search(kSchemaDepth, Theory::AML)).proof)
        also_aml.push_back(s.label);
    } else {
      o.problems.push_back(s.label + " under " + std::string(theory_name(s.theory)) + ": " + r.reason);
    }
  }
  o.pass = ok == static_cast<int>(schemas.size());
  o.summary = std::to_string(ok) + "/" + std::to_string(schemas.size()) + " labelled validities proved, max depth " +
              std::to_string(worst) + " (bound " + std::to_string(kSchemaDepth) + ")";
  if (!also_aml.empty()) {
    o.summary += "; declared AML_S5 but also AML-provable:";
    for (const auto& l : also_aml) o.summary += " " + l;
  }
  return o;
}

// ---- 4 ----

Model build(std::vector<std::string> individuals,
            const std::vector<std::map<std::string, std::vector<std::string>>>& valuations) {
  Model m(std::move(individuals), valuations.size());
  for (std::size_t v = 0; v < valuations.size(); ++v)
    for (const auto& [atom, members] : valuations[v]) m.set_atom(v, atom, m.individual_set(members));
  return m;
}

Outcome text_models(Ctx& ctx) {
  Outcome o;
  struct Fixture {
    std::string file;
    Model expected;
    std::vector<std::string> premises;
    std::vector<std::pair<std::string, Entailment>> checks;
  };
  const auto U = Entailment::Upheld, V = Entailment::Violated;
  std::vector<Fixture> fixtures{
      {"models/snow.model.json",
       build({"m", "s"}, {{{"Man", {"m"}}, {"Snow", {"s"}}, {"White", {"s"}}},
                          {{"Man", {"m"}}, {"Snow", {"s"}}, {"White", {"s", "m"}}}}),
       {"Man -> <u>~White"},
       {{"Man -> <u>~White", U}, {"White -> <u>~Man", V}}},
      {"models/horse.model.json",
       build({"m", "h"}, {{{"Man", {"m"}}, {"Horse", {"h"}}, {"White", {"m", "h"}}},
                          {{"Man", {"m"}}, {"Horse", {"h"}}, {"White", {"m"}}},
                          {{"Man", {"m"}}, {"Horse", {"h"}}, {"White", {"h"}}},
                          {{"Man", {"m"}}, {"Horse", {"h"}}, {"White", {}}}}),
       {"Man -> <u>White", "Horse -> <u>White"},
       {{"Man -> <u>White", U}, {"Horse -> <u>White", U}, {"Man -> <u>Horse", V}}},
      {"models/a11.model.json",
       build({"x", "y"}, {{{"A", {"x"}}, {"B", {"x", "y"}}, {"C", {"y"}}},
                          {{"A", {"y"}}, {"B", {"x", "y"}}, {"C", {"x"}}}}),
       {"C -> ~A", "C -> []B"},
       {{"C -> ~A", U}, {"C -> []B", U}, {"B ~> []~A", V}, {"A ~> []~B", V}}},
  };
  int ok = 0, total = 0;
  for (const auto& fx : fixtures) {
    ++total;
    Model m = load_model(ctx.data / fx.file);
    if (!(m == fx.expected)) {
      o.problems.push_back(fx.file + " differs from the model in the text");
      continue;
    }
    bool good = true;
    for (const auto& [concl, want] : fx.checks) {
      Entailment got = check_entailment_on_model(m, Fs(fx.premises), F(concl));
      if (got != want) {
        good = false;
        o.problems.push_back(fx.file + ": " + concl + " is " + std::string(entailment_name(got)));
      }
    }
    ok += good;
  }
  o.pass = ok == total;
  o.summary = std::to_string(ok) + "/" + std::to_string(total) + " models bit-exact with all eval fixtures";
  return o;
}

// ---- 5 ----

struct RefutationCase {
  std::string label;
  Syllogism s;
};

std::vector<RefutationCase> refutation_cases() {
  std::vector<RefutationCase> out;
  auto mood = [&](const std::string& label, const char* m, Figure f, bool sw = false) {
    out.push_back({label, interpret_ross(m, f, {}, sw)});
  };
  auto expl = [&](const std::string& label, Figure f, std::vector<std::string> stars, std::vector<std::string> ps,
                  std::string c) { out.push_back({label, explicit_syllogism(f, Fs(ps), Fs(stars), F(c))}); };
  expl("contingent E conversion", Figure::First, {}, {"A -> <u>~B"}, "B -> <u>~A");
  mood("weak A^bl A^n A^n", "A^bl A^n A^n", Figure::First);
  mood("weak E^bl A^n E^n", "E^bl A^n E^n", Figure::First);
  mood("weak A^bl I^n I^n", "A^bl I^n I^n", Figure::First);
  mood("weak E^bl I^n O^n", "E^bl I^n O^n", Figure::First);
  mood("weak A^n E^bl E^n", "A^n E^bl E^n", Figure::Second);
  mood("weak A^n O^bl O^n", "A^n O^bl O^n", Figure::Second, true);
  mood("weak A^bl O^n O^n", "A^bl O^n O^n", Figure::Second, true);
  expl("two contingent2, second figure", Figure::Second, {}, {"B -> <u>A", "C -> <u>A"}, "B -> <u>C");
  for (auto [m, sw] : std::vector<std::pair<const char*, bool>>{
           {"A^bl E^c E", true}, {"E^c A^bl E", false}, {"A^bl A^c E", true}, {"A^c A^bl E", false},
           {"A^bl E^c E^p", true}, {"E^c A^bl E^p", false}, {"A^bl A^c E^p", true}, {"A^c A^bl E^p", false}})
    mood(std::string("weak ") + m + (sw ? " (swapped)" : ""), m, Figure::Second, sw);
  expl("weak A^cE^n pair", Figure::Third, {"*C"}, {"?(C -> A)", "C -> []~B"}, "<>A -> <>~B");
  return out;
}

std::string refutation_report(unsigned jobs, Outcome* o) {
  std::ostringstream rep;
  int ok = 0, total = 0;
  for (const auto& c : refutation_cases()) {
    ++total;
    SearchBounds b{kRefuteIndividuals, kRefuteValuations, atoms_needed(c.s.all_premises(), c.s.conclusion)};
    SearchOutcome r = find_countermodel(c.s.all_premises(), c.s.conclusion, b, jobs);
    rep << c.label << "\t";
    if (!r.model) {
      rep << "none\n";
      if (o) o->problems.push_back(c.label + ": no countermodel within bounds");
      continue;
    }
    Entailment e = check_entailment_on_model(*r.model, c.s.all_premises(), c.s.conclusion);
    rep << r.individuals << "x" << r.valuations << " " << entailment_name(e) << "\n" << model_to_json(*r.model) << "\n";
    if (e == Entailment::Violated) ++ok;
    else if (o) o->problems.push_back(c.label + ": witness does not re-verify");
  }
  if (o) {
    o->pass = ok == total;
    o->summary = std::to_string(ok) + "/" + std::to_string(total) + " refuted within (" +
                 std::to_string(kRefuteIndividuals) + "," + std::to_string(kRefuteValuations) +
                 "), every witness re-verified";
  }
  return rep.str();
}

Outcome automated_refutation(Ctx& ctx) {
  Outcome o;
  refutation_report(ctx.jobs, &o);
  return o;
}

// ---- 6 ----

Outcome no_syllogism_lemmas(Ctx&) {
  Outcome o;
  int refuted = 0, total = 0;
  SearchBounds b{kParticularIndividuals, kParticularValuations, {}};
  auto try_all = [&](char p1, char p2, Figure f, bool both_orders) {
    for (char c : std::string("AEIO"))
      for (bool sw : {false, true}) {
        if (sw && !both_orders) continue;
        ++total;
        Syllogism s = build_syllogism(f, mood_to_predication(p1, ""), mood_to_predication(p2, ""),
                                      mood_to_predication(c, ""), false, sw);
        SearchOutcome w = find_countermodel(s.all_premises(), s.conclusion,
                                            SearchBounds{b.max_individuals, b.max_valuations,
                                                         atoms_needed(s.all_premises(), s.conclusion)});
        if (w.model && check_entailment_on_model(*w.model, s.all_premises(), s.conclusion) == Entailment::Violated)
          ++refuted;
        else
          o.problems.push_back(render(s.assembled) + " not refuted");
      }
  };
  for (char p1 : std::string("IO"))
    for (char p2 : std::string("IO"))
      for (Figure f : {Figure::First, Figure::Second, Figure::Third}) try_all(p1, p2, f, f != Figure::First);
  int particular_pairs = total;
  for (char p1 : std::string("IO"))
    for (char p2 : std::string("AE")) try_all(p1, p2, Figure::First, false);
  o.pass = refuted == total;
  o.summary = std::to_string(refuted) + "/" + std::to_string(total) + " refuted within (" +
              std::to_string(kParticularIndividuals) + "," + std::to_string(kParticularValuations) + "): " +
              std::to_string(particular_pairs) + " particular-particular, " + std::to_string(total - particular_pairs) +
              " more with a particular first-figure major";
  return o;
}

// ---- 7 ----

ProofScript read_script(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_proof(ss.str(), ParseOptions{true});
}

// Metavariables become the atoms A, B, C in order of appearance.
ProofScript ground(const ProofScript& s) {
  Substitution sigma;
  std::vector<std::string> atoms;
  for (const auto& step : s.steps) atoms_of(step.formula, atoms);
  for (const auto& a : atoms)
    if (is_metavariable(a) && !sigma.count(a)) {
      std::string name(1, static_cast<char>('A' + sigma.size()));
      sigma.emplace(a, Term::atom(name));
    }
  ProofScript out = s;
  for (auto& step : out.steps) step.formula = substitute(step.formula, sigma);
  return out;
}

struct Claim {
  std::string source;
  std::vector<Formula> premises;
  Formula conclusion;
};

Outcome soundness_fuzz(Ctx& ctx) {
  Outcome o;
  std::vector<std::pair<std::string, ProofScript>> scripts;
  for (const auto& entry : fs::directory_iterator(ctx.data / "proofs"))
    if (entry.path().extension() == ".prf") scripts.emplace_back(entry.path().filename().string(), read_script(entry.path()));
  for (const auto& entry : fs::directory_iterator(ctx.data / "library"))
    if (entry.path().extension() == ".prf")
      scripts.emplace_back("library/" + entry.path().filename().string(), ground(read_script(entry.path())));
  std::sort(scripts.begin(), scripts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& fp : ctx.found_proofs) scripts.push_back(fp);

  // Every prefix of an accepted script is itself a derivation.
  std::vector<Claim> claims;
  std::set<std::string> atoms_seen;
  for (const auto& [name, script] : scripts) {
    CheckResult whole = check_proof(script, Theory::AML_S5, &default_library());
    if (!whole.accepted) {
      o.problems.push_back(name + " rejected: " + whole.message);
      continue;
    }
    ProofScript flat = expand_lemmas(script, default_library());
    for (std::size_t k = 1; k <= flat.steps.size(); ++k) {
      ProofScript prefix;
      prefix.steps.assign(flat.steps.begin(), flat.steps.begin() + k);
      CheckResult r = check_proof(prefix, Theory::AML_S5);
      if (!r.accepted) {
        o.problems.push_back(name + " prefix " + std::to_string(k) + " rejected: " + r.message);
        continue;
      }
      claims.push_back({name, r.open_premises, *r.conclusion});
      std::vector<std::string> as = atoms_needed(r.open_premises, *r.conclusion);
      atoms_seen.insert(as.begin(), as.end());
    }
  }
  if (atoms_seen.size() > 3) o.problems.push_back("shipped proofs use more than three atoms");
  std::vector<std::string> atoms(atoms_seen.begin(), atoms_seen.end());

  std::mt19937_64 rng(20240601);
  std::size_t violated = 0, upheld = 0, vacuous = 0;
  for (int n = 0; n < kFuzzModels; ++n) {
    std::size_t ni = 1 + rng() % kFuzzIndividuals, nv = 1 + rng() % kFuzzValuations;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < ni; ++i) names.push_back("i" + std::to_string(i));
    Model m(names, nv);
    for (std::size_t v = 0; v < nv; ++v)
      for (const auto& a : atoms) m.set_atom(v, a, rng() & m.universe());
    for (const auto& c : claims) {
      Entailment e = check_entailment_on_model(m, c.premises, c.conclusion);
      if (e == Entailment::Violated) {
        if (violated++ < 5) o.problems.push_back(c.source + ": " + render(c.conclusion) + " violated");
      } else if (e == Entailment::Upheld) {
        ++upheld;
      } else {
        ++vacuous;
      }
    }
  }
  o.pass = violated == 0 && o.problems.empty();
  o.summary = std::to_string(kFuzzModels) + " models x " + std::to_string(scripts.size()) + " scripts (" +
              std::to_string(claims.size()) + " derivation prefixes): violated " + std::to_string(violated) +
              ", upheld " + std::to_string(upheld) + ", premises unsatisfied " + std::to_string(vacuous);
  return o;
}

// ---- 8 ----

std::string catalog_json(const Ctx& ctx, unsigned jobs, CatalogReport* out, double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  auto entries = load_catalog(ctx.data / "catalog.jsonl");
  CatalogOptions opts;
  opts.base_dir = ctx.data;
  opts.jobs = jobs;
  CatalogReport r = run_catalog(entries, opts);
  if (secs) *secs = seconds_since(t0);
  if (out) *out = r;
  return r.to_json();
}

Outcome catalog_run(Ctx& ctx) {
  Outcome o;
  CatalogReport r;
  double secs = 0;
  catalog_json(ctx, ctx.jobs, &r, &secs);
  for (const auto& e : r.entries)
    if (e.expected != e.computed) o.problems.push_back(e.id + ": expected " + e.expected + ", computed " + e.computed);
  o.pass = r.entries.size() >= kCatalogMinEntries && r.all_passed() && secs <= kCatalogSeconds;
  std::ostringstream s;
  s << r.entries.size() << " entries, " << r.passed << " match, " << r.failed << " mismatch, " << r.unknown
    << " unknown; " << std::fixed << std::setprecision(1) << secs << " s (bound " << kCatalogSeconds << " s)";
  o.summary = s.str();
  return o;
}

// ---- 9 ----

Outcome survey_consistency(Ctx& ctx) {
  Outcome o;
  SurveyOptions opts;
  opts.alphabet = {"", "n"};
  opts.search = search(kMoodDepth, Theory::AML);
  opts.bounds = SearchBounds{kRefuteIndividuals, kRefuteValuations, {}};
  opts.cross_check = true;
  opts.jobs = ctx.jobs;
  std::size_t valid = 0, refuted = 0, unknown = 0, collisions = 0, total = 0;
  std::set<std::string> valid_keys;
  std::vector<Syllogism> cands = survey_candidates(opts);
  // classify_checked throws on a collision; count rather than abort.
  for (const auto& s : cands) {
    ++total;
    try {
      Classification c = classify_checked(s, opts.theory, opts.search, opts.bounds, 1);
      if (c.verdict == Verdict::Valid) {
        ++valid;
        valid_keys.insert(survey_key(s));
      } else if (c.verdict == Verdict::Refuted) {
        ++refuted;
      } else {
        ++unknown;
      }
    } catch (const std::logic_error& e) {
      ++collisions;
      o.problems.push_back(e.what());
    }
  }
  std::size_t recovered = 0;
  for (const Mood& m : assertoric_moods()) {
    std::string key = survey_key(interpret_ross(m.text, m.figure, {}, m.swapped));
    if (valid_keys.count(key)) ++recovered;
    else o.problems.push_back(std::string("codified mood missing from the valid set: ") + m.text);
  }
  o.pass = collisions == 0 && recovered == assertoric_moods().size();
  o.summary = std::to_string(total) + " candidates: " + std::to_string(valid) + " valid, " + std::to_string(refuted) +
              " invalid, " + std::to_string(unknown) + " unknown, " + std::to_string(collisions) +
              " collisions; codified moods recovered " + std::to_string(recovered) + "/14";
  return o;
}

// ---- 10 ----

Outcome determinism(Ctx& ctx) {
  Outcome o;
  std::string r1 = refutation_report(1, nullptr), r8 = refutation_report(kManyJobs, nullptr);
  std::string c1 = catalog_json(ctx, 1, nullptr, nullptr), c8 = catalog_json(ctx, kManyJobs, nullptr, nullptr);
  std::string c1b = catalog_json(ctx, 1, nullptr, nullptr);
  if (r1 != r8) o.problems.push_back("refutation witnesses differ between jobs 1 and " + std::to_string(kManyJobs));
  if (c1 != c8) o.problems.push_back("catalog reports differ between jobs 1 and " + std::to_string(kManyJobs));
  if (c1 != c1b) o.problems.push_back("catalog reports differ between two runs");
  o.pass = o.problems.empty();
  o.summary = std::string("refutation witnesses ") + (r1 == r8 ? "identical" : "DIFFER") + " (" +
              std::to_string(r1.size()) + " bytes), catalog report " + (c1 == c8 && c1 == c1b ? "identical" : "DIFFERS") +
              " (" + std::to_string(c1.size()) + " bytes), jobs 1 vs " + std::to_string(kManyJobs);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amlkit acceptance suite"};
  Ctx ctx;
  std::string data = AMLKIT_DATA_DIR;
  std::vector<int> only;
  app.add_option("--data", data, "Data directory (catalog, models, proofs, library)");
  app.add_option("--only", only, "Run these criteria only")->delimiter(',');
  app.add_option("--jobs", ctx.jobs, "Worker threads for searches");
  app.add_flag("-v,--verbose", ctx.verbose, "List every problem");
  CLI11_PARSE(app, argc, argv);
  ctx.data = data;

  const std::vector<std::pair<std::string, std::function<Outcome(Ctx&)>>> criteria{
      {"assertoric codification", assertoric_codification},
      {"derived library", derived_library},
      {"labelled validities", validity_schemas},
      {"published countermodels", text_models},
      {"automated refutation", automated_refutation},
      {"no-syllogism lemmas", no_syllogism_lemmas},
      {"soundness fuzz", soundness_fuzz},
      {"catalog run", catalog_run},
      {"survey consistency", survey_consistency},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int n = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << n << "  " << criteria[i].first << ": "
              << o.summary << "  [" << std::fixed << std::setprecision(1) << seconds_since(t0) << " s]\n";
    std::size_t shown = 0;
    for (const auto& p : o.problems)
      if (ctx.verbose || (!o.pass && shown++ < 5)) std::cout << "          " << p << "\n";
    std::cout.flush();
  }
  return failed ? 1 : 0;
}
