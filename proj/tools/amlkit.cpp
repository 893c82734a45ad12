#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "amlkit/library.hpp"
#include "amlkit/modelfind.hpp"
#include "amlkit/proof.hpp"
#include "amlkit/prover.hpp"
#include "amlkit/semantics.hpp"
#include "amlkit/syllogistics.hpp"
#include "amlkit/syntax.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::vector<aml::Formula> parse_all(const std::vector<std::string>& texts) {
  std::vector<aml::Formula> out;
  for (const auto& t : texts) out.push_back(aml::parse_formula(t));
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

struct Options {
  std::string theory;
  int depth = 8;
  std::size_t max_terms = 160;
  std::size_t max_individuals = 2;
  std::size_t max_valuations = 4;
  unsigned jobs = 1;
  bool use_library = false;

  std::string proof_path;
  std::string goal;
  std::vector<std::string> premises;
  std::string model_path;
  std::string output;
  std::string expect;
  std::string formula_file;

  std::string catalog_path = "data/catalog.jsonl";
  std::string filter;
  std::string report;

  std::string alphabet = ",n";
  std::string figures = "1,2,3";
  std::string checkpoint;
  bool no_cross_check = false;
  bool no_swapped = false;

  std::string export_dir;
};

aml::Theory theory_of(const Options& o) {
  if (!o.theory.empty()) return aml::parse_theory(o.theory);
  if (const char* env = std::getenv("AMLKIT_DEFAULT_THEORY")) return aml::parse_theory(env);
  return aml::Theory::AML;
}

// One formula per line; the last is the goal or conclusion, the rest premises.
// Inline arguments replace the matching part of the file.
std::pair<std::vector<aml::Formula>, aml::Formula> formulas_of(const Options& o) {
  std::vector<std::string> premises = o.premises;
  std::string goal = o.goal;
  if (!o.formula_file.empty()) {
    std::vector<std::string> lines;
    std::istringstream in(read_file(o.formula_file));
    for (std::string line; std::getline(in, line);) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      lines.push_back(line);
    }
    if (lines.empty()) throw UsageError(o.formula_file + ": no formulas");
    if (goal.empty()) goal = lines.back();
    if (premises.empty()) premises.assign(lines.begin(), lines.end() - 1);
  }
  if (goal.empty()) throw UsageError("no goal formula (give it inline or with --from)");
  return {parse_all(premises), aml::parse_formula(goal)};
}

int run_check(const Options& o) {
  aml::ProofScript script = aml::parse_proof(read_file(o.proof_path));
  aml::CheckResult r = aml::check_proof(script, theory_of(o), &aml::default_library());
  std::cout << aml::render_report(r);
  return r.accepted ? kOk : kMismatch;
}

int run_prove(const Options& o) {
  aml::SearchConfig cfg;
  cfg.max_depth = o.depth;
  cfg.max_terms = o.max_terms;
  cfg.theory = theory_of(o);
  cfg.use_library = o.use_library;
  auto [premises, goal] = formulas_of(o);
  aml::ProveResult r = aml::prove_bounded(premises, goal, cfg);
  if (!r.proof) {
    std::cout << "not found within depth " << o.depth << " (" << r.reason << ")\n";
    return kMismatch;
  }
  std::cout << "# depth " << r.depth_reached << ", universe " << r.universe_size << " terms\n"
            << aml::render_proof(*r.proof);
  if (!o.output.empty()) write_file(o.output, aml::render_proof(*r.proof));
  return kOk;
}

int run_refute(const Options& o) {
  auto [premises, conclusion] = formulas_of(o);
  aml::SearchBounds bounds{o.max_individuals, o.max_valuations,
                           aml::atoms_needed(premises, conclusion)};
  aml::SearchOutcome r = aml::find_countermodel(premises, conclusion, bounds, o.jobs);
  if (!r.model) {
    std::cout << "no countermodel within " << o.max_individuals << " individuals, "
              << o.max_valuations << " valuations (" << r.examined << " candidates)\n";
    return kMismatch;
  }
  std::cout << "# countermodel at " << r.individuals << " individuals, " << r.valuations
            << " valuations\n"
            << aml::model_to_json(*r.model) << "\n"
            << aml::satisfaction_trace(*r.model, premises, conclusion);
  if (!o.output.empty()) aml::save_model(*r.model, o.output);
  return kOk;
}

int run_eval(const Options& o) {
  aml::Model model = aml::load_model(o.model_path);
  auto [premises, conclusion] = formulas_of(o);
  std::cout << aml::satisfaction_trace(model, premises, conclusion);
  if (o.expect.empty()) return kOk;
  aml::Entailment e = aml::check_entailment_on_model(model, premises, conclusion);
  return aml::entailment_name(e) == o.expect ? kOk : kMismatch;
}

int run_catalog(const Options& o) {
  std::vector<aml::CatalogEntry> entries =
      aml::filter_catalog(aml::load_catalog(o.catalog_path), o.filter);
  if (entries.empty()) throw UsageError("filter '" + o.filter + "' selects no entries");
  aml::CatalogOptions opts;
  opts.base_dir = std::filesystem::path(o.catalog_path).parent_path();
  opts.jobs = o.jobs;
  aml::CatalogReport report = aml::run_catalog(entries, opts);
  std::cout << report.table();
  if (!o.report.empty()) {
    write_file(o.report, report.to_json());
    write_file(o.report + ".meta.json", report.timing_json());
  }
  return report.all_passed() ? kOk : kMismatch;
}

int run_survey(const Options& o) {
  aml::SurveyOptions s;
  s.figures.clear();
  for (const auto& f : split(o.figures, ',')) s.figures.push_back(aml::parse_figure(f));
  s.alphabet = split(o.alphabet, ',');
  if (s.alphabet.empty()) s.alphabet.emplace_back();
  for (const auto& t : s.alphabet) aml::mood_to_predication('A', t);
  s.include_swapped = !o.no_swapped;
  s.theory = theory_of(o);
  s.search.max_depth = o.depth;
  s.search.max_terms = o.max_terms;
  s.bounds.max_individuals = o.max_individuals;
  s.bounds.max_valuations = o.max_valuations;
  s.cross_check = !o.no_cross_check;
  s.jobs = o.jobs;
  std::ofstream report;
  if (!o.report.empty()) {
    report.open(o.report, std::ios::binary);
    if (!report) throw UsageError("cannot write " + o.report);
  }
  std::size_t valid = 0, refuted = 0, unknown = 0;
  std::optional<std::filesystem::path> checkpoint;
  if (!o.checkpoint.empty()) checkpoint = o.checkpoint;
  aml::survey(
      s,
      [&](const aml::SurveyItem& item) {
        switch (item.result.verdict) {
          case aml::Verdict::Valid:
            ++valid;
            std::cout << "valid  " << aml::figure_name(item.syllogism.figure) << "  "
                      << item.syllogism.mood << (item.syllogism.swapped ? " (swapped)" : "")
                      << "  " << aml::render(item.syllogism.assembled) << "\n";
            break;
          case aml::Verdict::Refuted: ++refuted; break;
          case aml::Verdict::Unknown: ++unknown; break;
        }
        if (report.is_open()) report << aml::survey_line(item) << "\n";
      },
      checkpoint);
  std::cout << "candidates " << valid + refuted + unknown << ": valid " << valid << ", invalid "
            << refuted << ", unknown " << unknown << "\n";
  return kOk;
}

int run_library(const Options& o) {
  aml::LemmaLibrary lib = aml::shipped_library();
  aml::LibraryReport r = aml::verify_library(lib, theory_of(o));
  std::cout << aml::render_report(r);
  if (!o.export_dir.empty()) aml::save_library(lib, o.export_dir);
  return r.usable() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for Aristotelic modal logic."};
  app.require_subcommand(1);
  Options o;
  auto theory_flag = [&](CLI::App* cmd) {
    cmd->add_option("--theory", o.theory, "AML, AML_S5 or AML_BL (default: AMLKIT_DEFAULT_THEORY or AML)");
  };
  auto search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--depth", o.depth, "Maximum derivation height");
    cmd->add_option("--max-terms", o.max_terms, "Cap on the term universe");
  };
  auto bound_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max-individuals", o.max_individuals, "Largest |I| searched");
    cmd->add_option("--max-valuations", o.max_valuations, "Largest |V| searched");
  };
  auto jobs_flag = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", o.jobs, "Worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 256u));
  };

  auto* check = app.add_subcommand("check", "Check a .prf proof script");
  check->add_option("proof", o.proof_path, "Proof script")->required();
  theory_flag(check);

  auto* prove = app.add_subcommand("prove", "Search for a derivation");
  prove->add_option("goal", o.goal, "Goal formula");
  prove->add_option("--premise,-p", o.premises, "Premise formula (repeatable)")
      ->allow_extra_args(false);
  prove->add_option("--from", o.formula_file, "File of formulas, goal last");
  prove->add_flag("--library", o.use_library, "Allow lemma steps from the shipped library");
  prove->add_option("--output,-o", o.output, "Write the script here");
  theory_flag(prove);
  search_flags(prove);

  auto* refute = app.add_subcommand("refute", "Search for a finite countermodel");
  refute->add_option("conclusion", o.goal, "Conclusion formula");
  refute->add_option("--premise,-p", o.premises, "Premise formula (repeatable)")
      ->allow_extra_args(false);
  refute->add_option("--from", o.formula_file, "File of formulas, conclusion last");
  refute->add_option("--output,-o", o.output, "Write the model here");
  bound_flags(refute);
  jobs_flag(refute);

  auto* eval = app.add_subcommand("eval", "Evaluate formulas in a model file");
  eval->add_option("model", o.model_path, "Model file")->required();
  eval->add_option("conclusion", o.goal, "Conclusion formula");
  eval->add_option("--premise,-p", o.premises, "Premise formula (repeatable)")
      ->allow_extra_args(false);
  eval->add_option("--from", o.formula_file, "File of formulas, conclusion last");
  eval->add_option("--expect", o.expect, "Exit 1 unless the result is this")
      ->check(CLI::IsMember({"upheld", "violated", "premises_unsatisfied"}));

  auto* catalog = app.add_subcommand("catalog", "Run the catalog of claims");
  catalog->add_option("catalog", o.catalog_path, "Catalog file (JSON lines)");
  catalog->add_option("--filter", o.filter, "Comma-separated ids, chapters or chapter:figure");
  catalog->add_option("--report", o.report, "Write the JSON report here");
  jobs_flag(catalog);

  auto* survey = app.add_subcommand("survey", "Classify every syllogism over an alphabet");
  survey->add_option("--alphabet", o.alphabet,
                     "Comma-separated tags; empty is plain (default \",n\": plain and right-[])");
  survey->add_option("--figures", o.figures, "Comma-separated figures 1,2,3");
  survey->add_option("--checkpoint", o.checkpoint, "Resume from and append to this file");
  survey->add_option("--report", o.report, "Write one JSON line per candidate here");
  survey->add_flag("--no-cross-check", o.no_cross_check, "Skip the model search after a proof");
  survey->add_flag("--no-swapped", o.no_swapped, "Skip swapped conclusions");
  theory_flag(survey);
  search_flags(survey);
  bound_flags(survey);
  jobs_flag(survey);

  auto* library = app.add_subcommand("library", "Verify the shipped lemma library");
  library->add_option("--export", o.export_dir, "Write manifest and scripts to this directory");
  theory_flag(library);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (*check) return run_check(o);
    if (*prove) return run_prove(o);
    if (*refute) return run_refute(o);
    if (*eval) return run_eval(o);
    if (*catalog) return run_catalog(o);
    if (*survey) return run_survey(o);
    if (*library) return run_library(o);
  } catch (const aml::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << aml::grammar_help();
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
