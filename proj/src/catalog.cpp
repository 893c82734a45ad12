#include <chrono>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "amlkit/library.hpp"
#include "amlkit/proof.hpp"
#include "amlkit/syllogistics.hpp"
#include "amlkit/syntax.hpp"

namespace aml {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InterpretationProfile parse_profile(const json& j) {
  InterpretationProfile p;
  if (j.contains("plain")) {
    std::string plain = j.at("plain");
    if (plain != "strong" && plain != "weak")
      throw std::invalid_argument("profile.plain must be strong or weak");
    p.weak_plain = plain == "weak";
  }
  if (j.contains("c")) p.contingent = j.at("c");
  if (j.contains("p")) p.problematic = j.at("p");
  return p;
}

bool contains_all(const std::vector<Formula>& have, const std::vector<Formula>& need) {
  for (const auto& f : need)
    if (std::find(have.begin(), have.end(), f) == have.end()) return false;
  return true;
}

std::string cell(std::size_t i, std::size_t v) {
  return std::to_string(i) + "x" + std::to_string(v);
}

// Proof evidence: the shipped script must conclude the entry's conclusion from
// the entry's premises.
std::string check_script(const CatalogEntry& e, const Syllogism& s, const CatalogOptions& o,
                         bool& ok) {
  ProofScript script = parse_proof(read_text(o.base_dir / *e.proof));
  CheckResult r = check_proof(script, e.theory, &default_library());
  ok = false;
  if (!r.accepted) return "script rejected: " + r.message;
  if (!r.conclusion || !(*r.conclusion == s.conclusion))
    return "script concludes " + (r.conclusion ? render(*r.conclusion) : std::string("nothing"));
  if (!contains_all(s.all_premises(), r.open_premises)) return "script uses foreign premises";
  ok = true;
  return "script " + *e.proof + " accepted, " + std::to_string(script.steps.size()) + " lines";
}

}  // namespace

CatalogEntry parse_catalog_entry(std::string_view line) {
  json j = json::parse(line);
  CatalogEntry e;
  e.id = j.at("id");
  e.source = j.at("source");
  e.figure = parse_figure(j.at("figure").get<std::string>());
  e.swapped = j.value("swapped", false);
  e.ross_mood = j.value("ross_mood", "");
  if (j.contains("profile")) e.profile = parse_profile(j.at("profile"));
  e.theory = parse_theory(j.value("theory", "AML"));
  std::string expected = j.at("expected");
  if (expected != "valid" && expected != "invalid")
    throw std::invalid_argument(e.id + ": expected must be valid or invalid");
  e.expected_valid = expected == "valid";
  const json& ev = j.at("evidence");
  if (ev.contains("proof")) e.proof = ev.at("proof");
  if (ev.contains("depth")) e.depth = ev.at("depth");
  if (ev.contains("bounds")) e.bounds = {ev.at("bounds").at(0), ev.at("bounds").at(1)};
  if (ev.contains("witness")) e.witness = ev.at("witness");
  if (e.expected_valid && !e.proof && !e.depth)
    throw std::invalid_argument(e.id + ": valid entries need a proof or a depth");
  if (!e.expected_valid && !e.bounds)
    throw std::invalid_argument(e.id + ": invalid entries need bounds");
  e.notes = j.value("notes", "");
  if (j.contains("premises")) e.premises = j.at("premises").get<std::vector<std::string>>();
  if (j.contains("conclusion")) e.conclusion = j.at("conclusion");
  if (j.contains("stars")) e.stars = j.at("stars").get<std::vector<std::string>>();
  if (e.ross_mood.empty() && (e.premises.empty() || !e.conclusion))
    throw std::invalid_argument(e.id + ": needs a mood or explicit formulas");
  return e;
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<CatalogEntry> out;
  std::string line;
  std::size_t n = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_catalog_entry(line));
    } catch (const std::exception& ex) {
      throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": " + ex.what());
    }
    auto [it, fresh] = seen.emplace(out.back().id, n);
    if (!fresh)
      throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": duplicate catalog id " +
                               out.back().id + " (first on line " + std::to_string(it->second) + ")");
  }
  return out;
}

Syllogism entry_syllogism(const CatalogEntry& e) {
  if (e.premises.empty()) {
    Syllogism s = interpret_ross(e.ross_mood, e.figure, e.profile, e.swapped);
    if (e.stars) {
      s.star_premises.clear();
      for (const auto& t : *e.stars) s.star_premises.push_back(parse_formula(t));
      s = explicit_syllogism(s.figure, s.premises, s.star_premises, s.conclusion, s.mood);
      s.swapped = e.swapped;
    }
    return s;
  }
  std::vector<Formula> premises, stars;
  for (const auto& p : e.premises) premises.push_back(parse_formula(p));
  for (const auto& t : e.stars.value_or(std::vector<std::string>{})) stars.push_back(parse_formula(t));
  Syllogism s = explicit_syllogism(e.figure, premises, stars, parse_formula(*e.conclusion), e.ross_mood);
  s.swapped = e.swapped;
  return s;
}

std::vector<CatalogEntry> filter_catalog(const std::vector<CatalogEntry>& entries,
                                         std::string_view filter) {
  std::vector<std::string> tokens;
  std::stringstream ss{std::string(filter)};
  for (std::string t; std::getline(ss, t, ',');)
    if (!t.empty()) tokens.push_back(t);
  if (tokens.empty()) return entries;
  std::vector<CatalogEntry> out;
  for (const auto& e : entries) {
    std::string located = e.source + ":" + std::string(figure_name(e.figure));
    for (const auto& t : tokens)
      if (t == e.id || t == e.source || t == located) {
        out.push_back(e);
        break;
      }
  }
  return out;
}

EntryResult run_entry(const CatalogEntry& e, const CatalogOptions& o) {
  auto start = std::chrono::steady_clock::now();
  EntryResult r{e.id, e.source, std::string(figure_name(e.figure)),
                e.expected_valid ? "valid" : "invalid", "unknown", "", 0};
  try {
    Syllogism s = entry_syllogism(e);
    SearchConfig search;
    search.theory = e.theory;
    SearchBounds bounds;
    std::tie(bounds.max_individuals, bounds.max_valuations) = e.bounds.value_or(o.fallback_bounds);
    auto refute = [&](std::string& detail) {
      SearchOutcome out = find_countermodel(s.all_premises(), s.conclusion,
                                            SearchBounds{bounds.max_individuals,
                                                         bounds.max_valuations,
                                                         atoms_needed(s.all_premises(), s.conclusion)});
      if (!out.model) return false;
      detail = "countermodel " + cell(out.individuals, out.valuations);
      return true;
    };
    auto prove = [&](int depth, std::string& detail) {
      search.max_depth = depth;
      ProveResult p = prove_bounded(s.all_premises(), s.conclusion, search);
      if (!p.proof) return false;
      detail = "proved at depth " + std::to_string(p.depth_reached) + ", " +
               std::to_string(p.proof->steps.size()) + " lines";
      return true;
    };
    if (e.expected_valid) {
      bool ok = false;
      if (e.proof) {
        r.detail = check_script(e, s, o, ok);
        if (ok) r.computed = "valid";
      } else if (prove(*e.depth, r.detail)) {
        r.computed = "valid";
        ok = true;
      }
      if (!ok) {
        std::string d;
        if (refute(d)) r.computed = "invalid";
        r.detail += (r.detail.empty() ? "" : "; ") + (d.empty() ? "not proved" : d);
      }
    } else {
      if (refute(r.detail)) {
        r.computed = "invalid";
        if (e.witness) {
          Model m = load_model(o.base_dir / *e.witness);
          Entailment w = check_entailment_on_model(m, s.all_premises(), s.conclusion);
          r.detail += "; witness " + *e.witness + " " + std::string(entailment_name(w));
          if (w != Entailment::Violated) r.computed = "unknown";
        }
      } else {
        std::string d;
        if (prove(o.fallback_depth, d)) r.computed = "valid";
        r.detail = "no countermodel within " + cell(bounds.max_individuals, bounds.max_valuations) +
                   (d.empty() ? "" : "; " + d);
      }
    }
  } catch (const std::exception& ex) {
    r.computed = "unknown";
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

CatalogReport run_catalog(const std::vector<CatalogEntry>& entries, const CatalogOptions& o) {
  CatalogReport report;
  report.entries.resize(entries.size());
  unsigned jobs = std::max(1u, o.jobs);
  for (std::size_t base = 0; base < entries.size(); base += jobs) {
    std::vector<std::future<EntryResult>> batch;
    for (std::size_t i = base; i < std::min(entries.size(), base + jobs); ++i)
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                 [&, i] { return run_entry(entries[i], o); }));
    for (std::size_t k = 0; k < batch.size(); ++k) report.entries[base + k] = batch[k].get();
  }
  for (const auto& r : report.entries) {
    if (r.computed == r.expected)
      ++report.passed;
    else if (r.computed == "unknown")
      ++report.unknown;
    else
      ++report.failed;
  }
  return report;
}

namespace {

struct Tally {
  std::size_t total = 0, passed = 0, failed = 0, unknown = 0;
  double seconds = 0;
};

std::map<std::string, Tally> per_chapter(const CatalogReport& report) {
  std::map<std::string, Tally> out;
  for (const auto& r : report.entries) {
    Tally& t = out[r.source];
    ++t.total;
    t.seconds += r.seconds;
    if (r.computed == r.expected)
      ++t.passed;
    else if (r.computed == "unknown")
      ++t.unknown;
    else
      ++t.failed;
  }
  return out;
}

}  // namespace

std::string CatalogReport::to_json() const {
  ordered_json j;
  j["total"] = entries.size();
  j["passed"] = passed;
  j["failed"] = failed;
  j["unknown"] = unknown;
  ordered_json chapters = ordered_json::object();
  for (const auto& [name, t] : per_chapter(*this))
    chapters[name] = {{"total", t.total}, {"passed", t.passed}, {"failed", t.failed},
                      {"unknown", t.unknown}};
  j["per_chapter"] = chapters;
  ordered_json rows = ordered_json::array();
  for (const auto& r : entries)
    rows.push_back({{"id", r.id}, {"source", r.source}, {"figure", r.figure},
                    {"expected", r.expected}, {"computed", r.computed},
                    {"match", r.expected == r.computed}, {"detail", r.detail}});
  j["entries"] = rows;
  return j.dump(2) + "\n";
}

std::string CatalogReport::table() const {
  std::size_t w = 2;
  for (const auto& r : entries) w = std::max(w, r.id.size());
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t n) {
    s.resize(std::max(n, s.size()), ' ');
    return s;
  };
  out << pad("id", w) << "  " << pad("chapter", 10) << "  " << pad("expected", 8) << "  "
      << pad("computed", 8) << "  result  detail\n";
  for (const auto& r : entries)
    out << pad(r.id, w) << "  " << pad(r.source, 10) << "  " << pad(r.expected, 8) << "  "
        << pad(r.computed, 8) << "  " << (r.expected == r.computed ? "PASS  " : "FAIL  ") << "  "
        << r.detail << "\n";
  out << "\n" << pad("chapter", 10) << " total  passed  failed  unknown\n";
  for (const auto& [name, t] : per_chapter(*this)) {
    out << pad(name, 10) << " " << pad(std::to_string(t.total), 5) << "  "
        << pad(std::to_string(t.passed), 6) << "  " << pad(std::to_string(t.failed), 6) << "  "
        << t.unknown << "\n";
  }
  out << "total " << entries.size() << ": passed " << passed << ", failed " << failed
      << ", unknown " << unknown << "\n";
  return out.str();
}

std::string CatalogReport::timing_json() const {
  ordered_json j;
  double total = 0;
  ordered_json rows = ordered_json::object();
  for (const auto& r : entries) {
    rows[r.id] = r.seconds;
    total += r.seconds;
  }
  ordered_json chapters = ordered_json::object();
  for (const auto& [name, t] : per_chapter(*this)) chapters[name] = t.seconds;
  j["seconds_total"] = total;
  j["per_chapter"] = chapters;
  j["entries"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace aml
