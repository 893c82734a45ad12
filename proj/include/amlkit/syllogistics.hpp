#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amlkit/formula.hpp"
#include "amlkit/modelfind.hpp"
#include "amlkit/proof.hpp"
#include "amlkit/prover.hpp"
#include "amlkit/semantics.hpp"

namespace aml {

enum class TermModality { None, Box, Diamond, Bicont, SqBox };
enum class Copula { Universal, Particular };

// X A' (-> | ~>) Y B', optionally wrapped in the weak assertoric ?(...).
struct PredicationForm {
  TermModality subject_modality = TermModality::None;
  bool subject_complemented = false;
  Copula copula = Copula::Universal;
  TermModality predicate_modality = TermModality::None;
  bool predicate_complemented = false;
  bool weak = false;

  Formula compile(const Term& subject, const Term& predicate) const;
  bool universal() const { return copula == Copula::Universal; }
};

// contingent1..contingent8 as (subject, predicate) modalities.
std::pair<TermModality, TermModality> contingent_template(int k);

enum class Figure { First, Second, Third };
std::string_view figure_name(Figure f);
Figure parse_figure(std::string_view text);

// How untagged and c/p-tagged propositions are read. Explicit tags in a mood
// string (c1..c8, bl, s, n, u) override the profile for that proposition.
struct InterpretationProfile {
  bool weak_plain = false;
  int contingent = 2;   // 1..6
  int problematic = 1;  // 1..8
};

// Tags: "" plain, "s" strong, "bl" weak, "n" right-[], "u" right-[u],
// "c", "p", "c1".."c8". Throws std::invalid_argument on anything else.
PredicationForm mood_to_predication(char letter, std::string_view tag,
                                    const InterpretationProfile& profile = {});

struct Syllogism {
  Figure figure = Figure::First;
  bool swapped = false;  // conclusion terms in reverse slot order
  std::string mood;
  std::vector<Formula> premises;       // P1, P2
  std::vector<Formula> star_premises;  // *C and friends
  Formula conclusion;
  Formula assembled;

  // Stars first, then P1, P2.
  std::vector<Formula> all_premises() const;
};

// Star premises for `star`: *C, plus *XC for every premise whose subject is C
// under a modality X.
Syllogism build_syllogism(Figure figure, const PredicationForm& p1, const PredicationForm& p2,
                          const PredicationForm& p3, bool star, bool swapped = false);
// True for the third figure with two universal premises.
bool tacit_star(Figure figure, const PredicationForm& p1, const PredicationForm& p2);

// "A^n A A^n", "*AAI", "E^c A^n O^c". A leading '*' forces the star; the
// third-figure tacit star is added in any case.
Syllogism interpret_ross(std::string_view mood_text, Figure figure,
                         const InterpretationProfile& profile = {}, bool swapped = false);

// A syllogism from explicit formulas, for claims that do not fit the mood grammar.
Syllogism explicit_syllogism(Figure figure, const std::vector<Formula>& premises,
                             const std::vector<Formula>& stars, const Formula& conclusion,
                             std::string mood = {});

enum class Verdict { Valid, Refuted, Unknown };
std::string_view verdict_name(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Unknown;
  std::optional<ProofScript> proof;
  int depth = 0;
  std::optional<Model> model;
  std::size_t individuals = 0;
  std::size_t valuations = 0;
};

// prove_bounded first (theory overrides search.theory), then find_countermodel.
// Empty bounds.atoms means the syllogism's own atoms.
Classification classify(const Syllogism& s, Theory theory, const SearchConfig& search,
                        const SearchBounds& bounds, unsigned jobs = 1);
// Runs both searches; a syllogism that is both proved and refuted throws std::logic_error.
Classification classify_checked(const Syllogism& s, Theory theory, const SearchConfig& search,
                                const SearchBounds& bounds, unsigned jobs = 1);

// ---- catalog ----

struct CatalogEntry {
  std::string id;
  std::string source;
  Figure figure = Figure::First;
  bool swapped = false;
  std::string ross_mood;
  InterpretationProfile profile;
  Theory theory = Theory::AML;
  bool expected_valid = true;
  // Evidence: a proof script or a search depth for valid entries; bounds and an
  // optional witness model for invalid ones. Paths are relative to the catalog.
  std::optional<std::string> proof;
  std::optional<int> depth;
  std::optional<std::pair<std::size_t, std::size_t>> bounds;
  std::optional<std::string> witness;
  std::string notes;
  // Explicit formulas replace the mood compilation when present.
  std::vector<std::string> premises;
  std::optional<std::string> conclusion;
  std::optional<std::vector<std::string>> stars;
};

CatalogEntry parse_catalog_entry(std::string_view json_line);
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path);
Syllogism entry_syllogism(const CatalogEntry& entry);

// Tokens separated by commas; an entry is kept when a token equals its id, its
// source, or "source:figure".
std::vector<CatalogEntry> filter_catalog(const std::vector<CatalogEntry>& entries,
                                         std::string_view filter);

struct EntryResult {
  std::string id;
  std::string source;
  std::string figure;
  std::string expected;  // valid | invalid
  std::string computed;  // valid | invalid | unknown
  std::string detail;
  double seconds = 0;
};

struct CatalogReport {
  std::vector<EntryResult> entries;
  std::size_t passed = 0, failed = 0, unknown = 0;

  bool all_passed() const { return passed == entries.size(); }
  // Deterministic: no timing.
  std::string to_json() const;
  std::string table() const;
  // Wall times per entry and chapter.
  std::string timing_json() const;
};

struct CatalogOptions {
  std::filesystem::path base_dir;
  unsigned jobs = 1;
  int fallback_depth = 8;
  std::pair<std::size_t, std::size_t> fallback_bounds{2, 4};
};

EntryResult run_entry(const CatalogEntry& entry, const CatalogOptions& options);
CatalogReport run_catalog(const std::vector<CatalogEntry>& entries, const CatalogOptions& options);

// ---- survey ----

struct SurveyOptions {
  std::vector<Figure> figures{Figure::First, Figure::Second, Figure::Third};
  // Tags each proposition may carry, as accepted by mood_to_predication.
  std::vector<std::string> alphabet{""};
  bool include_swapped = true;
  Theory theory = Theory::AML;
  SearchConfig search;
  SearchBounds bounds;
  bool cross_check = true;
  unsigned jobs = 1;
};

struct SurveyItem {
  std::string key;  // renaming-invariant
  Syllogism syllogism;
  Classification result;
};

// Every candidate in enumeration order, one per renaming class.
std::vector<Syllogism> survey_candidates(const SurveyOptions& options);
std::string survey_key(const Syllogism& s);
std::string survey_line(const SurveyItem& item);

// Classifies every candidate and passes it to `emit` in order. With a checkpoint
// path, lines already present are validated against the enumeration and reused,
// and each new line is appended as soon as it is known. A checkpoint that does
// not match the enumeration throws std::runtime_error.
void survey(const SurveyOptions& options, const std::function<void(const SurveyItem&)>& emit,
            const std::optional<std::filesystem::path>& checkpoint = std::nullopt);

}  // namespace aml
