#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amlkit/formula.hpp"
#include "amlkit/proof.hpp"

namespace aml {

// A derived rule: premise patterns over `$`-metavariables, a conclusion pattern,
// and a defining script whose open premises are exactly the pattern premises.
struct LemmaEntry {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
  Theory theory = Theory::AML;
  ProofScript proof;
  std::string description;
  // Rule the defining script must use at least once (empty for none).
  std::optional<Rule> requires_rule;
};

using Substitution = std::map<std::string, Term>;

// First-order matching of a pattern against a ground formula. Metavariables bind
// to whole terms; every other atom must match literally.
bool match_pattern(const Formula& pattern, const Formula& target, Substitution& sigma);
bool match_pattern(const Term& pattern, const Term& target, Substitution& sigma);
Term substitute(const Term& t, const Substitution& sigma);
Formula substitute(const Formula& f, const Substitution& sigma);

enum class EntryStatus { Pass, Fail, Unavailable };

struct EntryCheck {
  std::string name;
  EntryStatus status = EntryStatus::Fail;
  std::string message;
};

struct LibraryReport {
  Theory theory = Theory::AML;
  std::vector<EntryCheck> entries;
  bool all_passed() const;
  // No entry failed its own declared-theory check.
  bool usable() const;
};

class LemmaLibrary {
 public:
  LemmaLibrary() = default;

  // Entries are checked in insertion order; later entries may cite earlier ones.
  void add(LemmaEntry entry);
  const std::vector<LemmaEntry>& entries() const { return entries_; }
  const LemmaEntry* find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

  // Set by verify_library; LEMMA steps are refused until the library is usable.
  bool usable() const { return usable_; }

  // Returns an error description, or nothing if the LEMMA step is valid.
  std::optional<std::string> check_step(const std::string& name, const Formula& conclusion,
                                        const std::vector<Formula>& premises,
                                        Theory theory) const;

 private:
  friend LibraryReport verify_library(LemmaLibrary& library, Theory theory);
  std::vector<LemmaEntry> entries_;
  std::map<std::string, std::size_t> index_;
  bool usable_ = false;
};

// Re-checks each defining script under its declared theory, and reports each
// entry as Pass/Fail/Unavailable with respect to `theory`. Updates usability.
LibraryReport verify_library(LemmaLibrary& library, Theory theory);
std::string render_report(const LibraryReport& report);

// The derived rules shipped with the toolkit, unverified.
LemmaLibrary shipped_library();
// Shipped library, verified under AML_S5 and ready for LEMMA steps.
const LemmaLibrary& default_library();

// Library directory: manifest.json plus one .prf per entry.
LemmaLibrary load_library(const std::filesystem::path& dir);
void save_library(const LemmaLibrary& library, const std::filesystem::path& dir);

// Replaces every LEMMA step by its defining script, instantiated and renumbered.
ProofScript expand_lemmas(const ProofScript& script, const LemmaLibrary& library);

}  // namespace aml
