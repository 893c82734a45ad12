#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amlkit/formula.hpp"
#include "amlkit/library.hpp"
#include "amlkit/proof.hpp"

namespace aml {

struct SearchConfig {
  // Height of the derivation tree, counting every rule application except the
  // C_EX/SQ_EX normalization steps the emitter inserts.
  int max_depth = 6;
  // Cap on the term universe; the subterms of premises and goal always fit.
  std::size_t max_terms = 160;
  Theory theory = Theory::AML;
  bool use_library = false;
  // Library used when use_library is set; the verified default library if null.
  const LemmaLibrary* library = nullptr;
};

struct ProveResult {
  std::optional<ProofScript> proof;  // empty: not found within bounds (not a disproof)
  int depth_reached = 0;
  std::size_t universe_size = 0;
  std::size_t facts = 0;
  std::string reason;
};

// Forward-chaining saturation by rounds over a finite term universe. A returned
// script has been accepted by check_proof, concludes `goal`, and its open
// premises are among `premises`.
ProveResult prove_bounded(const std::vector<Formula>& premises, const Formula& goal,
                          const SearchConfig& config);

// The term universe the search would use, in canonical form and sorted.
std::vector<Term> saturation_universe(const std::vector<Formula>& premises, const Formula& goal,
                                      std::size_t max_terms);

}  // namespace aml
