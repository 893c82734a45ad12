#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amlkit/formula.hpp"
#include "amlkit/semantics.hpp"

namespace aml {

struct SearchBounds {
  std::size_t max_individuals = 2;
  std::size_t max_valuations = 4;
  // Atoms the search assigns; every atom of the target formulas must be listed.
  std::vector<std::string> atoms;
};

struct SearchOutcome {
  std::optional<Model> model;  // empty: none within bounds (not a validity proof)
  std::size_t individuals = 0;  // cell of the witness
  std::size_t valuations = 0;
  std::uint64_t examined = 0;  // canonical candidates evaluated; varies with jobs
};

// Atoms of premises and conclusion, sorted and distinct.
std::vector<std::string> atoms_needed(const std::vector<Formula>& premises, const Formula& conclusion);

// Scans the cells (|I|, |V|) in lexicographic order up to the bounds and returns
// the first canonical model satisfying every premise and refuting the conclusion.
// `jobs` only changes wall time, never the witness.
SearchOutcome find_countermodel(const std::vector<Formula>& premises, const Formula& conclusion,
                                const SearchBounds& bounds, unsigned jobs = 1);

// One representative per isomorphism class of models with exactly
// bounds.max_individuals individuals and bounds.max_valuations valuations (as a
// multiset), in canonical order. `visit` returns false to stop early.
void enumerate_models(const SearchBounds& bounds, const std::function<bool(const Model&)>& visit);
std::vector<Model> enumerate_models(const SearchBounds& bounds);

}  // namespace aml
