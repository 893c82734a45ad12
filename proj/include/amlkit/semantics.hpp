#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "amlkit/formula.hpp"

namespace aml {

// Subset of a model's individuals; bit i stands for individuals()[i].
using Extension = std::uint64_t;

inline constexpr std::size_t kMaxIndividuals = 64;

// A finite extensional model: individuals plus a nonempty sequence of valuations.
// Atoms a valuation does not mention denote the empty extension.
class Model {
 public:
  // Throws std::invalid_argument on no individuals, duplicate names, more than
  // kMaxIndividuals individuals, or zero valuations.
  Model(std::vector<std::string> individuals, std::size_t valuation_count);

  const std::vector<std::string>& individuals() const { return individuals_; }
  std::size_t individual_count() const { return individuals_.size(); }
  std::size_t valuation_count() const { return valuations_.size(); }
  Extension universe() const { return universe_; }

  Extension atom(std::size_t v, const std::string& name) const;
  void set_atom(std::size_t v, const std::string& name, Extension members);
  const std::map<std::string, Extension>& valuation(std::size_t v) const;

  std::vector<std::string> members(Extension e) const;
  Extension individual_set(const std::vector<std::string>& names) const;

  bool operator==(const Model&) const = default;

 private:
  std::vector<std::string> individuals_;
  std::vector<std::map<std::string, Extension>> valuations_;
  Extension universe_ = 0;
};

// E_v(term). Throws std::out_of_range for a bad valuation index.
Extension extension(const Model& model, std::size_t v, const Term& term);

bool satisfies(const Model& model, const Formula& formula);

enum class Entailment { Upheld, Violated, PremisesUnsatisfied };
std::string_view entailment_name(Entailment e);

Entailment check_entailment_on_model(const Model& model, const std::vector<Formula>& premises,
                                     const Formula& conclusion);

// Per-formula, per-valuation breakdown used by the command line.
std::string satisfaction_trace(const Model& model, const std::vector<Formula>& premises,
                               const Formula& conclusion);

// .model.json text. Member lists follow the order of "individuals".
Model model_from_json(std::string_view text);
std::string model_to_json(const Model& model);
Model load_model(const std::filesystem::path& path);
void save_model(const Model& model, const std::filesystem::path& path);

}  // namespace aml
