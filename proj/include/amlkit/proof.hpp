#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amlkit/formula.hpp"
#include "amlkit/syntax.hpp"

namespace aml {

enum class Theory { AML, AML_S5, AML_BL };

std::string_view theory_name(Theory t);
// Accepts "AML", "AML_S5"/"AML-S5"/"S5", "AML_BL"/"AML-BL"/"BL". Throws on anything else.
Theory parse_theory(std::string_view text);
// True when every rule and axiom of `required` is available in `current`.
bool theory_includes(Theory current, Theory required);

enum class Rule {
  HYP,
  AX_S,
  AX_T,
  AX_4,
  AX_S5,
  MP,
  IMP_I,
  AND_I,
  AND_E1,
  AND_E2,
  C_EX,
  SQ_EX,
  UNIV_T,
  PART_C,
  PART_I,
  PART_T,
  C_C,
  K,
  SQ_I,
  BL_I,
  LEMMA,
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

struct Justification {
  Rule rule = Rule::HYP;
  std::string lemma;           // LEMMA only
  std::vector<int> premises;   // referenced line numbers
  std::vector<int> discharges; // IMP_I only
};

struct ProofStep {
  int line = 0;
  Formula formula;
  Justification why;
  std::string comment;
};

struct ProofScript {
  std::vector<ProofStep> steps;
};

// Line-oriented .prf text. Blank lines and lines starting with '#' are skipped.
ProofScript parse_proof(std::string_view text, const ParseOptions& options = {});
std::string render_proof(const ProofScript& script);

struct CheckResult {
  bool accepted = false;
  std::optional<Formula> conclusion;
  // Hypotheses the conclusion still depends on, ordered by line.
  std::vector<Formula> open_premises;
  std::optional<int> failing_line;
  std::string message;
};

std::string render_report(const CheckResult& result);

class LemmaLibrary;

// Checks every step of `script` under `theory`. LEMMA steps require `library`.
CheckResult check_proof(const ProofScript& script, Theory theory,
                        const LemmaLibrary* library = nullptr);

// Instance of an axiom schema. Throws std::invalid_argument when the schema is a
// justification other than AX_S/AX_T/AX_4/AX_S5, or AX_S5 outside AML_S5.
Formula axiom_instance(Rule schema, const Term& instantiation, Theory theory = Theory::AML_S5);

}  // namespace aml
