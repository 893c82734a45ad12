#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "amlkit/formula.hpp"
#include "amlkit/term.hpp"

namespace aml {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct ParseOptions {
  // Accept `$name` atoms (schema metavariables in lemma patterns).
  bool allow_metavariables = false;
};

Term parse_term(std::string_view text, const ParseOptions& options = {});
Formula parse_formula(std::string_view text, const ParseOptions& options = {});

enum class SyntaxKind { Term, Formula };
std::variant<Term, Formula> parse(std::string_view text, SyntaxKind kind,
                                  const ParseOptions& options = {});

std::string render(const Term& t);
std::string render(const Formula& f);

// Grammar summary printed by CLI usage errors.
std::string_view grammar_help();

}  // namespace aml
