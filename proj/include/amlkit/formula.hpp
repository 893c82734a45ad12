#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "amlkit/term.hpp"

namespace aml {

enum class FormulaKind : std::uint8_t { Univ, Part, And, Implies, Bl };

// Immutable formula. `*A` is stored as Part(A, A). Bl only wraps Univ/Part.
class Formula {
 public:
  static Formula univ(Term subject, Term predicate);
  static Formula part(Term subject, Term predicate);
  static Formula star(Term t) { return part(t, t); }
  static Formula conj(Formula left, Formula right);
  static Formula implies(Formula antecedent, Formula consequent);
  // Throws std::invalid_argument when `inner` is not atomic.
  static Formula bl(Formula inner);

  FormulaKind kind() const noexcept;
  bool is_atomic() const noexcept {
    return kind() == FormulaKind::Univ || kind() == FormulaKind::Part;
  }
  bool is_univ() const noexcept { return kind() == FormulaKind::Univ; }
  bool is_part() const noexcept { return kind() == FormulaKind::Part; }
  bool is_and() const noexcept { return kind() == FormulaKind::And; }
  bool is_implies() const noexcept { return kind() == FormulaKind::Implies; }
  bool is_bl() const noexcept { return kind() == FormulaKind::Bl; }

  // Univ/Part accessors.
  const Term& subject() const;
  const Term& predicate() const;
  // And/Implies accessors (antecedent = left, consequent = right).
  const Formula& left() const;
  const Formula& right() const;
  // Bl accessor.
  const Formula& inner() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Flattens a right- or left-nested And tree into its conjuncts, left to right.
std::vector<Formula> conjuncts(const Formula& f);
// Folds into a right-associated And chain. `parts` must be nonempty.
Formula conjoin(const std::vector<Formula>& parts);

void atoms_of(const Formula& f, std::vector<std::string>& out);

// Applies `fn` to every term slot, rebuilding the formula.
template <typename Fn>
Formula map_terms(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case FormulaKind::Univ: return Formula::univ(fn(f.subject()), fn(f.predicate()));
    case FormulaKind::Part: return Formula::part(fn(f.subject()), fn(f.predicate()));
    case FormulaKind::And: return Formula::conj(map_terms(f.left(), fn), map_terms(f.right(), fn));
    case FormulaKind::Implies:
      return Formula::implies(map_terms(f.left(), fn), map_terms(f.right(), fn));
    case FormulaKind::Bl: return Formula::bl(map_terms(f.inner(), fn));
  }
  return f;
}

}  // namespace aml

template <>
struct std::hash<aml::Formula> {
  std::size_t operator()(const aml::Formula& f) const noexcept { return f.hash(); }
};
