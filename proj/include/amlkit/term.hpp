#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace aml {

enum class TermKind : std::uint8_t { Atom, Comp, Box, SqBox };

// Immutable modal term. Diamond and bicontingency are not node kinds:
//   <>A  is Comp(Box(Comp(A)))
//   <u>A is Comp(SqBox(A))
class Term {
 public:
  static Term atom(std::string name);
  static Term comp(Term inner);
  static Term box(Term inner);
  static Term sqbox(Term inner);
  static Term diamond(Term inner);
  static Term bicontingent(Term inner);

  TermKind kind() const noexcept;
  bool is_atom() const noexcept { return kind() == TermKind::Atom; }
  bool is_comp() const noexcept { return kind() == TermKind::Comp; }
  bool is_box() const noexcept { return kind() == TermKind::Box; }
  bool is_sqbox() const noexcept { return kind() == TermKind::SqBox; }

  // Only valid on atoms.
  const std::string& name() const;
  // Only valid on non-atoms.
  const Term& inner() const;

  std::size_t hash() const noexcept;
  std::size_t size() const noexcept;
  int depth() const noexcept;

  friend bool operator==(const Term& a, const Term& b) noexcept;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

 private:
  struct Node;
  static Term make_unary(TermKind kind, std::size_t salt, Term inner);
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Strips every leading complement. Returns the number stripped through `count`.
Term strip_comps(const Term& t, int* count = nullptr);

// Collects each distinct subterm (including t itself), in post-order.
void subterms(const Term& t, std::vector<Term>& out);
void atoms_of(const Term& t, std::vector<std::string>& out);

bool is_metavariable(const std::string& atom_name) noexcept;

}  // namespace aml

template <>
struct std::hash<aml::Term> {
  std::size_t operator()(const aml::Term& t) const noexcept { return t.hash(); }
};
