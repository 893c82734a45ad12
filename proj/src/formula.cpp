#include "amlkit/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace aml {

struct Formula::Node {
  FormulaKind kind;
  std::vector<Term> terms;
  std::vector<Formula> kids;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::univ(Term subject, Term predicate) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Univ;
  n->hash = mix(mix(0xa1, subject.hash()), predicate.hash());
  n->terms = {std::move(subject), std::move(predicate)};
  return Formula(std::move(n));
}

Formula Formula::part(Term subject, Term predicate) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Part;
  n->hash = mix(mix(0xa2, subject.hash()), predicate.hash());
  n->terms = {std::move(subject), std::move(predicate)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->hash = mix(mix(0xa3, left.hash()), right.hash());
  n->kids = {std::move(left), std::move(right)};
  return Formula(std::move(n));
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Implies;
  n->hash = mix(mix(0xa4, antecedent.hash()), consequent.hash());
  n->kids = {std::move(antecedent), std::move(consequent)};
  return Formula(std::move(n));
}

Formula Formula::bl(Formula inner) {
  if (!inner.is_atomic()) throw std::invalid_argument("? applies only to atomic formulas");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Bl;
  n->hash = mix(0xa5, inner.hash());
  n->kids = {std::move(inner)};
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }

const Term& Formula::subject() const {
  if (!is_atomic()) throw std::logic_error("subject() on non-atomic formula");
  return node_->terms[0];
}

const Term& Formula::predicate() const {
  if (!is_atomic()) throw std::logic_error("predicate() on non-atomic formula");
  return node_->terms[1];
}

const Formula& Formula::left() const {
  if (!is_and() && !is_implies()) throw std::logic_error("left() on non-binary formula");
  return node_->kids[0];
}

const Formula& Formula::right() const {
  if (!is_and() && !is_implies()) throw std::logic_error("right() on non-binary formula");
  return node_->kids[1];
}

const Formula& Formula::inner() const {
  if (!is_bl()) throw std::logic_error("inner() on non-? formula");
  return node_->kids[0];
}

std::size_t Formula::hash() const noexcept { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  if (a.is_atomic()) return a.node_->terms[0] == b.node_->terms[0] && a.node_->terms[1] == b.node_->terms[1];
  return a.node_->kids == b.node_->kids;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (a.is_atomic()) {
    if (auto c = a.node_->terms[0] <=> b.node_->terms[0]; c != 0) return c;
    return a.node_->terms[1] <=> b.node_->terms[1];
  }
  const auto& x = a.node_->kids;
  const auto& y = b.node_->kids;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

static void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.is_and()) {
    collect_conjuncts(f.left(), out);
    collect_conjuncts(f.right(), out);
  } else {
    out.push_back(f);
  }
}

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  collect_conjuncts(f, out);
  return out;
}

Formula conjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("conjoin of empty list");
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Formula::conj(parts[i], acc);
  return acc;
}

void atoms_of(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part:
      atoms_of(f.subject(), out);
      atoms_of(f.predicate(), out);
      break;
    case FormulaKind::And:
    case FormulaKind::Implies:
      atoms_of(f.left(), out);
      atoms_of(f.right(), out);
      break;
    case FormulaKind::Bl:
      atoms_of(f.inner(), out);
      break;
  }
}

}  // namespace aml
