#include "amlkit/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace aml {

struct Term::Node {
  TermKind kind;
  std::string name;
  Term child{nullptr};
  std::size_t hash;
  std::size_t size;
  int depth;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Atom;
  n->hash = mix(0x51ed, std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->size = 1;
  n->depth = 0;
  return Term(std::move(n));
}

Term Term::comp(Term inner) { return make_unary(TermKind::Comp, 0xc0, std::move(inner)); }
Term Term::box(Term inner) { return make_unary(TermKind::Box, 0xb0, std::move(inner)); }
Term Term::sqbox(Term inner) { return make_unary(TermKind::SqBox, 0x5b, std::move(inner)); }

Term Term::make_unary(TermKind kind, std::size_t salt, Term inner) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->hash = mix(salt, inner.hash());
  n->size = inner.size() + 1;
  n->depth = inner.depth() + 1;
  n->child = std::move(inner);
  return Term(std::move(n));
}

Term Term::diamond(Term inner) { return comp(box(comp(std::move(inner)))); }
Term Term::bicontingent(Term inner) { return comp(sqbox(std::move(inner))); }

TermKind Term::kind() const noexcept { return node_->kind; }

const std::string& Term::name() const {
  if (node_->kind != TermKind::Atom) throw std::logic_error("name() on non-atom term");
  return node_->name;
}

const Term& Term::inner() const {
  if (node_->kind == TermKind::Atom) throw std::logic_error("inner() on atom term");
  return node_->child;
}

std::size_t Term::hash() const noexcept { return node_->hash; }
std::size_t Term::size() const noexcept { return node_->size; }
int Term::depth() const noexcept { return node_->depth; }

bool operator==(const Term& a, const Term& b) noexcept {
  const Term::Node* x = a.node_.get();
  const Term::Node* y = b.node_.get();
  while (true) {
    if (x == y) return true;
    if (x->hash != y->hash || x->kind != y->kind || x->size != y->size) return false;
    if (x->kind == TermKind::Atom) return x->name == y->name;
    x = x->child.node_.get();
    y = y->child.node_.get();
  }
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  const Term::Node* x = a.node_.get();
  const Term::Node* y = b.node_.get();
  while (true) {
    if (x == y) return std::strong_ordering::equal;
    if (auto c = x->size <=> y->size; c != 0) return c;
    if (auto c = x->kind <=> y->kind; c != 0) return c;
    if (x->kind == TermKind::Atom) {
      int c = x->name.compare(y->name);
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    x = x->child.node_.get();
    y = y->child.node_.get();
  }
}

Term strip_comps(const Term& t, int* count) {
  const Term* cur = &t;
  int n = 0;
  while (cur->is_comp()) {
    cur = &cur->inner();
    ++n;
  }
  if (count) *count = n;
  return *cur;
}

void subterms(const Term& t, std::vector<Term>& out) {
  if (!t.is_atom()) subterms(t.inner(), out);
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

void atoms_of(const Term& t, std::vector<std::string>& out) {
  Term core = t;
  while (!core.is_atom()) core = core.inner();
  if (std::find(out.begin(), out.end(), core.name()) == out.end()) out.push_back(core.name());
}

bool is_metavariable(const std::string& atom_name) noexcept {
  return !atom_name.empty() && atom_name.front() == '$';
}

}  // namespace aml
