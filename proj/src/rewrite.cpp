#include "amlkit/rewrite.hpp"

namespace aml {

namespace {

Term rebuild(TermKind kind, Term inner) {
  switch (kind) {
    case TermKind::Comp: return Term::comp(std::move(inner));
    case TermKind::Box: return Term::box(std::move(inner));
    case TermKind::SqBox: return Term::sqbox(std::move(inner));
    case TermKind::Atom: break;
  }
  return inner;
}

// Complement stacks collapse to their parity.
Term cex_nf(const Term& t) {
  if (t.is_atom()) return t;
  if (t.is_comp()) {
    int n = 0;
    Term core = strip_comps(t, &n);
    Term inner = cex_nf(core);
    return n % 2 ? Term::comp(inner) : inner;
  }
  return rebuild(t.kind(), cex_nf(t.inner()));
}

// Complements directly under [u] are erased.
Term sqex_nf(const Term& t) {
  if (t.is_atom()) return t;
  if (t.is_sqbox()) return Term::sqbox(sqex_nf(strip_comps(t.inner())));
  return rebuild(t.kind(), sqex_nf(t.inner()));
}

// `free_parity` marks a position whose leading complement count can be toggled,
// i.e. the argument of a <u>. If that argument is itself a [u]D, toggling a
// complement onto it forms <u>D, so D's parity is free as well.
Term omex_nf(const Term& t, bool free_parity) {
  if (free_parity) {
    Term core = strip_comps(t);
    if (core.is_sqbox()) return Term::sqbox(omex_nf(core.inner(), true));
    return omex_nf(core, false);
  }
  if (t.is_atom()) return t;
  if (t.is_comp() && t.inner().is_sqbox())
    return Term::comp(Term::sqbox(omex_nf(t.inner().inner(), true)));
  return rebuild(t.kind(), omex_nf(t.inner(), false));
}

bool same_skeleton_terms(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part: return true;
    case FormulaKind::And:
    case FormulaKind::Implies:
      return same_skeleton_terms(a.left(), b.left()) && same_skeleton_terms(a.right(), b.right());
    case FormulaKind::Bl: return same_skeleton_terms(a.inner(), b.inner());
  }
  return false;
}

}  // namespace

Term normal_form(const Term& t, RewriteMode mode) {
  switch (mode) {
    case RewriteMode::CEx: return cex_nf(t);
    case RewriteMode::SqEx: return sqex_nf(t);
    case RewriteMode::OmEx: return omex_nf(t, false);
  }
  return t;
}

Formula normal_form(const Formula& f, RewriteMode mode) {
  return map_terms(f, [mode](const Term& t) { return normal_form(t, mode); });
}

Term canonical(const Term& t) { return sqex_nf(cex_nf(t)); }

Formula canonical(const Formula& f) {
  return map_terms(f, [](const Term& t) { return canonical(t); });
}

bool rewrite_reachable(const Term& from, const Term& to, RewriteMode mode) {
  return normal_form(from, mode) == normal_form(to, mode);
}

bool rewrite_reachable(const Formula& from, const Formula& to, RewriteMode mode) {
  if (!same_skeleton_terms(from, to)) return false;
  return normal_form(from, mode) == normal_form(to, mode);
}

}  // namespace aml
