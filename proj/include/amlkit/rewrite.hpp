#pragma once

#include "amlkit/formula.hpp"
#include "amlkit/term.hpp"

namespace aml {

// Term-occurrence rewrites usable anywhere inside a formula.
//   CEx:  C <-> ~~C
//   SqEx: [u]C <-> [u]~C
//   OmEx: <u>C <-> <u>~C
enum class RewriteMode { CEx, SqEx, OmEx };

// Canonical representative of a term's equivalence class under the reflexive,
// symmetric, transitive closure of the given rewrite. Two terms are mutually
// reachable iff their normal forms coincide.
Term normal_form(const Term& t, RewriteMode mode);
Formula normal_form(const Formula& f, RewriteMode mode);

// Normal form under CEx and SqEx together. Equal results mean one formula can be
// turned into the other by at most three alternating CEx/SqEx steps.
Term canonical(const Term& t);
Formula canonical(const Formula& f);

// True iff `to` results from `from` by any number of the mode's replacements at
// any term positions. Formulas must share their connective skeleton.
bool rewrite_reachable(const Formula& from, const Formula& to, RewriteMode mode);
bool rewrite_reachable(const Term& from, const Term& to, RewriteMode mode);

}  // namespace aml
