#include "amlkit/syllogistics.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "amlkit/syntax.hpp"

namespace aml {

namespace {

Term apply(TermModality m, Term t) {
  switch (m) {
    case TermModality::None: return t;
    case TermModality::Box: return Term::box(std::move(t));
    case TermModality::Diamond: return Term::diamond(std::move(t));
    case TermModality::Bicont: return Term::bicontingent(std::move(t));
    case TermModality::SqBox: return Term::sqbox(std::move(t));
  }
  return t;
}

// Subject/predicate atoms of slot 0..2 (P1, P2, P3).
std::pair<std::string, std::string> slot_atoms(Figure figure, int slot, bool swapped) {
  static const char* shapes[3][3][2] = {
      {{"B", "A"}, {"C", "B"}, {"C", "A"}},
      {{"B", "A"}, {"C", "A"}, {"B", "C"}},
      {{"C", "A"}, {"C", "B"}, {"A", "B"}},
  };
  const auto& s = shapes[static_cast<int>(figure)][slot];
  if (slot == 2 && swapped) return {s[1], s[0]};
  return {s[0], s[1]};
}

// The atom absent from the conclusion of each figure.
const char* middle_term(Figure figure) {
  switch (figure) {
    case Figure::First: return "B";
    case Figure::Second: return "A";
    case Figure::Third: return "C";
  }
  return "";
}

Formula assemble(const std::vector<Formula>& stars, const std::vector<Formula>& premises,
                 const Formula& conclusion) {
  std::vector<Formula> parts = stars;
  parts.insert(parts.end(), premises.begin(), premises.end());
  return Formula::implies(conjoin(parts), conclusion);
}

void check_slots(const Syllogism& s) {
  std::vector<std::string> all, concl;
  atoms_of(s.assembled, all);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all != std::vector<std::string>{"A", "B", "C"})
    throw std::logic_error("syllogism must use exactly the atoms A, B, C");
  atoms_of(s.conclusion, concl);
  if (std::find(concl.begin(), concl.end(), middle_term(s.figure)) != concl.end())
    throw std::logic_error("middle term occurs in the conclusion");
}

// A proposition whose subject is a modalized C yields the extra star *XC.
std::optional<Term> modal_subject(const PredicationForm& p, const Term& subject) {
  if (p.subject_modality == TermModality::None) return std::nullopt;
  return apply(p.subject_modality, p.subject_complemented ? Term::comp(subject) : subject);
}

}  // namespace

Formula PredicationForm::compile(const Term& subject, const Term& predicate) const {
  Term x = apply(subject_modality, subject_complemented ? Term::comp(subject) : subject);
  Term y = apply(predicate_modality, predicate_complemented ? Term::comp(predicate) : predicate);
  Formula f = copula == Copula::Universal ? Formula::univ(x, y) : Formula::part(x, y);
  return weak ? Formula::bl(f) : f;
}

std::pair<TermModality, TermModality> contingent_template(int k) {
  using M = TermModality;
  static const std::pair<M, M> table[8] = {
      {M::None, M::Diamond},    {M::None, M::Bicont},   {M::Diamond, M::Diamond},
      {M::Bicont, M::Bicont},   {M::Bicont, M::Diamond}, {M::Diamond, M::Bicont},
      {M::Diamond, M::None},    {M::Bicont, M::None},
  };
  if (k < 1 || k > 8) throw std::invalid_argument("contingent kind must be 1..8");
  return table[k - 1];
}

std::string_view figure_name(Figure f) {
  switch (f) {
    case Figure::First: return "first";
    case Figure::Second: return "second";
    case Figure::Third: return "third";
  }
  return "?";
}

Figure parse_figure(std::string_view text) {
  if (text == "first" || text == "1") return Figure::First;
  if (text == "second" || text == "2") return Figure::Second;
  if (text == "third" || text == "3") return Figure::Third;
  throw std::invalid_argument("unknown figure '" + std::string(text) + "'");
}

PredicationForm mood_to_predication(char letter, std::string_view tag,
                                    const InterpretationProfile& profile) {
  PredicationForm form;
  switch (letter) {
    case 'A': break;
    case 'E': form.predicate_complemented = true; break;
    case 'I': form.copula = Copula::Particular; break;
    case 'O':
      form.copula = Copula::Particular;
      form.predicate_complemented = true;
      break;
    default: throw std::invalid_argument(std::string("unknown mood letter '") + letter + "'");
  }
  auto contingent = [&](int k) {
    std::tie(form.subject_modality, form.predicate_modality) = contingent_template(k);
  };
  if (tag.empty()) {
    form.weak = profile.weak_plain;
  } else if (tag == "s") {
  } else if (tag == "bl") {
    form.weak = true;
  } else if (tag == "n") {
    form.predicate_modality = TermModality::Box;
  } else if (tag == "u") {
    form.predicate_modality = TermModality::SqBox;
  } else if (tag == "c") {
    if (profile.contingent < 1 || profile.contingent > 6)
      throw std::invalid_argument("profile contingent reading must be 1..6");
    contingent(profile.contingent);
  } else if (tag == "p") {
    contingent(profile.problematic);
  } else if (tag.size() == 2 && tag[0] == 'c' && tag[1] >= '1' && tag[1] <= '8') {
    contingent(tag[1] - '0');
  } else {
    throw std::invalid_argument("unknown tag '" + std::string(tag) + "'");
  }
  return form;
}

std::vector<Formula> Syllogism::all_premises() const {
  std::vector<Formula> out = star_premises;
  out.insert(out.end(), premises.begin(), premises.end());
  return out;
}

bool tacit_star(Figure figure, const PredicationForm& p1, const PredicationForm& p2) {
  return figure == Figure::Third && p1.universal() && p2.universal();
}

Syllogism build_syllogism(Figure figure, const PredicationForm& p1, const PredicationForm& p2,
                          const PredicationForm& p3, bool star, bool swapped) {
  const PredicationForm* forms[3] = {&p1, &p2, &p3};
  std::vector<Formula> compiled;
  for (int slot = 0; slot < 3; ++slot) {
    auto [s, p] = slot_atoms(figure, slot, swapped);
    compiled.push_back(forms[slot]->compile(Term::atom(s), Term::atom(p)));
  }
  std::vector<Formula> stars;
  if (star) {
    const Term c = Term::atom("C");
    stars.push_back(Formula::star(c));
    for (int slot = 0; slot < 2; ++slot) {
      if (slot_atoms(figure, slot, false).first != "C") continue;
      if (auto t = modal_subject(*forms[slot], c)) {
        Formula f = Formula::star(*t);
        if (std::find(stars.begin(), stars.end(), f) == stars.end()) stars.push_back(f);
      }
    }
  }
  std::vector<Formula> premises{compiled[0], compiled[1]};
  Syllogism out{figure, swapped, {}, premises, stars, compiled[2],
                assemble(stars, premises, compiled[2])};
  check_slots(out);
  return out;
}

Syllogism interpret_ross(std::string_view text, Figure figure, const InterpretationProfile& profile,
                         bool swapped) {
  bool star = false;
  std::vector<std::pair<char, std::string>> props;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  if (i < text.size() && text[i] == '*') {
    star = true;
    ++i;
  }
  while (true) {
    skip_space();
    if (i >= text.size()) break;
    char letter = text[i++];
    if (std::string_view("AEIO").find(letter) == std::string_view::npos)
      throw std::invalid_argument("malformed mood '" + std::string(text) + "'");
    std::string tag;
    if (i < text.size() && text[i] == '^') {
      ++i;
      while (i < text.size() && (std::islower(static_cast<unsigned char>(text[i])) ||
                                 std::isdigit(static_cast<unsigned char>(text[i]))))
        tag += text[i++];
      if (tag.empty()) throw std::invalid_argument("empty tag in mood '" + std::string(text) + "'");
    }
    props.emplace_back(letter, tag);
  }
  if (props.size() != 3)
    throw std::invalid_argument("mood '" + std::string(text) + "' needs three propositions");
  PredicationForm p1 = mood_to_predication(props[0].first, props[0].second, profile);
  PredicationForm p2 = mood_to_predication(props[1].first, props[1].second, profile);
  PredicationForm p3 = mood_to_predication(props[2].first, props[2].second, profile);
  Syllogism s = build_syllogism(figure, p1, p2, p3, star || tacit_star(figure, p1, p2), swapped);
  s.mood = std::string(text);
  return s;
}

Syllogism explicit_syllogism(Figure figure, const std::vector<Formula>& premises,
                             const std::vector<Formula>& stars, const Formula& conclusion,
                             std::string mood) {
  if (premises.empty()) throw std::invalid_argument("a syllogism needs premises");
  return Syllogism{figure, false, std::move(mood), premises, stars, conclusion,
                   assemble(stars, premises, conclusion)};
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "valid";
    case Verdict::Refuted: return "invalid";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

SearchBounds with_atoms(const Syllogism& s, SearchBounds bounds) {
  if (bounds.atoms.empty()) bounds.atoms = atoms_needed(s.all_premises(), s.conclusion);
  return bounds;
}

bool try_prove(const Syllogism& s, Theory theory, SearchConfig search, Classification& out) {
  search.theory = theory;
  ProveResult r = prove_bounded(s.all_premises(), s.conclusion, search);
  if (!r.proof) return false;
  out.verdict = Verdict::Valid;
  out.proof = std::move(r.proof);
  out.depth = r.depth_reached;
  return true;
}

bool try_refute(const Syllogism& s, const SearchBounds& bounds, unsigned jobs, Classification& out) {
  SearchOutcome r = find_countermodel(s.all_premises(), s.conclusion, with_atoms(s, bounds), jobs);
  if (!r.model) return false;
  out.verdict = Verdict::Refuted;
  out.model = std::move(r.model);
  out.individuals = r.individuals;
  out.valuations = r.valuations;
  return true;
}

}  // namespace

Classification classify(const Syllogism& s, Theory theory, const SearchConfig& search,
                        const SearchBounds& bounds, unsigned jobs) {
  Classification out;
  if (!try_prove(s, theory, search, out)) try_refute(s, bounds, jobs, out);
  return out;
}

Classification classify_checked(const Syllogism& s, Theory theory, const SearchConfig& search,
                                const SearchBounds& bounds, unsigned jobs) {
  Classification proved, refuted;
  bool p = try_prove(s, theory, search, proved);
  bool r = try_refute(s, bounds, jobs, refuted);
  if (p && r)
    throw std::logic_error("syllogism both proved and refuted: " + render(s.assembled));
  return p ? proved : refuted;
}

}  // namespace aml
