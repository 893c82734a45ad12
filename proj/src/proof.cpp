#include "amlkit/proof.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "amlkit/library.hpp"
#include "amlkit/rewrite.hpp"

namespace aml {

std::string_view theory_name(Theory t) {
  switch (t) {
    case Theory::AML: return "AML";
    case Theory::AML_S5: return "AML_S5";
    case Theory::AML_BL: return "AML_BL";
  }
  return "AML";
}

Theory parse_theory(std::string_view text) {
  if (text == "AML") return Theory::AML;
  if (text == "AML_S5" || text == "AML-S5" || text == "S5") return Theory::AML_S5;
  if (text == "AML_BL" || text == "AML-BL" || text == "BL") return Theory::AML_BL;
  throw std::invalid_argument("unknown theory '" + std::string(text) + "'");
}

bool theory_includes(Theory current, Theory required) {
  return required == Theory::AML || current == required;
}

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 21> kRuleNames = {{
    {Rule::HYP, "HYP"},       {Rule::AX_S, "AX_S"},       {Rule::AX_T, "AX_T"},
    {Rule::AX_4, "AX_4"},     {Rule::AX_S5, "AX_S5"},     {Rule::MP, "MP"},
    {Rule::IMP_I, "IMP_I"},   {Rule::AND_I, "AND_I"},     {Rule::AND_E1, "AND_E1"},
    {Rule::AND_E2, "AND_E2"}, {Rule::C_EX, "C_EX"},       {Rule::SQ_EX, "SQ_EX"},
    {Rule::UNIV_T, "UNIV_T"}, {Rule::PART_C, "PART_C"},   {Rule::PART_I, "PART_I"},
    {Rule::PART_T, "PART_T"}, {Rule::C_C, "C_C"},         {Rule::K, "K"},
    {Rule::SQ_I, "SQ_I"},     {Rule::BL_I, "BL_I"},       {Rule::LEMMA, "LEMMA"},
}};

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (n == name) return rule;
  return std::nullopt;
}

Formula axiom_instance(Rule schema, const Term& a, Theory theory) {
  switch (schema) {
    case Rule::AX_S: return Formula::univ(Term::box(a), Term::sqbox(a));
    case Rule::AX_T: return Formula::univ(Term::box(a), a);
    case Rule::AX_4: return Formula::univ(Term::box(a), Term::box(Term::box(a)));
    case Rule::AX_S5:
      if (!theory_includes(theory, Theory::AML_S5))
        throw std::invalid_argument("AX_S5 is not available in " + std::string(theory_name(theory)));
      return Formula::univ(Term::diamond(a), Term::box(Term::diamond(a)));
    default: break;
  }
  throw std::invalid_argument("not an axiom schema: " + std::string(rule_name(schema)));
}

// ---------------------------------------------------------------------------
// .prf text

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int to_int(const std::string& s, std::size_t line_no) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(0, "line " + std::to_string(line_no) + ": expected a line number, got '" + s + "'");
  return v;
}

// Position of the keyword `by` that separates the formula from its justification.
std::size_t find_by(std::string_view s) {
  std::size_t best = std::string_view::npos;
  for (std::size_t i = s.find("by"); i != std::string_view::npos; i = s.find("by", i + 1)) {
    bool left_ok = i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t';
    bool right_ok = i + 2 < s.size() && (s[i + 2] == ' ' || s[i + 2] == '\t');
    if (left_ok && right_ok) best = i;
  }
  return best;
}

}  // namespace

ProofScript parse_proof(std::string_view text, const ParseOptions& options) {
  ProofScript script;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    int line_number = 0;
    std::optional<Formula> formula;
    Justification why;
    std::string comment;
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) {
      comment = std::string(raw.substr(hash + 1));
      while (!comment.empty() && comment.front() == ' ') comment.erase(0, 1);
      raw = raw.substr(0, hash);
    }
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
      raw.remove_suffix(1);
    while (!raw.empty() && (raw.front() == ' ' || raw.front() == '\t')) raw.remove_prefix(1);
    if (raw.empty()) {
      if (end == text.size()) break;
      continue;
    }

    auto where = [&](const std::string& msg) {
      return ParseError(0, "line " + std::to_string(line_no) + ": " + msg);
    };

    std::size_t dot = raw.find('.');
    if (dot == std::string_view::npos) throw where("expected 'N.' line number");
    line_number = to_int(std::string(raw.substr(0, dot)), line_no);
    std::string_view rest = raw.substr(dot + 1);
    std::size_t by = find_by(rest);
    if (by == std::string_view::npos) throw where("missing 'by' justification");
    try {
      formula = parse_formula(rest.substr(0, by), options);
    } catch (const ParseError& e) {
      throw where(e.what());
    }

    auto toks = split_ws(rest.substr(by + 2));
    if (toks.empty()) throw where("empty justification");
    std::string head = toks[0];
    std::size_t i = 1;
    if (head.rfind("LEMMA(", 0) == 0) {
      // The name may be glued to the parenthesis or spaced: LEMMA(x) or LEMMA ( x ).
      std::string name = head.substr(6);
      while (name.find(')') == std::string::npos && i < toks.size()) name += toks[i++];
      auto close = name.find(')');
      if (close == std::string::npos) throw where("unterminated LEMMA(");
      if (close + 1 != name.size()) throw where("junk after LEMMA(...)");
      name.resize(close);
      if (name.empty()) throw where("empty lemma name");
      why.rule = Rule::LEMMA;
      why.lemma = name;
    } else {
      auto rule = rule_from_name(head);
      if (!rule || *rule == Rule::LEMMA) throw where("unknown justification '" + head + "'");
      why.rule = *rule;
    }
    bool in_discharge = false;
    for (; i < toks.size(); ++i) {
      if (toks[i] == "discharge") {
        if (in_discharge) throw where("repeated 'discharge'");
        in_discharge = true;
        continue;
      }
      int n = to_int(toks[i], line_no);
      (in_discharge ? why.discharges : why.premises).push_back(n);
    }
    if (in_discharge && why.discharges.empty()) throw where("'discharge' needs line numbers");
    script.steps.push_back(ProofStep{line_number, *formula, std::move(why), std::move(comment)});
    if (end == text.size()) break;
  }
  return script;
}

std::string render_proof(const ProofScript& script) {
  std::string out;
  for (const auto& s : script.steps) {
    out += std::to_string(s.line) + ". " + render(s.formula) + " by ";
    if (s.why.rule == Rule::LEMMA)
      out += "LEMMA(" + s.why.lemma + ")";
    else
      out += rule_name(s.why.rule);
    for (int p : s.why.premises) out += " " + std::to_string(p);
    if (!s.why.discharges.empty()) {
      out += " discharge";
      for (int d : s.why.discharges) out += " " + std::to_string(d);
    }
    if (!s.comment.empty()) out += "  # " + s.comment;
    out += "\n";
  }
  return out;
}

std::string render_report(const CheckResult& r) {
  std::string out;
  out += std::string("status: ") + (r.accepted ? "accepted" : "rejected") + "\n";
  if (r.conclusion) out += "conclusion: " + render(*r.conclusion) + "\n";
  if (r.accepted) {
    out += "open premises:";
    if (r.open_premises.empty()) out += " none";
    out += "\n";
    for (const auto& p : r.open_premises) out += "  " + render(p) + "\n";
  }
  if (r.failing_line) out += "failing line: " + std::to_string(*r.failing_line) + "\n";
  if (!r.message.empty()) out += "reason: " + r.message + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Kernel

namespace {

struct LineInfo {
  Formula formula;
  std::vector<int> deps;  // sorted HYP line numbers
  bool is_hyp = false;
  int discharged_at = 0;  // line of the discharging IMP_I, 0 if open
};

class Rejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void need_premises(const ProofStep& s, std::size_t n) {
  if (s.why.premises.size() != n)
    throw Rejection(std::string(rule_name(s.why.rule)) + " expects " + std::to_string(n) +
                    " premise line(s), got " + std::to_string(s.why.premises.size()));
}

void need(bool cond, const std::string& msg) {
  if (!cond) throw Rejection(msg);
}

std::string show(const Formula& f) { return "'" + render(f) + "'"; }

// Tries both premise orders for binary rules whose premises play distinct roles.
template <typename Fn>
bool either_order(const Formula& a, const Formula& b, Fn&& fn) {
  return fn(a, b) || fn(b, a);
}

void check_axiom(const ProofStep& s, Theory theory) {
  need(s.why.premises.empty(), "axioms take no premise lines");
  const Formula& f = s.formula;
  need(f.is_univ(), "axiom instance must be a universal formula");
  const Term& lhs = f.subject();
  const Term& rhs = f.predicate();
  switch (s.why.rule) {
    case Rule::AX_S:
      need(lhs.is_box() && rhs.is_sqbox() && lhs.inner() == rhs.inner(),
           show(f) + " is not an instance of []A -> [u]A");
      return;
    case Rule::AX_T:
      need(lhs.is_box() && lhs.inner() == rhs, show(f) + " is not an instance of []A -> A");
      return;
    case Rule::AX_4:
      need(lhs.is_box() && rhs.is_box() && rhs.inner().is_box() && rhs.inner().inner() == lhs.inner(),
           show(f) + " is not an instance of []A -> [][]A");
      return;
    case Rule::AX_S5: {
      need(theory_includes(theory, Theory::AML_S5),
           "AX_S5 is not available in " + std::string(theory_name(theory)));
      bool ok = lhs.is_comp() && lhs.inner().is_box() && lhs.inner().inner().is_comp() &&
                rhs.is_box() && rhs.inner() == lhs;
      need(ok, show(f) + " is not an instance of <>A -> []<>A");
      return;
    }
    default: break;
  }
}

void check_rule(const ProofStep& s, const std::vector<const Formula*>& p, Theory theory,
                const LemmaLibrary* library) {
  const Formula& f = s.formula;
  const std::string name(rule_name(s.why.rule));
  switch (s.why.rule) {
    case Rule::MP: {
      need_premises(s, 2);
      bool ok = either_order(*p[0], *p[1], [&](const Formula& a, const Formula& imp) {
        return imp.is_implies() && imp.left() == a && imp.right() == f;
      });
      need(ok, "MP needs premises phi and phi => " + show(f));
      return;
    }
    case Rule::AND_I:
      need_premises(s, 2);
      need(f.is_and() && f.left() == *p[0] && f.right() == *p[1],
           "AND_I conclusion must be the conjunction of its premises in order");
      return;
    case Rule::AND_E1:
    case Rule::AND_E2: {
      need_premises(s, 1);
      need(p[0]->is_and(), name + " premise must be a conjunction");
      const Formula& part = s.why.rule == Rule::AND_E1 ? p[0]->left() : p[0]->right();
      need(part == f, name + " conclusion does not match the conjunct");
      return;
    }
    case Rule::C_EX:
      need_premises(s, 1);
      need(rewrite_reachable(*p[0], f, RewriteMode::CEx),
           show(f) + " is not reachable from " + show(*p[0]) + " by C <-> ~~C");
      return;
    case Rule::SQ_EX:
      need_premises(s, 1);
      need(rewrite_reachable(*p[0], f, RewriteMode::SqEx),
           show(f) + " is not reachable from " + show(*p[0]) + " by [u]C <-> [u]~C");
      return;
    case Rule::UNIV_T: {
      need_premises(s, 2);
      need(f.is_univ(), "UNIV_T concludes a universal formula");
      bool ok = either_order(*p[0], *p[1], [&](const Formula& ab, const Formula& bc) {
        return ab.is_univ() && bc.is_univ() && ab.predicate() == bc.subject() &&
               ab.subject() == f.subject() && bc.predicate() == f.predicate();
      });
      need(ok, "UNIV_T needs A -> B and B -> C with matching middle term");
      return;
    }
    case Rule::PART_C:
      need_premises(s, 1);
      need(p[0]->is_part() && f.is_part() && p[0]->subject() == f.predicate() &&
               p[0]->predicate() == f.subject(),
           "PART_C turns A ~> B into B ~> A");
      return;
    case Rule::PART_I:
      need_premises(s, 1);
      need(p[0]->is_part() && f.is_part() && f.subject() == p[0]->subject() &&
               f.predicate() == p[0]->subject(),
           "PART_I turns A ~> B into A ~> A");
      return;
    case Rule::PART_T: {
      need_premises(s, 2);
      need(f.is_part(), "PART_T concludes a particular formula");
      bool ok = either_order(*p[0], *p[1], [&](const Formula& ab, const Formula& bc) {
        return ab.is_part() && bc.is_univ() && ab.predicate() == bc.subject() &&
               ab.subject() == f.subject() && bc.predicate() == f.predicate();
      });
      need(ok, "PART_T needs A ~> B and B -> C with matching middle term");
      return;
    }
    case Rule::C_C:
      need_premises(s, 1);
      need(p[0]->is_univ() && p[0]->predicate().is_comp() && f.is_univ() &&
               f.predicate().is_comp() && f.subject() == p[0]->predicate().inner() &&
               f.predicate().inner() == p[0]->subject(),
           "C_C turns A -> ~B into B -> ~A");
      return;
    case Rule::K:
      need_premises(s, 1);
      need(p[0]->is_univ() && f.is_univ() && f.subject().is_box() && f.predicate().is_box() &&
               f.subject().inner() == p[0]->subject() && f.predicate().inner() == p[0]->predicate(),
           "K turns A -> B into []A -> []B");
      return;
    case Rule::SQ_I: {
      need_premises(s, 2);
      need(f.is_univ() && f.subject().is_sqbox(), "SQ_I concludes [u]A -> B");
      const Term& a = f.subject().inner();
      bool ok = either_order(*p[0], *p[1], [&](const Formula& pos, const Formula& neg) {
        return pos.is_univ() && neg.is_univ() && pos.subject() == Term::box(a) &&
               neg.subject() == Term::box(Term::comp(a)) && pos.predicate() == f.predicate() &&
               neg.predicate() == f.predicate();
      });
      need(ok, "SQ_I needs []A -> B and []~A -> B");
      return;
    }
    case Rule::BL_I:
      need(theory_includes(theory, Theory::AML_BL),
           "BL_I is not available in " + std::string(theory_name(theory)));
      need_premises(s, 1);
      need(p[0]->is_atomic() && f.is_bl() && f.inner() == *p[0], "BL_I turns phi into ?(phi)");
      return;
    case Rule::LEMMA: {
      need(library != nullptr, "LEMMA step without a lemma library");
      std::vector<Formula> prem;
      for (const Formula* q : p) prem.push_back(*q);
      if (auto err = library->check_step(s.why.lemma, f, prem, theory)) throw Rejection(*err);
      return;
    }
    default: break;
  }
  throw Rejection("unhandled rule " + name);
}

}  // namespace

CheckResult check_proof(const ProofScript& script, Theory theory, const LemmaLibrary* library) {
  CheckResult result;
  if (script.steps.empty()) {
    result.message = "empty script";
    return result;
  }
  std::map<int, LineInfo> lines;
  int prev_line = 0;
  bool first = true;
  for (const auto& s : script.steps) {
    try {
      need(first || s.line > prev_line, "line numbers must increase");
      first = false;
      prev_line = s.line;
      need(s.why.rule == Rule::IMP_I || s.why.discharges.empty(),
           "only IMP_I may discharge hypotheses");

      std::vector<const Formula*> prem;
      std::vector<int> deps;
      for (int ref : s.why.premises) {
        auto it = lines.find(ref);
        need(it != lines.end(), "premise line " + std::to_string(ref) + " is not an earlier line");
        need(it->second.discharged_at == 0,
             "line " + std::to_string(ref) + " was discharged at line " +
                 std::to_string(it->second.discharged_at));
        prem.push_back(&it->second.formula);
        deps = merge(deps, it->second.deps);
      }

      LineInfo info{s.formula, {}, false, 0};
      switch (s.why.rule) {
        case Rule::HYP:
          need(s.why.premises.empty(), "HYP takes no premise lines");
          info.is_hyp = true;
          deps = {s.line};
          break;
        case Rule::AX_S:
        case Rule::AX_T:
        case Rule::AX_4:
        case Rule::AX_S5: check_axiom(s, theory); break;
        case Rule::IMP_I: {
          need_premises(s, 1);
          need(s.formula.is_implies() && s.formula.right() == *prem[0],
               "IMP_I conclusion must be phi => " + show(*prem[0]));
          std::vector<int> dis = s.why.discharges;
          std::sort(dis.begin(), dis.end());
          need(std::adjacent_find(dis.begin(), dis.end()) == dis.end(), "duplicate discharge line");
          for (int d : dis) {
            auto it = lines.find(d);
            need(it != lines.end(), "discharged line " + std::to_string(d) + " is not an earlier line");
            need(it->second.is_hyp, "discharged line " + std::to_string(d) + " is not a HYP line");
            need(it->second.discharged_at == 0,
                 "line " + std::to_string(d) + " is already discharged");
            need(it->second.formula == s.formula.left(),
                 "discharged hypothesis " + show(it->second.formula) +
                     " differs from the antecedent " + show(s.formula.left()));
          }
          for (int d : dis) lines.at(d).discharged_at = s.line;
          std::vector<int> kept;
          std::set_difference(deps.begin(), deps.end(), dis.begin(), dis.end(),
                              std::back_inserter(kept));
          deps = std::move(kept);
          break;
        }
        default: check_rule(s, prem, theory, library); break;
      }
      info.deps = std::move(deps);
      lines.emplace(s.line, std::move(info));
    } catch (const Rejection& e) {
      result.accepted = false;
      result.failing_line = s.line;
      result.message = "line " + std::to_string(s.line) + " (" +
                       (s.why.rule == Rule::LEMMA ? "LEMMA(" + s.why.lemma + ")"
                                                  : std::string(rule_name(s.why.rule))) +
                       "): " + e.what();
      result.open_premises.clear();
      return result;
    }
  }
  const LineInfo& last = lines.at(script.steps.back().line);
  result.accepted = true;
  result.conclusion = last.formula;
  for (int d : last.deps) {
    const Formula& hyp = lines.at(d).formula;
    if (std::find(result.open_premises.begin(), result.open_premises.end(), hyp) ==
        result.open_premises.end())
      result.open_premises.push_back(hyp);
  }
  return result;
}

}  // namespace aml
