#include "amlkit/semantics.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "amlkit/syntax.hpp"
#include "json.hpp"

namespace aml {

Model::Model(std::vector<std::string> individuals, std::size_t valuation_count)
    : individuals_(std::move(individuals)), valuations_(valuation_count) {
  if (individuals_.empty()) throw std::invalid_argument("a model needs at least one individual");
  if (individuals_.size() > kMaxIndividuals)
    throw std::invalid_argument("at most " + std::to_string(kMaxIndividuals) + " individuals supported");
  if (valuations_.empty()) throw std::invalid_argument("a model needs at least one valuation");
  std::set<std::string> seen(individuals_.begin(), individuals_.end());
  if (seen.size() != individuals_.size()) throw std::invalid_argument("duplicate individual name");
  universe_ = individuals_.size() == 64 ? ~Extension{0} : (Extension{1} << individuals_.size()) - 1;
}

Extension Model::atom(std::size_t v, const std::string& name) const {
  const auto& val = valuations_.at(v);
  auto it = val.find(name);
  return it == val.end() ? 0 : it->second;
}

void Model::set_atom(std::size_t v, const std::string& name, Extension members) {
  if (members & ~universe_) throw std::invalid_argument("extension outside the individuals");
  valuations_.at(v)[name] = members;
}

const std::map<std::string, Extension>& Model::valuation(std::size_t v) const {
  return valuations_.at(v);
}

std::vector<std::string> Model::members(Extension e) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < individuals_.size(); ++i)
    if (e >> i & 1) out.push_back(individuals_[i]);
  return out;
}

Extension Model::individual_set(const std::vector<std::string>& names) const {
  Extension e = 0;
  for (const auto& n : names) {
    std::size_t i = 0;
    while (i < individuals_.size() && individuals_[i] != n) ++i;
    if (i == individuals_.size()) throw std::invalid_argument("unknown individual '" + n + "'");
    e |= Extension{1} << i;
  }
  return e;
}

namespace {

// Extensions of the modal heads do not depend on v, so they are computed from
// the per-valuation extensions of the argument.
Extension eval(const Model& m, std::size_t v, const Term& t) {
  switch (t.kind()) {
    case TermKind::Atom: return m.atom(v, t.name());
    case TermKind::Comp: return m.universe() & ~eval(m, v, t.inner());
    case TermKind::Box: {
      Extension all = m.universe();
      for (std::size_t w = 0; w < m.valuation_count(); ++w) all &= eval(m, w, t.inner());
      return all;
    }
    case TermKind::SqBox: {
      Extension all = m.universe(), any = 0;
      for (std::size_t w = 0; w < m.valuation_count(); ++w) {
        Extension e = eval(m, w, t.inner());
        all &= e;
        any |= e;
      }
      return all | (m.universe() & ~any);
    }
  }
  return 0;
}

bool holds_at(const Model& m, std::size_t v, const Formula& f) {
  Extension a = eval(m, v, f.subject());
  Extension b = eval(m, v, f.predicate());
  return f.is_univ() ? (a & ~b) == 0 : (a & b) != 0;
}

}  // namespace

Extension extension(const Model& model, std::size_t v, const Term& term) {
  if (v >= model.valuation_count())
    throw std::out_of_range("valuation index " + std::to_string(v) + " out of range");
  return eval(model, v, term);
}

bool satisfies(const Model& model, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Univ:
    case FormulaKind::Part:
      for (std::size_t v = 0; v < model.valuation_count(); ++v)
        if (!holds_at(model, v, f)) return false;
      return true;
    case FormulaKind::And: return satisfies(model, f.left()) && satisfies(model, f.right());
    case FormulaKind::Implies: return !satisfies(model, f.left()) || satisfies(model, f.right());
    case FormulaKind::Bl: {
      const Formula& g = f.inner();
      // The weak reading of *A is *A itself.
      if (g.is_part() && g.subject() == g.predicate()) return satisfies(model, g);
      for (std::size_t v = 0; v < model.valuation_count(); ++v)
        if (holds_at(model, v, g)) return true;
      return false;
    }
  }
  return false;
}

std::string_view entailment_name(Entailment e) {
  switch (e) {
    case Entailment::Upheld: return "upheld";
    case Entailment::Violated: return "violated";
    case Entailment::PremisesUnsatisfied: return "premises_unsatisfied";
  }
  return "?";
}

Entailment check_entailment_on_model(const Model& model, const std::vector<Formula>& premises,
                                     const Formula& conclusion) {
  for (const auto& p : premises)
    if (!satisfies(model, p)) return Entailment::PremisesUnsatisfied;
  return satisfies(model, conclusion) ? Entailment::Upheld : Entailment::Violated;
}

namespace {

std::string set_text(const Model& m, Extension e) {
  std::string s = "{";
  auto names = m.members(e);
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + "}";
}

void trace_formula(std::ostringstream& out, const Model& m, const Formula& f, const char* role) {
  out << role << " " << render(f) << " : " << (satisfies(m, f) ? "true" : "false") << "\n";
  std::vector<Formula> atomic;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.is_and() || g.is_implies()) {
      stack.push_back(g.right());
      stack.push_back(g.left());
    } else if (g.is_bl()) {
      stack.push_back(g.inner());
    } else {
      atomic.push_back(g);
    }
  }
  for (const auto& a : atomic) {
    for (std::size_t v = 0; v < m.valuation_count(); ++v) {
      Extension s = eval(m, v, a.subject()), p = eval(m, v, a.predicate());
      out << "    v" << v << ": " << render(a.subject()) << "=" << set_text(m, s) << " "
          << render(a.predicate()) << "=" << set_text(m, p) << " -> "
          << (holds_at(m, v, a) ? "holds" : "fails") << "\n";
    }
  }
}

}  // namespace

std::string satisfaction_trace(const Model& model, const std::vector<Formula>& premises,
                               const Formula& conclusion) {
  std::ostringstream out;
  for (const auto& p : premises) trace_formula(out, model, p, "premise   ");
  trace_formula(out, model, conclusion, "conclusion");
  out << "result: " << entailment_name(check_entailment_on_model(model, premises, conclusion)) << "\n";
  return out.str();
}

Model model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("individuals") || !j.contains("valuations"))
    throw std::invalid_argument("model file needs \"individuals\" and \"valuations\"");
  Model m(j.at("individuals").get<std::vector<std::string>>(), j.at("valuations").size());
  std::size_t v = 0;
  for (const auto& val : j.at("valuations")) {
    if (!val.is_object()) throw std::invalid_argument("each valuation must be an object");
    for (const auto& [atom, members] : val.items())
      m.set_atom(v, atom, m.individual_set(members.get<std::vector<std::string>>()));
    ++v;
  }
  return m;
}

std::string model_to_json(const Model& m) {
  nlohmann::ordered_json j;
  j["individuals"] = m.individuals();
  j["valuations"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < m.valuation_count(); ++v) {
    nlohmann::ordered_json val = nlohmann::ordered_json::object();
    for (const auto& [atom, e] : m.valuation(v)) val[atom] = m.members(e);
    j["valuations"].push_back(val);
  }
  return j.dump(2) + "\n";
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << model_to_json(model);
}

}  // namespace aml
