#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amlkit/library.hpp"
#include "amlkit/modelfind.hpp"
#include "amlkit/prover.hpp"
#include "amlkit/rewrite.hpp"
#include "amlkit/syllogistics.hpp"
#include "amlkit/syntax.hpp"

namespace py = pybind11;
using namespace aml;

namespace {

std::vector<Formula> parse_all(const std::vector<std::string>& texts) {
  std::vector<Formula> out;
  for (const auto& t : texts) out.push_back(parse_formula(t));
  return out;
}

std::vector<std::string> render_all(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(render(f));
  return out;
}

py::dict check_text(const std::string& text, const std::string& theory, bool library) {
  ProofScript script = parse_proof(text);
  CheckResult r = check_proof(script, parse_theory(theory), library ? &default_library() : nullptr);
  py::dict d;
  d["accepted"] = r.accepted;
  d["conclusion"] = r.conclusion ? py::cast(render(*r.conclusion)) : py::none();
  d["open_premises"] = render_all(r.open_premises);
  d["failing_line"] = r.failing_line ? py::cast(*r.failing_line) : py::none();
  d["message"] = r.message;
  return d;
}

py::dict prove(const std::vector<std::string>& premises, const std::string& goal, int depth,
               const std::string& theory, bool library) {
  SearchConfig c;
  c.max_depth = depth;
  c.theory = parse_theory(theory);
  c.use_library = library;
  ProveResult r;
  {
    py::gil_scoped_release release;
    r = prove_bounded(parse_all(premises), parse_formula(goal), c);
  }
  py::dict d;
  d["proof"] = r.proof ? py::cast(render_proof(*r.proof)) : py::none();
  d["depth"] = r.depth_reached;
  d["universe"] = r.universe_size;
  d["facts"] = r.facts;
  d["reason"] = r.reason;
  return d;
}

py::dict refute(const std::vector<std::string>& premises, const std::string& conclusion,
                std::size_t individuals, std::size_t valuations, unsigned jobs) {
  auto ps = parse_all(premises);
  Formula c = parse_formula(conclusion);
  SearchBounds b{individuals, valuations, atoms_needed(ps, c)};
  SearchOutcome o;
  {
    py::gil_scoped_release release;
    o = find_countermodel(ps, c, b, jobs);
  }
  py::dict d;
  d["model"] = o.model ? py::cast(model_to_json(*o.model)) : py::none();
  d["individuals"] = o.individuals;
  d["valuations"] = o.valuations;
  return d;
}

std::string evaluate(const std::string& model_json, const std::vector<std::string>& premises,
                     const std::string& conclusion) {
  Model m = model_from_json(model_json);
  return std::string(entailment_name(check_entailment_on_model(m, parse_all(premises), parse_formula(conclusion))));
}

py::dict classify_mood(const std::string& mood, const std::string& figure, bool swapped,
                       const std::string& theory, int depth, std::size_t individuals,
                       std::size_t valuations) {
  Syllogism s = interpret_ross(mood, parse_figure(figure), {}, swapped);
  SearchConfig c;
  c.max_depth = depth;
  Classification r;
  {
    py::gil_scoped_release release;
    r = classify(s, parse_theory(theory), c, SearchBounds{individuals, valuations, {}});
  }
  py::dict d;
  d["verdict"] = std::string(verdict_name(r.verdict));
  d["premises"] = render_all(s.all_premises());
  d["conclusion"] = render(s.conclusion);
  d["proof"] = r.proof ? py::cast(render_proof(*r.proof)) : py::none();
  d["model"] = r.model ? py::cast(model_to_json(*r.model)) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_amlkit, m) {
  m.doc() = "Aristotelic modal logic workbench";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("normalize", [](const std::string& text) { return render(parse_formula(text)); },
        py::arg("formula"), "Parse and re-render a formula.");
  m.def("canonical", [](const std::string& text) { return render(canonical(parse_formula(text))); },
        py::arg("formula"));
  m.def("canonical_term", [](const std::string& text) { return render(canonical(parse_term(text))); },
        py::arg("term"));
  m.def("check", &check_text, py::arg("proof"), py::arg("theory") = "AML", py::arg("library") = false,
        "Check .prf text.");
  m.def("prove", &prove, py::arg("premises"), py::arg("goal"), py::arg("depth") = 6,
        py::arg("theory") = "AML", py::arg("library") = false);
  m.def("refute", &refute, py::arg("premises"), py::arg("conclusion"), py::arg("individuals") = 2,
        py::arg("valuations") = 4, py::arg("jobs") = 1);
  m.def("evaluate", &evaluate, py::arg("model"), py::arg("premises"), py::arg("conclusion"),
        "Entailment on a .model.json text: upheld, violated or premises_unsatisfied.");
  m.def("classify", &classify_mood, py::arg("mood"), py::arg("figure"), py::arg("swapped") = false,
        py::arg("theory") = "AML", py::arg("depth") = 8, py::arg("individuals") = 2,
        py::arg("valuations") = 4);
}
