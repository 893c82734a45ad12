#include <algorithm>
#include <array>
#include <fstream>
#include <future>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "amlkit/syllogistics.hpp"
#include "amlkit/syntax.hpp"

namespace aml {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string mood_text(const std::array<char, 3>& letters, const std::array<std::string, 3>& tags) {
  std::string out;
  for (int k = 0; k < 3; ++k) {
    if (k) out += ' ';
    out += letters[k];
    if (!tags[k].empty()) out += "^" + tags[k];
  }
  return out;
}

Formula rename(const Formula& f, const std::array<std::string, 3>& to) {
  return map_terms(f, [&](const Term& t) {
    std::function<Term(const Term&)> walk = [&](const Term& u) -> Term {
      switch (u.kind()) {
        case TermKind::Atom: {
          const std::string& n = u.name();
          if (n.size() == 1 && n[0] >= 'A' && n[0] <= 'C') return Term::atom(to[n[0] - 'A']);
          return u;
        }
        case TermKind::Comp: return Term::comp(walk(u.inner()));
        case TermKind::Box: return Term::box(walk(u.inner()));
        case TermKind::SqBox: return Term::sqbox(walk(u.inner()));
      }
      return u;
    };
    return walk(t);
  });
}

Verdict parse_verdict(const std::string& s) {
  if (s == "valid") return Verdict::Valid;
  if (s == "invalid") return Verdict::Refuted;
  if (s == "unknown") return Verdict::Unknown;
  throw std::runtime_error("bad verdict '" + s + "'");
}

}  // namespace

std::string survey_key(const Syllogism& s) {
  std::array<std::string, 3> perm{"A", "B", "C"};
  std::string best;
  do {
    std::vector<std::string> ps;
    for (const auto& p : s.all_premises()) ps.push_back(render(rename(p, perm)));
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::string key;
    for (const auto& p : ps) key += (key.empty() ? "" : " & ") + p;
    key += " => " + render(rename(s.conclusion, perm));
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Syllogism> survey_candidates(const SurveyOptions& o) {
  static const char letters[] = {'A', 'E', 'I', 'O'};
  std::vector<std::pair<char, std::string>> props;
  for (char l : letters)
    for (const auto& t : o.alphabet) props.emplace_back(l, t);
  std::vector<Syllogism> out;
  std::set<std::string> seen;
  for (Figure fig : o.figures) {
    std::vector<bool> orders{false};
    if (o.include_swapped && fig != Figure::First) orders.push_back(true);
    for (const auto& a : props)
      for (const auto& b : props)
        for (const auto& c : props)
          for (bool swapped : orders) {
            PredicationForm p1 = mood_to_predication(a.first, a.second);
            PredicationForm p2 = mood_to_predication(b.first, b.second);
            PredicationForm p3 = mood_to_predication(c.first, c.second);
            Syllogism s = build_syllogism(fig, p1, p2, p3, tacit_star(fig, p1, p2), swapped);
            s.mood = mood_text({a.first, b.first, c.first}, {a.second, b.second, c.second});
            if (seen.insert(survey_key(s)).second) out.push_back(std::move(s));
          }
  }
  return out;
}

std::string survey_line(const SurveyItem& item) {
  ordered_json j;
  j["key"] = item.key;
  j["figure"] = figure_name(item.syllogism.figure);
  j["swapped"] = item.syllogism.swapped;
  j["mood"] = item.syllogism.mood;
  j["formula"] = render(item.syllogism.assembled);
  j["verdict"] = verdict_name(item.result.verdict);
  if (item.result.verdict == Verdict::Valid) j["depth"] = item.result.depth;
  if (item.result.verdict == Verdict::Refuted)
    j["cell"] = {item.result.individuals, item.result.valuations};
  return j.dump();
}

void survey(const SurveyOptions& o, const std::function<void(const SurveyItem&)>& emit,
            const std::optional<std::filesystem::path>& checkpoint) {
  std::vector<Syllogism> candidates = survey_candidates(o);
  std::size_t done = 0;
  if (checkpoint && std::filesystem::exists(*checkpoint)) {
    std::ifstream in(*checkpoint);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto corrupt = [&](const std::string& why) {
        return std::runtime_error("checkpoint " + checkpoint->string() + " line " +
                                  std::to_string(done + 1) + ": " + why);
      };
      if (done >= candidates.size()) throw corrupt("more lines than candidates");
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception&) {
        throw corrupt("not JSON");
      }
      SurveyItem item{survey_key(candidates[done]), candidates[done], {}};
      if (!j.contains("key") || j["key"] != item.key) throw corrupt("does not match the enumeration");
      try {
        item.result.verdict = parse_verdict(j.at("verdict"));
        if (item.result.verdict == Verdict::Valid) item.result.depth = j.at("depth");
        if (item.result.verdict == Verdict::Refuted) {
          item.result.individuals = j.at("cell").at(0);
          item.result.valuations = j.at("cell").at(1);
        }
      } catch (const std::exception& ex) {
        throw corrupt(ex.what());
      }
      emit(item);
      ++done;
    }
  }
  std::ofstream out;
  if (checkpoint) {
    out.open(*checkpoint, std::ios::app);
    if (!out) throw std::runtime_error("cannot write " + checkpoint->string());
  }
  unsigned jobs = std::max(1u, o.jobs);
  auto classify_one = [&](const Syllogism& s) {
    return o.cross_check ? classify_checked(s, o.theory, o.search, o.bounds)
                         : classify(s, o.theory, o.search, o.bounds);
  };
  for (std::size_t base = done; base < candidates.size(); base += jobs) {
    std::vector<std::future<Classification>> batch;
    for (std::size_t i = base; i < std::min(candidates.size(), base + jobs); ++i)
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                 [&, i] { return classify_one(candidates[i]); }));
    for (std::size_t k = 0; k < batch.size(); ++k) {
      const Syllogism& s = candidates[base + k];
      SurveyItem item{survey_key(s), s, batch[k].get()};
      if (checkpoint) out << survey_line(item) << "\n" << std::flush;
      emit(item);
    }
  }
}

}  // namespace aml
