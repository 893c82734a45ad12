#include "amlkit/modelfind.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace aml {

namespace {

// A valuation is a code over (atom, individual): bit j*n + i says individual i
// falls under atom j. A candidate model is a non-decreasing tuple of codes.
struct Cell {
  std::size_t n = 0;  // individuals
  std::size_t k = 0;  // valuations
  std::size_t m = 0;  // atoms
  std::vector<std::vector<std::size_t>> perms;  // non-identity individual permutations
  std::vector<std::vector<std::uint64_t>> perm_table;  // perm_table[p][code]; empty when too large

  Cell(std::size_t n_, std::size_t k_, std::size_t m_) : n(n_), k(k_), m(m_) {
    if (m * n > 30) throw std::invalid_argument("search cell too large: atoms x individuals > 30");
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
    if (m * n <= 16) {
      for (const auto& q : perms) {
        std::vector<std::uint64_t> table(code_count());
        for (std::uint64_t c = 0; c < code_count(); ++c) table[c] = permute_slow(c, q);
        perm_table.push_back(std::move(table));
      }
    }
  }

  std::uint64_t code_count() const { return std::uint64_t{1} << (m * n); }
  Extension mask() const { return (Extension{1} << n) - 1; }

  std::uint64_t permute_slow(std::uint64_t c, const std::vector<std::size_t>& q) const {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (c >> (j * n + i) & 1) out |= std::uint64_t{1} << (j * n + q[i]);
    return out;
  }

  std::uint64_t permute(std::uint64_t c, std::size_t p) const {
    return perm_table.empty() ? permute_slow(c, perms[p]) : perm_table[p][c];
  }

  // Least under valuation reordering is the sorted tuple, so only individual
  // permutations need checking.
  bool canonical(const std::vector<std::uint64_t>& codes) const {
    std::vector<std::uint64_t> img(codes.size());
    for (std::size_t p = 0; p < perms.size(); ++p) {
      for (std::size_t v = 0; v < codes.size(); ++v) img[v] = permute(codes[v], p);
      std::sort(img.begin(), img.end());
      if (img < codes) return false;
    }
    return true;
  }

  Model build(const std::vector<std::uint64_t>& codes, const std::vector<std::string>& atoms) const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("i" + std::to_string(i + 1));
    Model model(std::move(names), k);
    for (std::size_t v = 0; v < k; ++v)
      for (std::size_t j = 0; j < m; ++j) model.set_atom(v, atoms[j], (codes[v] >> (j * n)) & mask());
    return model;
  }
};

// Formulas flattened over interned subterms for fast repeated evaluation.
class Compiled {
 public:
  Compiled(const std::vector<std::string>& atoms) {
    for (std::size_t j = 0; j < atoms.size(); ++j) atom_index_[atoms[j]] = static_cast<int>(j);
  }

  int add(const Formula& f) {
    FNode node{f.kind(), -1, -1};
    switch (f.kind()) {
      case FormulaKind::Univ:
      case FormulaKind::Part:
        node.a = term(f.subject());
        node.b = term(f.predicate());
        break;
      case FormulaKind::And:
      case FormulaKind::Implies:
        node.a = add(f.left());
        node.b = add(f.right());
        break;
      case FormulaKind::Bl: node.a = add(f.inner()); break;
    }
    fnodes_.push_back(node);
    return static_cast<int>(fnodes_.size()) - 1;
  }

  // Fills the extension table for a tuple of codes: ext_[t*k + v].
  void load(const Cell& cell, const std::uint64_t* codes) {
    k_ = cell.k;
    ext_.resize(tnodes_.size() * k_);
    Extension all = cell.mask();
    for (std::size_t t = 0; t < tnodes_.size(); ++t) {
      const TNode& x = tnodes_[t];
      Extension* out = &ext_[t * k_];
      const Extension* in = x.child >= 0 ? &ext_[x.child * k_] : nullptr;
      switch (x.kind) {
        case TermKind::Atom:
          for (std::size_t v = 0; v < k_; ++v) out[v] = (codes[v] >> (x.atom * cell.n)) & all;
          break;
        case TermKind::Comp:
          for (std::size_t v = 0; v < k_; ++v) out[v] = all & ~in[v];
          break;
        case TermKind::Box: {
          Extension e = all;
          for (std::size_t v = 0; v < k_; ++v) e &= in[v];
          std::fill(out, out + k_, e);
          break;
        }
        case TermKind::SqBox: {
          Extension every = all, some = 0;
          for (std::size_t v = 0; v < k_; ++v) {
            every &= in[v];
            some |= in[v];
          }
          std::fill(out, out + k_, every | (all & ~some));
          break;
        }
      }
    }
  }

  bool sat(int f) const {
    const FNode& x = fnodes_[f];
    switch (x.kind) {
      case FormulaKind::Univ: return all_v(x, true);
      case FormulaKind::Part: return all_v(x, false);
      case FormulaKind::And: return sat(x.a) && sat(x.b);
      case FormulaKind::Implies: return !sat(x.a) || sat(x.b);
      case FormulaKind::Bl: {
        const FNode& g = fnodes_[x.a];
        if (g.kind == FormulaKind::Part && g.a == g.b) return all_v(g, false);
        const Extension* s = &ext_[g.a * k_];
        const Extension* p = &ext_[g.b * k_];
        for (std::size_t v = 0; v < k_; ++v)
          if (g.kind == FormulaKind::Univ ? (s[v] & ~p[v]) == 0 : (s[v] & p[v]) != 0) return true;
        return false;
      }
    }
    return false;
  }

 private:
  struct TNode {
    TermKind kind;
    int child;
    int atom;
  };
  struct FNode {
    FormulaKind kind;
    int a, b;
  };

  int term(const Term& t) {
    auto it = term_index_.find(t);
    if (it != term_index_.end()) return it->second;
    TNode node{t.kind(), -1, -1};
    if (t.is_atom()) {
      auto a = atom_index_.find(t.name());
      if (a == atom_index_.end()) throw std::invalid_argument("bounds do not list atom '" + t.name() + "'");
      node.atom = a->second;
    } else {
      node.child = term(t.inner());
    }
    tnodes_.push_back(node);
    int id = static_cast<int>(tnodes_.size()) - 1;
    term_index_.emplace(t, id);
    return id;
  }

  bool all_v(const FNode& x, bool universal) const {
    const Extension* s = &ext_[x.a * k_];
    const Extension* p = &ext_[x.b * k_];
    for (std::size_t v = 0; v < k_; ++v)
      if (universal ? (s[v] & ~p[v]) != 0 : (s[v] & p[v]) == 0) return false;
    return true;
  }

  std::unordered_map<std::string, int> atom_index_;
  std::unordered_map<Term, int> term_index_;
  std::vector<TNode> tnodes_;
  std::vector<FNode> fnodes_;
  std::vector<Extension> ext_;
  std::size_t k_ = 1;
};

bool modal_free(const Term& t) {
  Term core = strip_comps(t);
  return core.is_atom();
}

// Premise conjuncts whose truth is decided valuation by valuation.
std::vector<Formula> local_conjuncts(const std::vector<Formula>& premises) {
  std::vector<Formula> out;
  for (const auto& p : premises)
    for (const auto& c : conjuncts(p))
      if (c.is_atomic() && modal_free(c.subject()) && modal_free(c.predicate())) out.push_back(c);
  return out;
}

// Walks non-decreasing tuples over `allowed` whose first entry is allowed[first],
// calling `visit` on each canonical one until it returns true.
template <class Fn>
bool scan_level(const Cell& cell, const std::vector<std::uint64_t>& allowed, std::size_t depth,
                std::size_t from, std::vector<std::uint64_t>& codes, Fn& visit) {
  for (std::size_t i = from; i < allowed.size(); ++i) {
    codes[depth] = allowed[i];
    if (depth + 1 == cell.k) {
      if (cell.canonical(codes) && visit(codes)) return true;
    } else if (scan_level(cell, allowed, depth + 1, i, codes, visit)) {
      return true;
    }
  }
  return false;
}

template <class Fn>
bool scan_subtree(const Cell& cell, const std::vector<std::uint64_t>& allowed, std::size_t first,
                  Fn&& visit) {
  std::vector<std::uint64_t> codes(cell.k, allowed[first]);
  if (cell.k == 1) return cell.canonical(codes) && visit(codes);
  return scan_level(cell, allowed, 1, first, codes, visit);
}

struct CellResult {
  std::optional<std::vector<std::uint64_t>> witness;
  std::uint64_t examined = 0;
};

CellResult search_cell(const Cell& cell, const std::vector<Formula>& premises, const Formula& conclusion,
                       const std::vector<std::string>& atoms, unsigned jobs) {
  Compiled local(atoms);
  std::vector<int> local_ids;
  for (const auto& f : local_conjuncts(premises)) local_ids.push_back(local.add(f));
  Cell single(cell.n, 1, cell.m);
  std::vector<std::uint64_t> allowed;
  for (std::uint64_t c = 0; c < cell.code_count(); ++c) {
    local.load(single, &c);
    if (std::all_of(local_ids.begin(), local_ids.end(), [&](int f) { return local.sat(f); }))
      allowed.push_back(c);
  }
  CellResult result;
  if (allowed.empty()) return result;

  auto run = [&](std::size_t first) {
    Compiled eval(atoms);
    std::vector<int> prem;
    for (const auto& p : premises) prem.push_back(eval.add(p));
    int concl = eval.add(conclusion);
    CellResult r;
    scan_subtree(cell, allowed, first, [&](const std::vector<std::uint64_t>& codes) {
      ++r.examined;
      eval.load(cell, codes.data());
      for (int p : prem)
        if (!eval.sat(p)) return false;
      if (eval.sat(concl)) return false;
      r.witness = codes;
      return true;
    });
    return r;
  };

  // Rounds of consecutive first codes; after each round the smallest hit is the
  // first witness overall, since tuples are ordered by their first code.
  std::size_t width = std::max(1u, jobs);
  for (std::size_t base = 0; base < allowed.size(); base += width) {
    std::size_t end = std::min(allowed.size(), base + width);
    std::vector<CellResult> round;
    if (width == 1) {
      round.push_back(run(base));
    } else {
      std::vector<std::future<CellResult>> futures;
      for (std::size_t f = base; f < end; ++f) futures.push_back(std::async(std::launch::async, run, f));
      for (auto& fu : futures) round.push_back(fu.get());
    }
    for (const auto& r : round) result.examined += r.examined;
    for (const auto& r : round) {
      if (r.witness) {
        result.witness = r.witness;
        return result;
      }
    }
  }
  return result;
}

void check_atoms(const SearchBounds& bounds) {
  std::set<std::string> seen(bounds.atoms.begin(), bounds.atoms.end());
  if (seen.size() != bounds.atoms.size()) throw std::invalid_argument("bounds list an atom twice");
  if (bounds.max_individuals == 0 || bounds.max_valuations == 0)
    throw std::invalid_argument("bounds must be positive");
}

}  // namespace

std::vector<std::string> atoms_needed(const std::vector<Formula>& premises, const Formula& conclusion) {
  std::vector<std::string> names;
  for (const auto& p : premises) atoms_of(p, names);
  atoms_of(conclusion, names);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

SearchOutcome find_countermodel(const std::vector<Formula>& premises, const Formula& conclusion,
                                const SearchBounds& bounds, unsigned jobs) {
  check_atoms(bounds);
  for (const auto& a : atoms_needed(premises, conclusion))
    if (std::find(bounds.atoms.begin(), bounds.atoms.end(), a) == bounds.atoms.end())
      throw std::invalid_argument("bounds do not list atom '" + a + "'");
  SearchOutcome out;
  for (std::size_t n = 1; n <= bounds.max_individuals; ++n) {
    for (std::size_t k = 1; k <= bounds.max_valuations; ++k) {
      Cell cell(n, k, bounds.atoms.size());
      CellResult r = search_cell(cell, premises, conclusion, bounds.atoms, jobs);
      out.examined += r.examined;
      if (r.witness) {
        Model model = cell.build(*r.witness, bounds.atoms);
        if (check_entailment_on_model(model, premises, conclusion) != Entailment::Violated)
          throw std::logic_error("model search produced a witness that does not re-verify");
        out.model = std::move(model);
        out.individuals = n;
        out.valuations = k;
        return out;
      }
    }
  }
  return out;
}

void enumerate_models(const SearchBounds& bounds, const std::function<bool(const Model&)>& visit) {
  check_atoms(bounds);
  Cell cell(bounds.max_individuals, bounds.max_valuations, bounds.atoms.size());
  std::vector<std::uint64_t> all(cell.code_count());
  std::iota(all.begin(), all.end(), std::uint64_t{0});
  for (std::size_t first = 0; first < all.size(); ++first) {
    bool stopped = scan_subtree(cell, all, first, [&](const std::vector<std::uint64_t>& codes) {
      return !visit(cell.build(codes, bounds.atoms));
    });
    if (stopped) return;
  }
}

std::vector<Model> enumerate_models(const SearchBounds& bounds) {
  std::vector<Model> out;
  enumerate_models(bounds, [&](const Model& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace aml
