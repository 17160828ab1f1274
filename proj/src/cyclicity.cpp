#include "lmst/cyclicity.hpp"

#include <algorithm>
#include <numeric>

namespace lmst {

namespace {

struct AtomOcc {
  std::string a, b;  // variable set of the atom; a == b for one-variable atoms
  std::vector<int> path;
  std::string text;
};

void collect_atoms(const Formula& f, std::vector<int>& path, std::vector<AtomOcc>& out) {
  switch (f.op) {
    case Conn::Atom: {
      if (f.lhs.labels > 1 || f.rhs.labels > 1)
        throw semantic_error("atom '" + render(f) + "' has label depth > 1; flatten_terms first");
      out.push_back(AtomOcc{f.lhs.var, f.rhs.var, path, render(f)});
      break;
    }
    case Conn::Pred:
      throw semantic_error("defined predicate '" + f.name + "' not expanded; expand_definitions first");
    default:
      for (size_t i = 0; i < f.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect_atoms(f.kids[i], path, out);
        path.pop_back();
      }
  }
}

std::vector<AtomOcc> atoms_of(const Formula& f) {
  std::vector<AtomOcc> out;
  std::vector<int> path;
  collect_atoms(f, path, out);
  return out;
}

// Union-find cycle test: a redundant union (including any self-loop)
// means the component has as many edges as nodes.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  /// Returns false when both endpoints were already connected.
  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
    return true;
  }
};

bool atoms_cyclic(const std::vector<AtomOcc>& atoms) {
  std::map<std::string, int> idx;
  for (const AtomOcc& at : atoms) {
    idx.emplace(at.a, static_cast<int>(idx.size()));
    idx.emplace(at.b, static_cast<int>(idx.size()));
  }
  UnionFind uf(idx.size());
  for (const AtomOcc& at : atoms)
    if (!uf.unite(idx.at(at.a), idx.at(at.b))) return true;
  return false;
}

void enumerate_rec(const Formula& f, std::vector<int>& path, std::vector<OccurrenceSpan>& out) {
  if (atoms_cyclic(atoms_of(f))) out.push_back(OccurrenceSpan{path, f});
  for (size_t i = 0; i < f.kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    enumerate_rec(f.kids[i], path, out);
    path.pop_back();
  }
}

}  // namespace

VarGraph build_graph(const Formula& f) {
  VarGraph g;
  std::set<std::string> nodes;
  int occ = 0;
  for (const AtomOcc& at : atoms_of(f)) {
    nodes.insert(at.a);
    nodes.insert(at.b);
    g.edges.push_back(VarEdge{at.a, at.b, occ++, at.path, at.text});
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  return g;
}

bool is_cyclic(const VarGraph& g) {
  std::map<std::string, int> idx;
  for (const std::string& n : g.nodes) idx.emplace(n, static_cast<int>(idx.size()));
  UnionFind uf(idx.size());
  for (const VarEdge& e : g.edges)
    if (!uf.unite(idx.at(e.a), idx.at(e.b))) return true;
  return false;
}

std::vector<OccurrenceSpan> enumerate_cyclic_occurrences(const Formula& f) {
  std::vector<OccurrenceSpan> out;
  std::vector<int> path;
  enumerate_rec(f, path, out);
  return out;
}

bool spans_disjoint(const std::vector<int>& p, const std::vector<int>& q) {
  size_t n = std::min(p.size(), q.size());
  for (size_t i = 0; i < n; ++i)
    if (p[i] != q[i]) return true;
  return false;  // one is a prefix of the other
}

bool is_multi_cyclic(const Formula& f, MultiCyclicMode mode) {
  std::vector<OccurrenceSpan> occs = enumerate_cyclic_occurrences(f);
  if (mode == MultiCyclicMode::Literal) return occs.size() >= 2;
  for (size_t i = 0; i < occs.size(); ++i)
    for (size_t j = i + 1; j < occs.size(); ++j)
      if (spans_disjoint(occs[i].path, occs[j].path)) return true;
  return false;
}

bool relaxed_admissible(const Formula& f) {
  std::vector<OccurrenceSpan> occs = enumerate_cyclic_occurrences(f);
  std::vector<Formula> shapes;
  shapes.reserve(occs.size());
  for (const OccurrenceSpan& o : occs) shapes.push_back(canonical_vars(o.subformula));
  for (size_t i = 0; i < occs.size(); ++i)
    for (size_t j = i + 1; j < occs.size(); ++j)
      if (spans_disjoint(occs[i].path, occs[j].path) && alpha_eq(shapes[i], shapes[j])) return false;
  return true;
}

Classification classify(const Formula& f, const DefinitionTable& defs) {
  Classification c;
  c.formula_text = render(f);
  c.normalized = normalize(f, defs);
  c.cyclic_occurrences = enumerate_cyclic_occurrences(c.normalized);
  c.cyclic = !c.cyclic_occurrences.empty();
  c.acyclic = !c.cyclic;
  c.multi_cyclic_literal = c.cyclic_occurrences.size() >= 2;
  c.multi_cyclic_separate = false;
  for (size_t i = 0; i < c.cyclic_occurrences.size() && !c.multi_cyclic_separate; ++i)
    for (size_t j = i + 1; j < c.cyclic_occurrences.size(); ++j)
      if (spans_disjoint(c.cyclic_occurrences[i].path, c.cyclic_occurrences[j].path)) {
        c.multi_cyclic_separate = true;
        break;
      }
  c.relaxed_admissible = relaxed_admissible(c.normalized);
  c.parameter_free = free_vars(c.normalized).empty();
  return c;
}

Classification classify(const std::string& text, const DefinitionTable& defs) {
  Classification c = classify(parse(text, defs), defs);
  c.formula_text = text;
  return c;
}

std::string export_dot(const VarGraph& g) {
  std::string out = "graph vargraph {\n";
  for (const std::string& n : g.nodes) out += "  \"" + n + "\";\n";
  for (const VarEdge& e : g.edges)
    out += "  \"" + e.a + "\" -- \"" + e.b + "\" [label=\"" + e.atom_text + "\"];\n";
  out += "}\n";
  return out;
}

json to_json(const Classification& c) {
  json occs = json::array();
  for (const OccurrenceSpan& o : c.cyclic_occurrences) occs.push_back(o.path);
  return {
      {"formula", c.formula_text},
      {"acyclic", c.acyclic},
      {"cyclic", c.cyclic},
      {"multi_cyclic", {{"separate", c.multi_cyclic_separate}, {"literal", c.multi_cyclic_literal}}},
      {"relaxed_admissible", c.relaxed_admissible},
      {"parameter_free", c.parameter_free},
      {"cyclic_occurrences", std::move(occs)},
  };
}

}  // namespace lmst
