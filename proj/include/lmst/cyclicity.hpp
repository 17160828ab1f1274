#pragma once

#include "lmst/formula.hpp"

namespace lmst {

/// Edge of the variable multigraph: one atom occurrence. a == b encodes
/// a self-loop. `occurrence` is the pre-order index of the atom, `path`
/// its root-to-atom child path.
struct VarEdge {
  std::string a, b;
  int occurrence = 0;
  std::vector<int> path;
  std::string atom_text;
};

struct VarGraph {
  std::vector<std::string> nodes;  // sorted, unique; every node occurs in some atom
  std::vector<VarEdge> edges;      // pre-order of atom occurrences, multiplicity kept
};

/// A subformula occurrence: path from the root plus the subformula.
struct OccurrenceSpan {
  std::vector<int> path;
  Formula subformula;
};

enum class MultiCyclicMode { Separate, Literal };

struct Classification {
  bool acyclic = true;
  bool cyclic = false;
  bool multi_cyclic_separate = false;
  bool multi_cyclic_literal = false;
  bool relaxed_admissible = true;
  bool parameter_free = false;
  std::vector<OccurrenceSpan> cyclic_occurrences;  // over the normalized formula
  Formula normalized;
  std::string formula_text;  // input as given
};

/// Requires a primitive-atomic, flattened, renamed-apart formula.
VarGraph build_graph(const Formula& f);

/// True iff some connected component has edge count >= node count
/// (self-loops count one); equivalently, the multigraph is not a forest.
bool is_cyclic(const VarGraph& g);

/// All subformula occurrences whose own atoms induce a cyclic graph,
/// in pre-order (root to leaf, left to right).
std::vector<OccurrenceSpan> enumerate_cyclic_occurrences(const Formula& f);

/// Neither path a prefix of the other.
bool spans_disjoint(const std::vector<int>& p, const std::vector<int>& q);

/// Separate: two cyclic occurrences with disjoint spans exist.
/// Literal: at least two cyclic occurrences, nested or not.
bool is_multi_cyclic(const Formula& f, MultiCyclicMode mode = MultiCyclicMode::Separate);

/// True iff no two disjoint cyclic occurrences have the same shape,
/// where shape is compared after canonical_vars renaming (so `x in x`
/// and `y in y` count as the same cyclic condition).
bool relaxed_admissible(const Formula& f);

Classification classify(const Formula& f, const DefinitionTable& defs = DefinitionTable::standard());
Classification classify(const std::string& text, const DefinitionTable& defs = DefinitionTable::standard());

std::string export_dot(const VarGraph& g);

json to_json(const Classification& c);

}  // namespace lmst
