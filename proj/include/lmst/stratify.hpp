#pragma once

#include <optional>

#include "lmst/formula.hpp"

namespace lmst {

struct StratConfig {
  /// Level offset contributed by each label application. The type rule
  /// for the label function is a free parameter of the analysis.
  long long delta_label = 0;
};

struct TypeAssignment {
  std::map<std::string, long long> levels;
};

/// One atom read as the difference constraint level(v) - level(u) = offset.
struct AtomConstraint {
  std::string u, v;
  long long offset = 0;
  std::string atom_text;
  std::vector<int> path;
};

/// Cycle of constraints whose offsets do not cancel.
struct StratWitness {
  std::vector<AtomConstraint> cycle;
  long long offset_sum = 0;
};

struct StratResult {
  std::optional<TypeAssignment> assignment;
  std::optional<StratWitness> witness;
  bool stratified() const { return assignment.has_value(); }
};

/// Difference-constraint feasibility by breadth-first propagation.
/// Membership atoms raise the level by one, identity atoms preserve it,
/// label applications add delta_label per nesting. Requires a
/// primitive-atomic formula. Unstratifiable is a normal result.
StratResult stratify(const Formula& f, const StratConfig& cfg = {});

struct CorpusEntry {
  std::string text;
  bool acyclic = false;
  bool stratified = false;
};

struct AcyclicStratReport {
  int total = 0;
  int acyclic = 0;
  int stratified = 0;
  std::vector<int> violations;  // indices that are acyclic yet unstratifiable
  std::vector<CorpusEntry> per_formula;
  bool clean() const { return violations.empty(); }
};

/// Normalizes each corpus formula, classifies acyclicity, runs stratify,
/// and aggregates in corpus order.
AcyclicStratReport acyclic_implies_stratified_check(const std::vector<Formula>& corpus,
                                                    const StratConfig& cfg = {},
                                                    const DefinitionTable& defs = DefinitionTable::standard());

json to_json(const StratResult& r);
json to_json(const AcyclicStratReport& r);

}  // namespace lmst
