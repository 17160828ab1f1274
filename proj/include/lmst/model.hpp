#pragma once

#include <cstdint>
#include <optional>

#include "lmst/formula.hpp"

namespace lmst {

using Mask = std::uint32_t;

enum class Variant { NoEmpty, WithEmpty };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& s);

/// How to fill the label injection of a canonical model.
struct LabelSpec {
  enum class Kind { Identity, SwapAtoms, Table };
  Kind kind = Kind::Identity;
  std::vector<std::pair<Mask, Mask>> table;

  static LabelSpec identity() { return {}; }
  /// Swaps the labels of the two lowest singletons, fixes the rest.
  static LabelSpec swap_atoms() { return LabelSpec{Kind::SwapAtoms, {}}; }
  static LabelSpec from_table(std::vector<std::pair<Mask, Mask>> t) {
    return LabelSpec{Kind::Table, std::move(t)};
  }
};

/// Finite interpretation over k atoms. The domain is the set of k-bit
/// masks, without 0 in the NoEmpty variant. Membership is derived:
/// a in Y iff a is a singleton mask whose bit is set in Y, which builds
/// extensionality and the singleton axioms into the encoding. The label
/// map is an injection of the domain into itself.
class Model {
 public:
  static Model canonical(int k, Variant variant, const LabelSpec& spec = {});
  /// `images[i]` is the label of the i-th domain element in ascending
  /// mask order.
  static Model from_permutation(int k, Variant variant, const std::vector<Mask>& images);
  /// Skips validation; lets tests build broken models (e.g. a
  /// non-injective label) to watch the axiom checker catch them.
  static Model unchecked(int k, Variant variant, std::vector<Mask> label_by_mask);

  static Model from_json(const json& j);
  json to_json() const;

  int atoms() const { return k_; }
  Variant variant() const { return variant_; }
  const std::vector<Mask>& domain() const { return domain_; }
  bool in_domain(Mask m) const;
  Mask label(Mask m) const;
  Mask full_mask() const { return static_cast<Mask>((1u << k_) - 1); }

 private:
  Model() = default;
  void validate() const;

  int k_ = 0;
  Variant variant_ = Variant::NoEmpty;
  std::vector<Mask> domain_;  // ascending
  std::vector<Mask> label_;   // indexed by mask; size 2^k
};

using Valuation = std::map<std::string, Mask>;

/// a in B under the canonical encoding.
bool member(Mask a, Mask b);
bool is_singleton(Mask a);

/// Tarskian truth value; quantifiers range over the domain, label terms
/// through the label map. Requires a primitive-atomic formula and a
/// valuation covering its free variables.
bool eval(const Model& m, const Formula& f, const Valuation& v);

/// Object extension of phi: the union of label(y) over all domain
/// elements y satisfying phi(y). Absent when the union is empty in the
/// NoEmpty variant. Free variables besides `var` must be bound by
/// `params`.
std::optional<Mask> ext(const Model& m, const Formula& phi, const std::string& var,
                        const Valuation& params = {});

// ---- axiom checking ----

struct AxiomVerdict {
  bool applicable = true;  // axiom 2 is dropped in the WithEmpty variant
  bool holds = true;
  std::string note;
  json witness;  // valuation-like object when the axiom fails
};

struct Scheme5Entry {
  std::string formula;
  bool holds = true;
  bool vacuous = false;  // no singleton satisfies the formula (NoEmpty antecedent)
  std::string note;
};

struct Scheme7Violation {
  int i = 0, j = 0;
  std::string phi, pi;
  Mask extension = 0;  // the shared extension
  bool extension_absent = false;
  Mask witness = 0;  // element where the predicates disagree
};

struct Scheme7Skip {
  int index = 0;
  std::string formula;
  std::string reason;
};

struct Scheme7Report {
  std::vector<Scheme7Violation> violations;
  std::vector<Scheme7Skip> out_of_scheme;
  int checked_pairs = 0;
};

struct AxiomReport {
  std::map<std::string, AxiomVerdict> axioms;  // keys "1","2","3","4","6","8"
  std::vector<Scheme5Entry> scheme5;
  Scheme7Report scheme7;
  bool all_hold() const;
};

/// Exhaustively verifies axioms 1-4, 6, 8 and instantiates schemes 5
/// and 7 with the corpus formulas. Failures are reported with
/// witnesses, never thrown.
AxiomReport check_axioms(const Model& m, const std::vector<Formula>& corpus = {},
                         const DefinitionTable& defs = DefinitionTable::standard());

/// Pairwise extensional-paralleling check over the corpus. Formulas
/// with parameters or a separate-mode multi-cyclic classification are
/// skipped as out-of-scheme. A violation is a pair with equal
/// extensions (both absent counts as equal) yet a domain element where
/// the predicates disagree.
Scheme7Report check_scheme7(const Model& m, const std::vector<Formula>& corpus,
                            const DefinitionTable& defs = DefinitionTable::standard());

// ---- paradox replays ----

enum class RussellRelation { Subset, Membership };

struct RussellReport {
  RussellRelation relation = RussellRelation::Subset;
  bool strict = false;
  bool exists = false;  // X = ext(~(L z rel z)) present
  Mask set_x = 0;
  Mask label_x = 0;
  bool label_subset = false;  // label(X) subset of X
  bool x_qualifies = false;   // defining predicate holds at X itself
  std::vector<Mask> qualifiers;
  /// For each singleton bit of label(X), the qualifiers whose labels
  /// contain it: how the label of X overlaps the labels it collects.
  std::vector<std::pair<Mask, std::vector<Mask>>> cover;
};

RussellReport russell_analysis(const Model& m, RussellRelation rel, bool strict = false);

struct ConfusionReport {
  bool applicable = false;  // X exists
  bool strict = false;
  Mask set_x = 0, set_xstar = 0;
  bool equal = false;
  bool phi_at_x = false, phistar_at_x = false;
  bool disagree_at_x = false;
  bool ok() const { return applicable && equal && disagree_at_x; }
};

/// Computes X = ext(~(L z sub z)), then X* over the disjunction with
/// z = X where X enters as a valuation constant, and checks that the
/// two non-equivalent predicates received the same extension.
ConfusionReport confusion_demo(const Model& m, bool strict = false);

// ---- label search ----

struct SearchGoal {
  enum class Kind { RussellNonvacuous, Scheme7Violation, Custom };
  Kind kind = Kind::RussellNonvacuous;
  std::vector<Formula> corpus;     // Scheme7Violation
  std::optional<Formula> custom;   // Custom: closed formula to satisfy
};

struct SearchOptions {
  int limit = 1;
  /// When set, draws this many random label injections (seeded) instead
  /// of the full lexicographic enumeration.
  std::optional<int> sample;
  std::uint64_t seed = 1;
};

/// Enumerates label injections in lexicographic order over the
/// injection table (domain in ascending mask order) and returns up to
/// `limit` models satisfying the goal. Full enumeration is refused for
/// domains larger than 8 elements; use sampling there.
std::vector<Model> search_labels(int k, Variant variant, const SearchGoal& goal,
                                 const SearchOptions& opt = {});

json to_json(const AxiomReport& r);
json to_json(const Scheme7Report& r);
json to_json(const RussellReport& r);
json to_json(const ConfusionReport& r);

}  // namespace lmst
