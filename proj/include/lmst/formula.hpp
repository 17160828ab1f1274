#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lmst {

using json = nlohmann::json;

struct parse_error : std::runtime_error {
  int line = 0;
  int col = 0;
  parse_error(const std::string& what, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
};

struct semantic_error : std::runtime_error {
  explicit semantic_error(const std::string& what) : std::runtime_error(what) {}
};

/// A term is a variable under zero or more applications of the label
/// function; `labels` is the nesting depth.
struct Term {
  std::string var;
  int labels = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class AtomKind { Eq, In };

enum class Conn { Atom, Pred, Not, And, Or, Imp, Iff, All, Ex };

/// Formula tree. Leaves are primitive atoms (=, in) or applications of
/// defined predicates pending expansion. `kids` holds one child for
/// Not/All/Ex and two for the binary connectives.
struct Formula {
  Conn op = Conn::Atom;
  AtomKind atom = AtomKind::Eq;  // valid when op == Atom
  Term lhs, rhs;                 // valid when op == Atom
  std::string name;              // predicate name (Pred) or bound variable (All/Ex)
  std::vector<Term> args;        // valid when op == Pred
  std::vector<Formula> kids;

  static Formula Eq(Term a, Term b);
  static Formula In(Term a, Term b);
  static Formula Pred(std::string name, std::vector<Term> args);
  static Formula Not(Formula a);
  static Formula And(Formula a, Formula b);
  static Formula Or(Formula a, Formula b);
  static Formula Imp(Formula a, Formula b);
  static Formula Iff(Formula a, Formula b);
  static Formula All(std::string v, Formula body);
  static Formula Ex(std::string v, Formula body);

  bool is_atom() const { return op == Conn::Atom; }
  bool is_pred() const { return op == Conn::Pred; }
  bool is_quant() const { return op == Conn::All || op == Conn::Ex; }

  /// Subformula at a root-to-node path of child indices; nullptr if the
  /// path leaves the tree.
  const Formula* at_path(const std::vector<int>& path) const;

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Expansion template for a defined predicate; `params` are free in
/// `body`, which contains only primitive atoms.
struct Definition {
  std::vector<std::string> params;
  Formula body;
};

class DefinitionTable {
 public:
  /// Built-in table: sub (inclusion), psub (strict inclusion),
  /// single (exactly one member).
  static const DefinitionTable& standard();

  void define(const std::string& name, std::vector<std::string> params, Formula body);
  const Definition* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }

 private:
  std::map<std::string, Definition> defs_;
};

// ---- surface syntax ----

Formula parse(std::string_view text, const DefinitionTable& defs = DefinitionTable::standard());
std::string render(const Term& t);
std::string render(const Formula& f);

// ---- variable bookkeeping ----

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> all_vars(const Formula& f);

/// A name not in `used`, formed from `base` by appending the least
/// numeric suffix that avoids collisions.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

// ---- normalization passes ----

Formula expand_definitions(const Formula& f, const DefinitionTable& defs = DefinitionTable::standard());
Formula flatten_terms(const Formula& f);
Formula rename_apart(const Formula& f);

/// expand_definitions, then flatten_terms, then rename_apart.
Formula normalize(const Formula& f, const DefinitionTable& defs = DefinitionTable::standard());

// ---- comparison ----

/// Structural identity up to consistent renaming of bound variables;
/// free variables must match by name.
bool alpha_eq(const Formula& f, const Formula& g);

/// Renames every variable (free and bound alike) to _c0, _c1, ... in
/// order of first occurrence. Requires pairwise distinct binder names
/// (rename_apart output); used to compare occurrences as predicate
/// shapes regardless of which outer variables they mention.
Formula canonical_vars(const Formula& f);

// ---- JSON AST export ----

json to_json(const Term& t);
json to_json(const Formula& f);

}  // namespace lmst
