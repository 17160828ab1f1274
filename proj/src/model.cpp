#include "lmst/model.hpp"

#include <algorithm>
#include <bit>

#include "lmst/cyclicity.hpp"

namespace lmst {

std::string variant_name(Variant v) { return v == Variant::NoEmpty ? "no-empty" : "with-empty"; }

Variant variant_from_name(const std::string& s) {
  if (s == "no-empty") return Variant::NoEmpty;
  if (s == "with-empty") return Variant::WithEmpty;
  throw semantic_error("unknown variant '" + s + "' (expected no-empty or with-empty)");
}

bool is_singleton(Mask a) { return std::popcount(a) == 1; }

bool member(Mask a, Mask b) { return is_singleton(a) && (a & b) == a; }

// ---- Model ----

bool Model::in_domain(Mask m) const {
  if (m > full_mask()) return false;
  return m != 0 || variant_ == Variant::WithEmpty;
}

Mask Model::label(Mask m) const {
  if (!in_domain(m)) throw semantic_error("label applied outside the domain");
  return label_[m];
}

void Model::validate() const {
  if (k_ < 1) throw semantic_error("a model needs at least one atom");
  if (k_ > 16) throw semantic_error("k > 16 is not supported");
  if (k_ == 1 && variant_ == Variant::NoEmpty)
    throw semantic_error("k = 1 without the empty set has a single element; axiom 8 (distinct sets) is unsatisfiable");
  std::set<Mask> images;
  for (Mask d : domain_) {
    Mask l = label_[d];
    if (!in_domain(l)) throw semantic_error("label maps " + std::to_string(d) + " outside the domain");
    if (!images.insert(l).second)
      throw semantic_error("label table is not injective (image " + std::to_string(l) + " repeats)");
  }
}

static std::vector<Mask> make_domain(int k, Variant variant) {
  std::vector<Mask> d;
  Mask full = static_cast<Mask>((1u << k) - 1);
  for (Mask m = variant == Variant::WithEmpty ? 0 : 1; m <= full; ++m) d.push_back(m);
  return d;
}

Model Model::canonical(int k, Variant variant, const LabelSpec& spec) {
  if (k < 1) throw semantic_error("a model needs at least one atom");
  if (k > 16) throw semantic_error("k > 16 is not supported");
  Model m;
  m.k_ = k;
  m.variant_ = variant;
  m.domain_ = make_domain(k, variant);
  m.label_.assign(static_cast<size_t>(1u << k), 0);
  switch (spec.kind) {
    case LabelSpec::Kind::Identity:
      for (Mask d : m.domain_) m.label_[d] = d;
      break;
    case LabelSpec::Kind::SwapAtoms: {
      if (k < 2) throw semantic_error("swap-atoms labeling needs at least 2 atoms");
      for (Mask d : m.domain_) m.label_[d] = d;
      m.label_[1] = 2;
      m.label_[2] = 1;
      break;
    }
    case LabelSpec::Kind::Table: {
      std::set<Mask> given;
      for (auto [in, out] : spec.table) {
        if (!m.in_domain(in)) throw semantic_error("label table input " + std::to_string(in) + " outside the domain");
        if (!given.insert(in).second)
          throw semantic_error("label table lists input " + std::to_string(in) + " twice");
        m.label_[in] = out;
      }
      if (given.size() != m.domain_.size())
        throw semantic_error("label table must map every domain element exactly once");
      break;
    }
  }
  m.validate();
  return m;
}

Model Model::from_permutation(int k, Variant variant, const std::vector<Mask>& images) {
  Model m;
  m.k_ = k;
  m.variant_ = variant;
  m.domain_ = make_domain(k, variant);
  if (images.size() != m.domain_.size())
    throw semantic_error("permutation size does not match the domain");
  m.label_.assign(static_cast<size_t>(1u << k), 0);
  for (size_t i = 0; i < m.domain_.size(); ++i) m.label_[m.domain_[i]] = images[i];
  m.validate();
  return m;
}

Model Model::unchecked(int k, Variant variant, std::vector<Mask> label_by_mask) {
  Model m;
  m.k_ = k;
  m.variant_ = variant;
  m.domain_ = make_domain(k, variant);
  m.label_ = std::move(label_by_mask);
  m.label_.resize(static_cast<size_t>(1u << k), 0);
  return m;
}

json Model::to_json() const {
  json label = json::array();
  for (Mask d : domain_) label.push_back(json::array({d, label_[d]}));
  return {{"k", k_}, {"variant", variant_name(variant_)}, {"label", std::move(label)}};
}

Model Model::from_json(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("variant") || !j.contains("label"))
    throw parse_error("model json needs fields k, variant, label", 0, 0);
  if (!j["k"].is_number_integer() || !j["variant"].is_string() || !j["label"].is_array())
    throw parse_error("model json has wrongly typed fields", 0, 0);
  int k = j["k"].get<int>();
  if (k < 1 || k > 16) throw semantic_error("model json: k out of range");
  Variant variant = variant_from_name(j["variant"].get<std::string>());
  std::vector<std::pair<Mask, Mask>> table;
  auto mask_of = [](const json& e) {
    if (!e.is_number_integer() || e.get<long long>() < 0)
      throw parse_error("model json: masks must be non-negative integers", 0, 0);
    return static_cast<Mask>(e.get<long long>());
  };
  for (const json& e : j["label"]) {
    if (!e.is_array() || e.size() != 2)
      throw parse_error("model json: label entries must be [mask_in, mask_out] pairs", 0, 0);
    table.emplace_back(mask_of(e[0]), mask_of(e[1]));
  }
  return canonical(k, variant, LabelSpec::from_table(std::move(table)));
}

// ---- evaluation ----

namespace {

Mask term_value(const Model& m, const Term& t, const Valuation& v) {
  auto it = v.find(t.var);
  if (it == v.end()) throw semantic_error("unbound variable '" + t.var + "'");
  Mask x = it->second;
  if (!m.in_domain(x)) throw semantic_error("valuation of '" + t.var + "' is outside the domain");
  for (int i = 0; i < t.labels; ++i) x = m.label(x);
  return x;
}

bool eval_rec(const Model& m, const Formula& f, Valuation& v) {
  switch (f.op) {
    case Conn::Atom: {
      Mask a = term_value(m, f.lhs, v);
      Mask b = term_value(m, f.rhs, v);
      return f.atom == AtomKind::Eq ? a == b : member(a, b);
    }
    case Conn::Pred:
      throw semantic_error("cannot evaluate unexpanded predicate '" + f.name + "'");
    case Conn::Not:
      return !eval_rec(m, f.kids[0], v);
    case Conn::And:
      return eval_rec(m, f.kids[0], v) && eval_rec(m, f.kids[1], v);
    case Conn::Or:
      return eval_rec(m, f.kids[0], v) || eval_rec(m, f.kids[1], v);
    case Conn::Imp:
      return !eval_rec(m, f.kids[0], v) || eval_rec(m, f.kids[1], v);
    case Conn::Iff:
      return eval_rec(m, f.kids[0], v) == eval_rec(m, f.kids[1], v);
    case Conn::All:
    case Conn::Ex: {
      bool universal = f.op == Conn::All;
      auto it = v.find(f.name);
      std::optional<Mask> saved;
      if (it != v.end()) saved = it->second;
      bool result = universal;
      for (Mask d : m.domain()) {
        v[f.name] = d;
        bool b = eval_rec(m, f.kids[0], v);
        if (universal && !b) {
          result = false;
          break;
        }
        if (!universal && b) {
          result = true;
          break;
        }
      }
      if (saved) v[f.name] = *saved;
      else v.erase(f.name);
      return result;
    }
  }
  throw semantic_error("unreachable formula op");
}

}  // namespace

bool eval(const Model& m, const Formula& f, const Valuation& v) {
  Valuation scratch = v;
  return eval_rec(m, f, scratch);
}

std::optional<Mask> ext(const Model& m, const Formula& phi, const std::string& var, const Valuation& params) {
  std::set<std::string> frees = free_vars(phi);
  frees.erase(var);
  for (const auto& [name, _] : params) frees.erase(name);
  if (!frees.empty()) {
    std::string extra;
    for (const std::string& n : frees) extra += (extra.empty() ? "" : ", ") + n;
    throw semantic_error("formula has unbound parameters: " + extra);
  }
  Valuation v = params;
  Mask acc = 0;
  for (Mask d : m.domain()) {
    v[var] = d;
    if (eval(m, phi, v)) acc |= m.label(d);
  }
  if (m.variant() == Variant::NoEmpty && acc == 0) return std::nullopt;
  return acc;
}

// ---- axiom checking ----

bool AxiomReport::all_hold() const {
  for (const auto& [_, v] : axioms)
    if (v.applicable && !v.holds) return false;
  for (const Scheme5Entry& e : scheme5)
    if (!e.holds) return false;
  return scheme7.violations.empty();
}

Scheme7Report check_scheme7(const Model& m, const std::vector<Formula>& corpus, const DefinitionTable& defs) {
  Scheme7Report rep;
  struct InScheme {
    int index;
    std::string text;
    std::optional<Mask> extension;
    std::vector<bool> sat;  // aligned with m.domain()
  };
  std::vector<InScheme> in_scheme;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Formula& f = corpus[i];
    std::string text = render(f);
    std::set<std::string> frees = free_vars(f);
    if (frees.empty()) {
      rep.out_of_scheme.push_back({static_cast<int>(i), text, "no free variable to extend over"});
      continue;
    }
    if (frees.size() > 1) {
      std::string names;
      for (const std::string& n : frees) names += (names.empty() ? "" : ", ") + n;
      rep.out_of_scheme.push_back({static_cast<int>(i), text, "parameters present: " + names});
      continue;
    }
    Classification c = classify(f, defs);
    if (c.multi_cyclic_separate) {
      rep.out_of_scheme.push_back({static_cast<int>(i), text, "multi-cyclic"});
      continue;
    }
    const std::string var = *frees.begin();
    InScheme entry;
    entry.index = static_cast<int>(i);
    entry.text = text;
    entry.extension = ext(m, c.normalized, var);
    entry.sat.reserve(m.domain().size());
    for (Mask d : m.domain()) entry.sat.push_back(eval(m, c.normalized, {{var, d}}));
    in_scheme.push_back(std::move(entry));
  }
  for (size_t a = 0; a < in_scheme.size(); ++a) {
    for (size_t b = a; b < in_scheme.size(); ++b) {
      ++rep.checked_pairs;
      const InScheme& fa = in_scheme[a];
      const InScheme& fb = in_scheme[b];
      if (fa.extension != fb.extension) continue;
      for (size_t d = 0; d < m.domain().size(); ++d) {
        if (fa.sat[d] != fb.sat[d]) {
          Scheme7Violation viol;
          viol.i = fa.index;
          viol.j = fb.index;
          viol.phi = fa.text;
          viol.pi = fb.text;
          viol.extension_absent = !fa.extension.has_value();
          viol.extension = fa.extension.value_or(0);
          viol.witness = m.domain()[d];
          rep.violations.push_back(std::move(viol));
          break;
        }
      }
    }
  }
  return rep;
}

AxiomReport check_axioms(const Model& m, const std::vector<Formula>& corpus, const DefinitionTable& defs) {
  AxiomReport rep;
  const std::vector<Mask>& dom = m.domain();

  // (1) extensionality: same members, same set
  AxiomVerdict ax1;
  ax1.note = "sets with the same members are identical";
  for (size_t i = 0; i < dom.size() && ax1.holds; ++i)
    for (size_t j = i + 1; j < dom.size(); ++j) {
      bool same = true;
      for (Mask s : dom)
        if (is_singleton(s) && member(s, dom[i]) != member(s, dom[j])) {
          same = false;
          break;
        }
      if (same) {
        ax1.holds = false;
        ax1.witness = {{"A", dom[i]}, {"B", dom[j]}};
        break;
      }
    }
  rep.axioms["1"] = std::move(ax1);

  // (2) all sets have members; dropped when the empty set is admitted
  AxiomVerdict ax2;
  if (m.variant() == Variant::WithEmpty) {
    ax2.applicable = false;
    ax2.note = "dropped: the empty set represents the never fulfilled formulas";
  } else {
    ax2.note = "all sets have members";
    for (Mask d : dom) {
      bool has = false;
      for (Mask s : dom)
        if (member(s, d)) {
          has = true;
          break;
        }
      if (!has) {
        ax2.holds = false;
        ax2.witness = {{"set", d}};
        break;
      }
    }
  }
  rep.axioms["2"] = std::move(ax2);

  // (3) a singleton is its member
  AxiomVerdict ax3;
  ax3.note = "a singleton is its member";
  for (Mask d : dom)
    if (is_singleton(d) && !member(d, d)) {
      ax3.holds = false;
      ax3.witness = {{"singleton", d}};
      break;
    }
  rep.axioms["3"] = std::move(ax3);

  // (4) a member is singleton
  AxiomVerdict ax4;
  ax4.note = "a member is singleton";
  for (Mask a : dom) {
    for (Mask b : dom)
      if (member(a, b) && !is_singleton(a)) {
        ax4.holds = false;
        ax4.witness = {{"member", a}, {"of", b}};
        break;
      }
    if (!ax4.holds) break;
  }
  rep.axioms["4"] = std::move(ax4);

  // (6) distinct sets have distinct labels
  AxiomVerdict ax6;
  ax6.note = "distinct sets have distinct labels";
  {
    std::map<Mask, Mask> seen;
    for (Mask d : dom) {
      Mask l = m.label(d);
      auto [it, fresh] = seen.emplace(l, d);
      if (!fresh) {
        ax6.holds = false;
        ax6.witness = {{"A", it->second}, {"B", d}, {"label", l}};
        break;
      }
    }
  }
  rep.axioms["6"] = std::move(ax6);

  // (8) there are distinct sets
  AxiomVerdict ax8;
  ax8.note = "there are distinct sets";
  if (dom.size() < 2) {
    ax8.holds = false;
    ax8.witness = {{"domain_size", dom.size()}};
  }
  rep.axioms["8"] = std::move(ax8);

  // scheme (5): the set of all singletons satisfying a formula exists
  for (const Formula& f : corpus) {
    Scheme5Entry e;
    e.formula = render(f);
    std::set<std::string> frees = free_vars(f);
    if (frees.size() != 1) {
      e.note = "skipped: needs exactly one free variable";
      rep.scheme5.push_back(std::move(e));
      continue;
    }
    const std::string var = *frees.begin();
    Formula n = normalize(f, defs);
    std::set<Mask> sats;
    for (Mask d : dom)
      if (is_singleton(d) && eval(m, n, {{var, d}})) sats.insert(d);
    Mask u = 0;
    for (Mask s : sats) u |= s;
    if (sats.empty() && m.variant() == Variant::NoEmpty) {
      e.vacuous = true;
      e.note = "no singleton satisfies the formula; no set is required";
    } else {
      bool present = m.in_domain(u);
      bool exact = true;
      for (Mask s : dom)
        if (is_singleton(s) && (sats.count(s) != 0) != member(s, u)) exact = false;
      e.holds = present && exact;
      e.note = e.holds ? "set of satisfying singletons exists" : "candidate set missing or inexact";
    }
    rep.scheme5.push_back(std::move(e));
  }

  rep.scheme7 = check_scheme7(m, corpus, defs);
  return rep;
}

// ---- paradox replays ----

namespace {

Formula russell_predicate(RussellRelation rel, bool strict) {
  Term z{"z", 0}, lz{"z", 1};
  if (rel == RussellRelation::Membership) return Formula::Not(Formula::In(lz, z));
  return Formula::Not(Formula::Pred(strict ? "psub" : "sub", {lz, z}));
}

}  // namespace

RussellReport russell_analysis(const Model& m, RussellRelation rel, bool strict) {
  RussellReport rep;
  rep.relation = rel;
  rep.strict = strict;
  Formula phi = normalize(russell_predicate(rel, strict));
  Mask x = 0;
  for (Mask d : m.domain())
    if (eval(m, phi, {{"z", d}})) {
      rep.qualifiers.push_back(d);
      x |= m.label(d);
    }
  rep.exists = x != 0 || m.variant() == Variant::WithEmpty;
  if (!rep.exists) return rep;
  rep.set_x = x;
  rep.label_x = m.label(x);
  rep.label_subset = (rep.label_x & x) == rep.label_x;
  rep.x_qualifies = eval(m, phi, {{"z", x}});
  for (int b = 0; b < m.atoms(); ++b) {
    Mask bit = static_cast<Mask>(1u << b);
    if ((rep.label_x & bit) == 0) continue;
    std::vector<Mask> containing;
    for (Mask q : rep.qualifiers)
      if ((m.label(q) & bit) != 0) containing.push_back(q);
    rep.cover.emplace_back(bit, std::move(containing));
  }
  return rep;
}

ConfusionReport confusion_demo(const Model& m, bool strict) {
  ConfusionReport rep;
  rep.strict = strict;
  Formula raw = russell_predicate(RussellRelation::Subset, strict);
  Formula phi = normalize(raw);
  std::optional<Mask> x = ext(m, phi, "z");
  if (!x) return rep;  // inapplicable: X does not exist
  rep.applicable = true;
  rep.set_x = *x;

  std::string p = fresh_name("p", all_vars(raw));
  Formula phistar = normalize(Formula::Or(raw, Formula::Eq(Term{"z", 0}, Term{p, 0})));
  Valuation params{{p, *x}};
  std::optional<Mask> xstar = ext(m, phistar, "z", params);
  rep.set_xstar = xstar.value_or(0);
  rep.equal = xstar.has_value() && *xstar == *x;
  rep.phi_at_x = eval(m, phi, {{"z", *x}});
  Valuation at_x = params;
  at_x["z"] = *x;
  rep.phistar_at_x = eval(m, phistar, at_x);
  rep.disagree_at_x = rep.phi_at_x != rep.phistar_at_x;
  return rep;
}

// ---- label search ----

namespace {

struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

bool goal_satisfied(const Model& m, const SearchGoal& goal, const DefinitionTable& defs) {
  switch (goal.kind) {
    case SearchGoal::Kind::RussellNonvacuous:
      return russell_analysis(m, RussellRelation::Subset).exists;
    case SearchGoal::Kind::Scheme7Violation:
      return !check_scheme7(m, goal.corpus, defs).violations.empty();
    case SearchGoal::Kind::Custom: {
      if (!goal.custom) throw semantic_error("custom goal needs a formula");
      Formula n = normalize(*goal.custom, defs);
      if (!free_vars(n).empty()) throw semantic_error("custom goal formula must be closed");
      return eval(m, n, {});
    }
  }
  return false;
}

}  // namespace

std::vector<Model> search_labels(int k, Variant variant, const SearchGoal& goal, const SearchOptions& opt) {
  const DefinitionTable& defs = DefinitionTable::standard();
  std::vector<Mask> domain = make_domain(k, variant);
  if (k < 1 || (k == 1 && variant == Variant::NoEmpty))
    throw semantic_error("no valid models for these parameters (axiom 8 needs two sets)");
  std::vector<Model> hits;
  auto consider = [&](const std::vector<Mask>& images) {
    Model m = Model::from_permutation(k, variant, images);
    if (goal_satisfied(m, goal, defs)) hits.push_back(std::move(m));
    return static_cast<int>(hits.size()) >= opt.limit;
  };
  if (opt.sample) {
    SplitMix rng(opt.seed);
    for (int n = 0; n < *opt.sample && static_cast<int>(hits.size()) < opt.limit; ++n) {
      std::vector<Mask> images = domain;
      for (int i = static_cast<int>(images.size()) - 1; i > 0; --i)
        std::swap(images[i], images[rng.below(i + 1)]);
      consider(images);
    }
    return hits;
  }
  if (domain.size() > 8)
    throw semantic_error("full enumeration of " + std::to_string(domain.size()) +
                         "! labelings is infeasible; use sampling");
  std::vector<Mask> images = domain;
  do {
    if (consider(images)) break;
  } while (std::next_permutation(images.begin(), images.end()));
  return hits;
}

// ---- JSON reports ----

json to_json(const Scheme7Report& r) {
  json viols = json::array();
  for (const Scheme7Violation& v : r.violations) {
    json j = {{"i", v.i}, {"j", v.j}, {"phi", v.phi}, {"pi", v.pi}, {"witness", v.witness}};
    if (v.extension_absent) j["extension"] = nullptr;
    else j["extension"] = v.extension;
    viols.push_back(std::move(j));
  }
  json skips = json::array();
  for (const Scheme7Skip& s : r.out_of_scheme)
    skips.push_back({{"index", s.index}, {"formula", s.formula}, {"reason", s.reason}});
  return {{"violations", std::move(viols)}, {"out_of_scheme", std::move(skips)}, {"checked_pairs", r.checked_pairs}};
}

json to_json(const AxiomReport& r) {
  json axioms = json::object();
  for (const auto& [key, v] : r.axioms) {
    json j = {{"applicable", v.applicable}, {"holds", v.holds}, {"note", v.note}};
    if (!v.witness.is_null()) j["witness"] = v.witness;
    axioms[key] = std::move(j);
  }
  json s5 = json::array();
  for (const Scheme5Entry& e : r.scheme5)
    s5.push_back({{"formula", e.formula}, {"holds", e.holds}, {"vacuous", e.vacuous}, {"note", e.note}});
  return {{"axioms", std::move(axioms)},
          {"scheme5", std::move(s5)},
          {"scheme7", to_json(r.scheme7)},
          {"all_hold", r.all_hold()}};
}

json to_json(const RussellReport& r) {
  json j;
  j["relation"] = r.relation == RussellRelation::Subset ? "subset" : "membership";
  j["strict"] = r.strict;
  j["exists"] = r.exists;
  if (r.exists) {
    j["X"] = r.set_x;
    j["label_X"] = r.label_x;
    j["label_subset_of_X"] = r.label_subset;
    j["X_qualifies"] = r.x_qualifies;
    j["qualifiers"] = r.qualifiers;
    json cover = json::array();
    for (const auto& [bit, qs] : r.cover) cover.push_back({{"element", bit}, {"covered_by", qs}});
    j["cover"] = std::move(cover);
  } else {
    j["note"] = "X does not exist; the analysis is vacuous";
  }
  return j;
}

json to_json(const ConfusionReport& r) {
  json j;
  j["applicable"] = r.applicable;
  j["strict"] = r.strict;
  if (r.applicable) {
    j["X"] = r.set_x;
    j["X_star"] = r.set_xstar;
    j["equal"] = r.equal;
    j["phi_at_X"] = r.phi_at_x;
    j["phi_star_at_X"] = r.phistar_at_x;
    j["predicates_disagree_at_X"] = r.disagree_at_x;
  } else {
    j["note"] = "X does not exist in this model";
  }
  return j;
}

}  // namespace lmst
