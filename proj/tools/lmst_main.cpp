// lmst: classify formulas by cyclicity, check stratification, build and
// probe finite labeled-mereology models.
//
// Exit codes: 0 success / property holds, 1 violation or demo failure,
// 2 input error, 3 semantic error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lmst/corpus.hpp"
#include "lmst/cyclicity.hpp"
#include "lmst/formula.hpp"
#include "lmst/gen.hpp"
#include "lmst/model.hpp"
#include "lmst/stratify.hpp"

using namespace lmst;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;
constexpr int kSemanticError = 3;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  // LMST_SEED overrides whatever the flags picked
  if (const char* env = std::getenv("LMST_SEED")) return std::strtoull(env, nullptr, 10);
  return flag_seed;
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open model file: " + path, 0, 0);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("model file " + path + ": " + e.what(), 0, 0);
  }
  return Model::from_json(j);
}

LabelSpec label_spec_from_flag(const std::string& flag) {
  if (flag == "identity") return LabelSpec::identity();
  if (flag == "swap") return LabelSpec::swap_atoms();
  std::ifstream in(flag);
  if (!in) throw parse_error("label spec '" + flag + "' is not identity, swap, or a readable file", 0, 0);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("label file " + flag + ": " + e.what(), 0, 0);
  }
  if (j.is_object() && j.contains("label")) j = j["label"];
  if (!j.is_array()) throw parse_error("label file must hold [[mask_in, mask_out], ...]", 0, 0);
  std::vector<std::pair<Mask, Mask>> table;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw parse_error("label file entries must be [mask_in, mask_out] pairs", 0, 0);
    table.emplace_back(e[0].get<Mask>(), e[1].get<Mask>());
  }
  return LabelSpec::from_table(std::move(table));
}

// ---- subcommand state ----

struct ClassifyCmd {
  std::string formula;
  std::string format = "json";
  std::string mode = "separate";
};

struct GraphCmd {
  std::string formula;
  std::string format = "dot";
};

struct AstCmd {
  std::string formula;
  bool raw = false;
  bool normalized = false;
};

struct StratifyCmd {
  std::string formula;
  long long delta = 0;
  std::string format = "json";
};

struct ModelBuildCmd {
  int atoms = 2;
  std::string variant = "no-empty";
  std::string label = "identity";
  std::string out;
};

struct ModelCheckCmd {
  std::string model;
  std::string corpus;
};

struct ModelExtCmd {
  std::string model;
  std::string formula;
  std::string var;
};

struct ModelDemoCmd {
  std::string which;
  std::string model;
  std::string relation = "subset";
  bool strict = false;
};

struct ModelSearchCmd {
  int atoms = 2;
  std::string variant = "no-empty";
  std::string goal;
  std::string corpus;
  std::string formula;
  int limit = 1;
  std::optional<int> sample;
  std::uint64_t seed = 1;
};

struct CorpusRunCmd {
  std::vector<std::string> files;
  int generate = 0;
  std::uint64_t seed = 1;
  long long delta = 0;
  int max_atoms = 6;
  int max_vars = 4;
};

int run_classify(const ClassifyCmd& c) {
  Classification r = classify(c.formula);
  if (c.format == "text") {
    bool multi = c.mode == "literal" ? r.multi_cyclic_literal : r.multi_cyclic_separate;
    std::cout << (r.cyclic ? "cyclic" : "acyclic") << (multi ? ", multi-cyclic" : "")
              << (r.parameter_free ? ", parameter-free" : ", has parameters")
              << (r.relaxed_admissible ? ", relaxed-admissible" : ", not relaxed-admissible") << "\n";
  } else {
    emit(to_json(r));
  }
  return kOk;
}

int run_graph(const GraphCmd& c) {
  VarGraph g = build_graph(normalize(parse(c.formula)));
  if (c.format == "dot") {
    std::cout << export_dot(g);
  } else {
    json edges = json::array();
    for (const VarEdge& e : g.edges)
      edges.push_back({{"a", e.a}, {"b", e.b}, {"occurrence", e.occurrence}, {"path", e.path}, {"atom", e.atom_text}});
    emit(json{{"nodes", g.nodes}, {"edges", std::move(edges)}});
  }
  return kOk;
}

int run_ast(const AstCmd& c) {
  Formula f = parse(c.formula);
  if (c.normalized) f = normalize(f);
  else if (!c.raw) f = expand_definitions(f);
  emit(to_json(f));
  return kOk;
}

int run_stratify(const StratifyCmd& c) {
  StratResult r = stratify(normalize(parse(c.formula)), StratConfig{c.delta});
  if (c.format == "text") {
    if (r.stratified()) {
      std::cout << "stratified:";
      for (const auto& [v, l] : r.assignment->levels) std::cout << " " << v << "=" << l;
      std::cout << "\n";
    } else {
      std::cout << "unstratifiable; cycle offsets sum to " << r.witness->offset_sum << "\n";
    }
  } else {
    emit(to_json(r));
  }
  return kOk;
}

int run_model_build(const ModelBuildCmd& c) {
  Model m = Model::canonical(c.atoms, variant_from_name(c.variant), label_spec_from_flag(c.label));
  json j = m.to_json();
  if (c.out.empty()) {
    emit(j);
  } else {
    std::ofstream out(c.out);
    if (!out) throw parse_error("cannot write " + c.out, 0, 0);
    out << j.dump(2) << "\n";
  }
  return kOk;
}

int run_model_check(const ModelCheckCmd& c) {
  Model m = load_model(c.model);
  std::vector<Formula> corpus;
  if (!c.corpus.empty()) corpus = corpus_formulas(load_corpus_file(c.corpus));
  AxiomReport rep = check_axioms(m, corpus);
  emit(to_json(rep));
  return rep.all_hold() ? kOk : kViolation;
}

int run_model_ext(const ModelExtCmd& c) {
  Model m = load_model(c.model);
  Formula phi = parse(c.formula);
  std::string var = c.var;
  if (var.empty()) {
    std::set<std::string> frees = free_vars(phi);
    if (frees.size() != 1)
      throw semantic_error("formula must have exactly one free variable, or pass --var");
    var = *frees.begin();
  }
  std::optional<Mask> x = ext(m, normalize(phi), var);
  json j;
  j["formula"] = c.formula;
  j["var"] = var;
  j["exists"] = x.has_value();
  if (x) {
    j["set"] = *x;
    json elems = json::array();
    for (int b = 0; b < m.atoms(); ++b)
      if (*x & (1u << b)) elems.push_back(1u << b);
    j["elements"] = std::move(elems);
  }
  emit(j);
  return kOk;
}

int run_model_demo(const ModelDemoCmd& c) {
  Model m = load_model(c.model);
  if (c.which == "confusion") {
    ConfusionReport rep = confusion_demo(m, c.strict);
    emit(to_json(rep));
    if (!rep.applicable) {
      std::cerr << "X does not exist in this model\n";
      return kSemanticError;
    }
    return rep.ok() ? kOk : kViolation;
  }
  if (c.which == "russell") {
    RussellReport rep = russell_analysis(
        m, c.relation == "membership" ? RussellRelation::Membership : RussellRelation::Subset,
        c.strict);
    emit(to_json(rep));
    if (!rep.exists) return kOk;  // vacuous
    return rep.label_subset ? kOk : kViolation;
  }
  throw parse_error("unknown demo '" + c.which + "' (expected confusion or russell)", 0, 0);
}

int run_model_search(const ModelSearchCmd& c) {
  SearchGoal goal;
  if (c.goal == "russell-nonvacuous") {
    goal.kind = SearchGoal::Kind::RussellNonvacuous;
  } else if (c.goal == "scheme7-violation") {
    goal.kind = SearchGoal::Kind::Scheme7Violation;
    if (c.corpus.empty()) throw parse_error("goal scheme7-violation needs --corpus", 0, 0);
    goal.corpus = corpus_formulas(load_corpus_file(c.corpus));
  } else if (c.goal == "custom") {
    goal.kind = SearchGoal::Kind::Custom;
    if (c.formula.empty()) throw parse_error("goal custom needs --formula", 0, 0);
    goal.custom = parse(c.formula);
  } else {
    throw parse_error("unknown goal '" + c.goal + "'", 0, 0);
  }
  SearchOptions opt;
  opt.limit = c.limit;
  opt.sample = c.sample;
  opt.seed = effective_seed(c.seed);
  std::vector<Model> hits = search_labels(c.atoms, variant_from_name(c.variant), goal, opt);
  json models = json::array();
  for (const Model& m : hits) models.push_back(m.to_json());
  emit(json{{"count", hits.size()}, {"models", std::move(models)}});
  return kOk;
}

int run_corpus(const CorpusRunCmd& c) {
  std::vector<Formula> formulas;
  for (const std::string& path : c.files)
    for (Formula& f : corpus_formulas(load_corpus_file(path))) formulas.push_back(std::move(f));
  if (c.generate > 0) {
    GenConfig cfg;
    cfg.count = c.generate;
    cfg.seed = effective_seed(c.seed);
    cfg.max_atoms = c.max_atoms;
    cfg.max_vars = c.max_vars;
    for (Formula& f : generate_corpus(cfg)) formulas.push_back(std::move(f));
  }
  if (formulas.empty()) throw parse_error("no corpus given: pass files or --generate N", 0, 0);
  AcyclicStratReport rep = acyclic_implies_stratified_check(formulas, StratConfig{c.delta});
  emit(to_json(rep));
  return rep.clean() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for labeled mereological set theory"};
  app.require_subcommand(1);

  ClassifyCmd classify_cmd;
  CLI::App* classify_app = app.add_subcommand("classify", "cyclicity classification of a formula");
  classify_app->add_option("formula", classify_cmd.formula, "formula text")->required();
  classify_app->add_option("--format", classify_cmd.format)->check(CLI::IsMember({"json", "text"}));
  classify_app->add_option("--mode", classify_cmd.mode)->check(CLI::IsMember({"separate", "literal"}));

  GraphCmd graph_cmd;
  CLI::App* graph_app = app.add_subcommand("graph", "variable multigraph of a formula");
  graph_app->add_option("formula", graph_cmd.formula)->required();
  graph_app->add_option("--format", graph_cmd.format)->check(CLI::IsMember({"dot", "json"}));

  AstCmd ast_cmd;
  CLI::App* ast_app = app.add_subcommand("ast", "JSON syntax tree of a formula");
  ast_app->add_option("formula", ast_cmd.formula)->required();
  ast_app->add_flag("--raw", ast_cmd.raw, "keep defined predicates unexpanded");
  ast_app->add_flag("--normalize", ast_cmd.normalized, "expand, flatten and rename apart first");

  StratifyCmd stratify_cmd;
  CLI::App* stratify_app = app.add_subcommand("stratify", "type levels for a formula");
  stratify_app->add_option("formula", stratify_cmd.formula)->required();
  stratify_app->add_option("--delta-L", stratify_cmd.delta, "level offset per label application");
  stratify_app->add_option("--format", stratify_cmd.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* model_app = app.add_subcommand("model", "finite model operations");
  model_app->require_subcommand(1);

  ModelBuildCmd build_cmd;
  CLI::App* build_app = model_app->add_subcommand("build", "construct a canonical model");
  build_app->add_option("--atoms", build_cmd.atoms, "number of atoms")->required();
  build_app->add_option("--variant", build_cmd.variant)->check(CLI::IsMember({"no-empty", "with-empty"}));
  build_app->add_option("--label", build_cmd.label, "identity, swap, or a json file");
  build_app->add_option("--out", build_cmd.out, "write the model here instead of stdout");

  ModelCheckCmd check_cmd;
  CLI::App* check_app = model_app->add_subcommand("check", "verify the axioms in a model");
  check_app->add_option("model", check_cmd.model, "model json file")->required();
  check_app->add_option("--corpus", check_cmd.corpus, "formulas instantiating schemes 5 and 7");

  ModelExtCmd ext_cmd;
  CLI::App* ext_app = model_app->add_subcommand("ext", "object extension of a predicate");
  ext_app->add_option("model", ext_cmd.model)->required();
  ext_app->add_option("formula", ext_cmd.formula)->required();
  ext_app->add_option("--var", ext_cmd.var, "designated variable (default: the unique free one)");

  ModelDemoCmd demo_cmd;
  CLI::App* demo_app = model_app->add_subcommand("demo", "replay a paradox analysis");
  demo_app->add_option("which", demo_cmd.which, "confusion or russell")->required();
  demo_app->add_option("model", demo_cmd.model)->required();
  demo_app->add_option("--relation", demo_cmd.relation)->check(CLI::IsMember({"subset", "membership"}));
  demo_app->add_flag("--strict", demo_cmd.strict, "read the inclusion strictly");

  ModelSearchCmd search_cmd;
  CLI::App* search_app = model_app->add_subcommand("search", "search label injections for a goal");
  search_app->add_option("--atoms", search_cmd.atoms)->required();
  search_app->add_option("--variant", search_cmd.variant)->check(CLI::IsMember({"no-empty", "with-empty"}));
  search_app->add_option("--goal", search_cmd.goal, "russell-nonvacuous | scheme7-violation | custom")->required();
  search_app->add_option("--corpus", search_cmd.corpus);
  search_app->add_option("--formula", search_cmd.formula);
  search_app->add_option("--limit", search_cmd.limit);
  int sample_flag = -1;
  search_app->add_option("--sample", sample_flag, "draw this many random labelings instead of enumerating");
  search_app->add_option("--seed", search_cmd.seed);

  CorpusRunCmd corpus_cmd;
  CLI::App* corpus_app = app.add_subcommand("corpus", "corpus operations");
  corpus_app->require_subcommand(1);
  CLI::App* corpus_run = corpus_app->add_subcommand("run", "classify and stratify a corpus");
  corpus_run->add_option("files", corpus_cmd.files, "corpus files, one formula per line");
  corpus_run->add_option("--generate", corpus_cmd.generate, "append seeded random formulas");
  corpus_run->add_option("--seed", corpus_cmd.seed);
  corpus_run->add_option("--delta-L", corpus_cmd.delta);
  corpus_run->add_option("--max-atoms", corpus_cmd.max_atoms);
  corpus_run->add_option("--max-vars", corpus_cmd.max_vars);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kOk;
    }
    std::cerr << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*classify_app) return run_classify(classify_cmd);
    if (*graph_app) return run_graph(graph_cmd);
    if (*ast_app) return run_ast(ast_cmd);
    if (*stratify_app) return run_stratify(stratify_cmd);
    if (*build_app) return run_model_build(build_cmd);
    if (*check_app) return run_model_check(check_cmd);
    if (*ext_app) return run_model_ext(ext_cmd);
    if (*demo_app) return run_model_demo(demo_cmd);
    if (*search_app) {
      if (sample_flag >= 0) search_cmd.sample = sample_flag;
      return run_model_search(search_cmd);
    }
    if (*corpus_run) return run_corpus(corpus_cmd);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const semantic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemanticError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
