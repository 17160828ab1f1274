#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lmst/cyclicity.hpp"
#include "lmst/gen.hpp"
#include "oracles.hpp"

using namespace lmst;

namespace {
Formula norm(const std::string& text) { return normalize(parse(text)); }
}  // namespace

TEST_CASE("build_graph: edges are atom occurrences") {
  VarGraph g = build_graph(parse("x in y"));
  CHECK(g.nodes == std::vector<std::string>{"x", "y"});
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].a == "x");
  CHECK(g.edges[0].b == "y");
  CHECK(g.edges[0].atom_text == "x in y");

  // ~(L z sub z) expands to two parallel edges between w and z
  VarGraph h = build_graph(norm("~(L z sub z)"));
  CHECK(h.nodes == std::vector<std::string>{"w", "z"});
  REQUIRE(h.edges.size() == 2);
  CHECK(h.edges[0].a == h.edges[1].a);
  CHECK(h.edges[0].b == h.edges[1].b);
  CHECK(h.edges[0].occurrence != h.edges[1].occurrence);

  VarGraph s = build_graph(parse("x in x"));
  CHECK(s.nodes == std::vector<std::string>{"x"});
  REQUIRE(s.edges.size() == 1);
  CHECK(s.edges[0].a == s.edges[0].b);

  // binder-only variables are not nodes
  VarGraph q = build_graph(parse("all u. x in y"));
  CHECK(q.nodes == std::vector<std::string>{"x", "y"});

  CHECK_THROWS_AS(build_graph(parse("L L x = y")), semantic_error);
  CHECK_THROWS_AS(build_graph(parse("x sub y")), semantic_error);
}

TEST_CASE("is_cyclic: forest criterion") {
  CHECK_FALSE(is_cyclic(build_graph(parse("x in y"))));
  CHECK(is_cyclic(build_graph(norm("~(L z sub z)"))));
  CHECK(is_cyclic(build_graph(parse("x in y & y in z & z in x"))));
  CHECK(is_cyclic(build_graph(parse("x in x"))));
  CHECK_FALSE(is_cyclic(build_graph(parse("x in y & y in z"))));
  CHECK_FALSE(is_cyclic(VarGraph{}));  // empty graph is a forest
}

TEST_CASE("is_cyclic agrees with an independent DFS detector") {
  GenConfig cfg;
  cfg.count = 1000;
  for (const Formula& f : generate_corpus(cfg)) {
    Formula n = normalize(f);
    CHECK(is_cyclic(build_graph(n)) == oracle::formula_cyclic_dfs(n));
  }
}

TEST_CASE("enumerate_cyclic_occurrences: pre-order spans") {
  // both conjuncts plus the whole conjunction
  auto spans = enumerate_cyclic_occurrences(parse("(x in x) & (y in y)"));
  REQUIRE(spans.size() == 3);
  CHECK(spans[0].path == std::vector<int>{});
  CHECK(spans[1].path == std::vector<int>{0});
  CHECK(spans[2].path == std::vector<int>{1});

  // nested chain: negation, quantifier, implication
  auto nested = enumerate_cyclic_occurrences(norm("~(L z sub z)"));
  REQUIRE(nested.size() == 3);
  CHECK(nested[0].path == std::vector<int>{});
  CHECK(nested[1].path == std::vector<int>{0});
  CHECK(nested[2].path == std::vector<int>{0, 0});
  CHECK(nested[2].subformula.op == Conn::Imp);

  CHECK(enumerate_cyclic_occurrences(parse("x in y")).empty());
}

TEST_CASE("enumerate_cyclic_occurrences agrees with brute-force DFS enumeration") {
  GenConfig cfg;
  cfg.count = 300;
  cfg.seed = 11;
  for (const Formula& f : generate_corpus(cfg)) {
    Formula n = normalize(f);
    std::vector<std::vector<int>> expected;
    std::function<void(const Formula&, std::vector<int>&)> walk = [&](const Formula& node,
                                                                      std::vector<int>& path) {
      if (oracle::formula_cyclic_dfs(node)) expected.push_back(path);
      for (size_t i = 0; i < node.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        walk(node.kids[i], path);
        path.pop_back();
      }
    };
    std::vector<int> path;
    walk(n, path);
    auto spans = enumerate_cyclic_occurrences(n);
    REQUIRE(spans.size() == expected.size());
    for (size_t i = 0; i < spans.size(); ++i) CHECK(spans[i].path == expected[i]);
  }
}

TEST_CASE("is_multi_cyclic: separate vs literal reading") {
  Formula admitted = norm("~(L z sub z)");
  CHECK_FALSE(is_multi_cyclic(admitted, MultiCyclicMode::Separate));
  CHECK(is_multi_cyclic(admitted, MultiCyclicMode::Literal));

  Formula twin = parse("(x in x) & (y in y)");
  CHECK(is_multi_cyclic(twin, MultiCyclicMode::Separate));
  CHECK(is_multi_cyclic(twin, MultiCyclicMode::Literal));

  CHECK_FALSE(is_multi_cyclic(parse("x in y"), MultiCyclicMode::Separate));
  CHECK_FALSE(is_multi_cyclic(parse("x in y"), MultiCyclicMode::Literal));
}

TEST_CASE("separate implies literal on random formulas") {
  GenConfig cfg;
  cfg.count = 400;
  cfg.seed = 3;
  for (const Formula& f : generate_corpus(cfg)) {
    Formula n = normalize(f);
    if (is_multi_cyclic(n, MultiCyclicMode::Separate))
      CHECK(is_multi_cyclic(n, MultiCyclicMode::Literal));
  }
}

TEST_CASE("cyclic occurrences are upward closed (monotonicity)") {
  GenConfig cfg;
  cfg.count = 300;
  cfg.seed = 5;
  for (const Formula& f : generate_corpus(cfg)) {
    Formula n = normalize(f);
    auto spans = enumerate_cyclic_occurrences(n);
    std::set<std::vector<int>> have;
    for (const OccurrenceSpan& s : spans) have.insert(s.path);
    for (const OccurrenceSpan& s : spans) {
      std::vector<int> p = s.path;
      while (!p.empty()) {
        p.pop_back();
        CHECK(have.count(p) == 1);
      }
    }
  }
}

TEST_CASE("relaxed_admissible: equivalent disjoint cyclic parts are refused") {
  CHECK_FALSE(relaxed_admissible(parse("(x in x) & (y in y)")));
  CHECK(relaxed_admissible(parse("(x in x) & (ex u. ex v. (u in v & v in u))")));
  CHECK(relaxed_admissible(parse("x in y")));
  // same shape under bound renaming on both sides
  CHECK_FALSE(relaxed_admissible(norm("(ex u. u in u) & (ex v. v in v)")));
  // nested (non-disjoint) duplicates do not count
  CHECK(relaxed_admissible(norm("~(L z sub z)")));
}

TEST_CASE("classify: verdict record") {
  Classification a = classify(std::string("x in y"));
  CHECK(a.acyclic);
  CHECK_FALSE(a.cyclic);
  CHECK_FALSE(a.multi_cyclic_separate);
  CHECK(a.relaxed_admissible);
  CHECK_FALSE(a.parameter_free);

  Classification b = classify(std::string("ex z. ~(L z sub z)"));
  CHECK(b.cyclic);
  CHECK_FALSE(b.multi_cyclic_separate);
  CHECK(b.multi_cyclic_literal);
  CHECK(b.parameter_free);
  CHECK(b.relaxed_admissible);

  Classification c = classify(std::string("ex x. ex y. ((x in x) & (y in y))"));
  CHECK(c.cyclic);
  CHECK(c.multi_cyclic_separate);
  CHECK(c.parameter_free);
  CHECK_FALSE(c.relaxed_admissible);

  // classification booleans are consistent by construction
  GenConfig cfg;
  cfg.count = 200;
  cfg.seed = 13;
  for (const Formula& f : generate_corpus(cfg)) {
    Classification r = classify(f);
    CHECK(r.cyclic == !r.acyclic);
    if (r.multi_cyclic_separate) CHECK(r.cyclic);
    if (r.multi_cyclic_separate) CHECK(r.multi_cyclic_literal);
    if (!r.multi_cyclic_separate) CHECK(r.relaxed_admissible);
    if (r.acyclic) {
      CHECK(r.relaxed_admissible);
      CHECK_FALSE(r.multi_cyclic_separate);
    }
  }
}

TEST_CASE("classification is stable under renaming and conjunct order") {
  auto booleans = [](const Classification& c) {
    return std::tuple{c.acyclic, c.multi_cyclic_separate, c.multi_cyclic_literal,
                      c.relaxed_admissible, c.parameter_free};
  };
  GenConfig cfg;
  cfg.count = 200;
  cfg.seed = 17;
  for (const Formula& f : generate_corpus(cfg)) {
    CHECK(booleans(classify(f)) == booleans(classify(rename_apart(f))));
    if (f.op == Conn::And || f.op == Conn::Or) {
      Formula swapped = f;
      std::swap(swapped.kids[0], swapped.kids[1]);
      CHECK(booleans(classify(f)) == booleans(classify(swapped)));
    }
  }
}

TEST_CASE("export_dot") {
  std::string one = export_dot(build_graph(parse("x in y")));
  CHECK(one.find("\"x\" -- \"y\" [label=\"x in y\"];") != std::string::npos);
  CHECK(std::count(one.begin(), one.end(), '-') == 2);  // a single “--”

  std::string two = export_dot(build_graph(norm("~(L z sub z)")));
  size_t first = two.find("\"w\" -- \"z\"");
  REQUIRE(first != std::string::npos);
  CHECK(two.find("\"w\" -- \"z\"", first + 1) != std::string::npos);  // parallel edge kept

  VarGraph nodes_only;
  nodes_only.nodes = {"a", "b"};
  std::string dot = export_dot(nodes_only);
  CHECK(dot.find("\"a\";") != std::string::npos);
  CHECK(dot.find("--") == std::string::npos);

  std::string self = export_dot(build_graph(parse("x in x")));
  CHECK(self.find("\"x\" -- \"x\"") != std::string::npos);
}

TEST_CASE("classification json schema") {
  json j = to_json(classify(std::string("ex z. ~(L z sub z)")));
  CHECK(j["formula"] == "ex z. ~(L z sub z)");
  CHECK(j["cyclic"] == true);
  CHECK(j["acyclic"] == false);
  CHECK(j["multi_cyclic"]["separate"] == false);
  CHECK(j["multi_cyclic"]["literal"] == true);
  CHECK(j["parameter_free"] == true);
  CHECK(j["relaxed_admissible"] == true);
  CHECK(j["cyclic_occurrences"].is_array());
  // ex, not, all, imp: one nested chain
  CHECK(j["cyclic_occurrences"] == json::array({json::array(), {0}, {0, 0}, {0, 0, 0}}));
}
